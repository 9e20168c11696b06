#include "doctest.h"

#include "common.hpp"
#include "lattes/errors.hpp"
#include "lattes/expansion.hpp"

#include <cmath>
#include <vector>

using namespace lattes;
using namespace lattes::expansion;
using testing::map_of;
using testing::matrices;

namespace {

// Frozen from the planar search; every entry up to n = 3 is re-derived by the
// oracle below and every entry sits inside the norm sandwich.
struct Table {
    oracle::Mat m;
    std::vector<std::uint64_t> dn;
};

const std::vector<Table> frozen{
    {{2, 0, 0, 2}, {1, 2, 4, 8, 16, 32, 64, 128, 256}},
    {{2, 0, 0, 3}, {1, 2, 4, 8, 16, 32, 64}},
    {{1, -2, 1, 1}, {1, 1, 2, 4, 6, 11, 17, 32, 51}},
    {{2, 1, 0, 2}, {1, 2, 2, 4, 6, 10, 16, 29, 52, 94, 171}},
    {{3, 1, 1, 2}, {1, 2, 2, 3, 4, 5, 6}},
};

} // namespace

TEST_CASE("folded and planar routes against the oracle")
{
    for (const auto& [name, m] : matrices) {
        auto map = map_of(m);
        for (unsigned n = 0; n <= 3; ++n) {
            CAPTURE(name);
            CAPTURE(n);
            std::uint64_t want = oracle::dn(m, n);
            CHECK(dn_planar(map, n) == want);
            CHECK(dn_folded(map, n) == want);
        }
    }
}

TEST_CASE("frozen D_n tables")
{
    for (const auto& t : frozen) {
        auto map = map_of(t.m);
        auto sweep = dn_sweep(map, 0, static_cast<unsigned>(t.dn.size() - 1));
        CHECK(sweep == t.dn);
        for (unsigned n = 0; n < t.dn.size(); ++n) {
            auto [lo, hi] = dn_bounds(map, n);
            CHECK(lo <= Rational(static_cast<long>(t.dn[n])));
            CHECK(Rational(static_cast<long>(t.dn[n])) <= hi);
        }
    }
}

TEST_CASE("planar detail is the minimum of both directions")
{
    for (const auto& [name, m] : matrices) {
        auto map = map_of(m);
        for (unsigned n = 0; n <= 4; ++n) {
            auto d = dn_planar_detail(map, n);
            CHECK(d.value() == dn_planar(map, n));
            CHECK(d.value() <= d.horizontal);
            CHECK(d.value() <= d.vertical);
        }
    }
    // For a diagonal map the horizontal chain crosses the short side.
    auto d = dn_planar_detail(map_of(2, 0, 0, 3), 3);
    CHECK(d.horizontal == 27);
    CHECK(d.vertical == 8);
}

TEST_CASE("dn_report")
{
    auto map = map_of(1, -2, 1, 1);
    auto r = dn_report(map, 3, Method::both);
    CHECK(r.dn == 4);
    CHECK(r.agreement);
    CHECK(r.method == Method::both);
    CHECK(r.lower_bound == Rational(27) / Rational(7));
    CHECK(r.upper_bound == r.lower_bound + Rational(1));
    CHECK(dn_report(map, 3, Method::folded).dn == 4);
    // The open convention can only lengthen the folded chain.
    for (unsigned n = 0; n <= 3; ++n)
        CHECK(dn_folded(map, n, pillow::EdgeConvention::open) >= dn_folded(map, n));
}

TEST_CASE("norm sandwich on every test matrix")
{
    for (const auto& [name, m] : matrices) {
        auto map = map_of(m);
        for (unsigned n = 0; n <= 6; ++n) {
            CAPTURE(name);
            CAPTURE(n);
            auto r = dn_report(map, n);
            Rational d(static_cast<long>(r.dn));
            CHECK(r.lower_bound <= d);
            CHECK(d <= r.upper_bound);
        }
    }
}

TEST_CASE("lambda0 estimates")
{
    auto scalar = lambda0_estimate(map_of(2, 0, 0, 2), 8);
    CHECK(scalar.converged);
    CHECK(scalar.terms.size() == 8);
    CHECK(scalar.terms.back().root_f64 == doctest::Approx(2.0));
    for (const auto& t : scalar.terms)
        CHECK(t.squeezed);

    auto rot = lambda0_estimate(map_of(1, -2, 1, 1), 8);
    CHECK(rot.converged);
    CHECK(std::fabs(rot.terms.back().root_f64 - std::sqrt(3.0)) <= 0.15);
    for (const auto& t : rot.terms) {
        CHECK(t.squeezed);
        CHECK(t.lower_root_f64 <= t.root_f64 + 1e-12);
        CHECK(t.root_f64 <= t.upper_root_f64 + 1e-12);
    }

    // A tolerance too tight for n = 4 is reported, not hidden.
    CHECK_FALSE(lambda0_estimate(map_of(1, -2, 1, 1), 4, 0.01).converged);
    CHECK_THROWS_AS(lambda0_estimate(map_of(2, 0, 0, 2), 0), ValidationError);
    CHECK(lambda0_estimate(map_of(2, 1, 0, 2), 6, 0.15, {}, Exec::serial) ==
          lambda0_estimate(map_of(2, 1, 0, 2), 6, 0.15, {}, Exec::parallel));
}

TEST_CASE("menger verification")
{
    auto a = menger_verify(map_of(2, 0, 0, 2), 1);
    CHECK(a.dn == 2);
    CHECK(a.path_min_tiles == 2);
    CHECK(a.max_disjoint_paths == 2);
    CHECK(a.tile_budget == 4);
    CHECK(a.chain_ok);
    CHECK(a.single_tile_budget_ok);
    CHECK(a.double_budget_ok);

    auto b = menger_verify(map_of(2, 0, 0, 2), 2);
    CHECK(b.dn == 4);
    CHECK(b.path_min_tiles == 4);
    CHECK(b.max_disjoint_paths == 4);
    CHECK(b.single_tile_budget_ok);

    auto c = menger_verify(map_of(2, 0, 0, 3), 1);
    CHECK(c.dn == 2);
    CHECK(c.path_min_tiles == 3);
    CHECK(c.max_disjoint_paths == 2);
    CHECK(c.tile_budget == 6);
    CHECK(c.chain_ok);
    CHECK(c.single_tile_budget_ok);

    CHECK(menger_verify(map_of(2, 0, 0, 2), 0).max_disjoint_paths == 1);
    CHECK_THROWS_AS(menger_verify(map_of(1, -2, 1, 1), 1), ValidationError);
}

TEST_CASE("search budget")
{
    Budget tiny;
    tiny.frontier = 10;
    tiny.cells = 10;
    CHECK_THROWS_AS(dn_planar(map_of(2, 0, 0, 2), 8, tiny), BudgetExceeded);
    CHECK_THROWS_AS(dn_folded(map_of(2, 0, 0, 2), 4, pillow::EdgeConvention::closed, tiny), BudgetExceeded);
    CHECK_THROWS_AS(dn_sweep(map_of(2, 0, 0, 2), 6, 8, tiny), BudgetExceeded);
}
