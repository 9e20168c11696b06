#include "doctest.h"

#include "lattes/errors.hpp"
#include "lattes/orbifold.hpp"
#include "oracle.hpp"

#include <random>

using namespace lattes;
using namespace lattes::orbifold;
using exact::BigInt;

namespace {

Portrait make(const std::vector<std::size_t>& image, const std::vector<unsigned>& degree)
{
    Portrait p;
    for (std::size_t v = 0; v < image.size(); ++v)
        p.nodes.push_back({"p" + std::to_string(v), "p" + std::to_string(image[v]), degree[v]});
    return p;
}

std::vector<ExtNat> sig(std::initializer_list<unsigned long> v)
{
    std::vector<ExtNat> out;
    for (auto x : v)
        out.push_back(x == 0 ? ExtNat::infinity() : ExtNat(x));
    return out;
}

struct Tally {
    std::size_t compared = 0;
    std::size_t mismatches = 0;
};

// The library's nu against the exhaustive search over divisors of 12.
void compare_one(const std::vector<std::size_t>& image, const std::vector<unsigned>& degree, Tally& tally)
{
    Portrait p = make(image, degree);
    auto least = oracle::least_nu(image, degree, 12);
    OrbifoldData d;
    try {
        d = nu_minimal(p);
    } catch (const ValidationError&) {
        // chi > 0: only checkable when the oracle found the weights.
        if (least) {
            Rational chi = 2;
            for (unsigned w : *least)
                if (w != 1)
                    chi -= Rational(1) - Rational(BigInt(1), BigInt(w));
            if (!(chi > Rational(0)))
                ++tally.mismatches;
            ++tally.compared;
        }
        return;
    }
    if (!is_valid_nu(p, d.nu))
        ++tally.mismatches;
    bool fits = true;
    for (const auto& [id, w] : d.nu)
        fits = fits && !w.is_infinite() && 12 % w.value() == 0;
    if (fits != least.has_value()) {
        ++tally.mismatches;
        return;
    }
    if (least) {
        ++tally.compared;
        for (std::size_t v = 0; v < image.size(); ++v)
            if (d.nu.at("p" + std::to_string(v)) != ExtNat((*least)[v]))
                ++tally.mismatches;
    }
}

} // namespace

TEST_CASE("extended naturals")
{
    ExtNat inf = ExtNat::infinity();
    CHECK(divides(3, 12));
    CHECK_FALSE(divides(5, 12));
    CHECK(divides(7, inf));
    CHECK_FALSE(divides(inf, 7));
    CHECK(divides(inf, inf));
    CHECK(lcm(4, 6) == ExtNat(12));
    CHECK(lcm(4, inf) == inf);
    CHECK(gcd(4, 6) == ExtNat(2));
    CHECK(gcd(4, inf) == ExtNat(4));
    CHECK(ExtNat(3) * 2 == ExtNat(6));
    CHECK(inf * 2 == inf);
    CHECK(ExtNat(5) < inf);
    CHECK(ExtNat::parse("inf") == inf);
    CHECK(ExtNat::parse("∞") == inf);
    CHECK(ExtNat::parse("42") == ExtNat(42));
    CHECK(inf.str() == "inf");
    CHECK_THROWS_AS(ExtNat::parse("-1"), ValidationError);
    CHECK_THROWS_AS(ExtNat::parse("x"), ValidationError);
}

TEST_CASE("euler characteristic and classification")
{
    CHECK(euler_char(sig({2, 3, 7})) == Rational(BigInt(-1), BigInt(42)));
    CHECK(euler_char(sig({2, 2, 2, 2})) == Rational(0));
    CHECK(euler_char(sig({0, 0})) == Rational(0));
    CHECK(euler_char(sig({3, 3, 3})) == Rational(0));
    CHECK(euler_char(sig({2, 3, 6})) == Rational(0));
    CHECK(classify_orbifold(sig({2, 4, 4})).parabolic_type == std::optional<std::string>("(2,4,4)"));
    CHECK(classify_orbifold(sig({2, 3, 7})).cls == OrbifoldClass::hyperbolic);
    CHECK_THROWS_WITH_AS(classify_orbifold(sig({2, 3})), "not a Thurston-map orbifold", ValidationError);
    CHECK(signature_str(sig({2, 2, 0})) == "(2,2,inf)");
}

TEST_CASE("built-in portraits")
{
    auto pillow = nu_minimal(pillow_portrait());
    CHECK(pillow.signature == sig({2, 2, 2, 2}));
    CHECK(pillow.chi == Rational(0));
    CHECK(pillow.cls == OrbifoldClass::parabolic);
    CHECK(pillow.parabolic_type == std::optional<std::string>("(2,2,2,2)"));
    CHECK_FALSE(has_periodic_critical(pillow_portrait()));

    auto power = nu_minimal(power_map_portrait());
    CHECK(power.signature == sig({0, 0}));
    CHECK(power.chi == Rational(0));
    CHECK(power.cls == OrbifoldClass::parabolic);
    CHECK(has_periodic_critical(power_map_portrait()));

    auto chain = nu_minimal(chain_portrait());
    CHECK(chain.signature == sig({2, 4, 4}));
    CHECK(chain.chi == Rational(0));
    CHECK(chain.nu.at("X") == ExtNat(1));
    CHECK(chain.nu.at("A") == ExtNat(2));
    CHECK(chain.nu.at("B") == ExtNat(4));
    CHECK(chain.nu.at("C") == ExtNat(4));
}

TEST_CASE("malformed portraits")
{
    Portrait dup = make({0, 0}, {1, 1});
    dup.nodes[1].id = "p0";
    CHECK_THROWS_AS(nu_minimal(dup), ValidationError);
    Portrait dangling = make({0}, {1});
    dangling.nodes[0].image = "nowhere";
    CHECK_THROWS_AS(nu_minimal(dangling), ValidationError);
    CHECK_THROWS_AS(nu_minimal(make({0}, {0})), ValidationError);
    // A single critical fixed point: signature (inf), chi = 1.
    CHECK_THROWS_WITH_AS(nu_minimal(make({0}, {2})), "not a Thurston-map orbifold", ValidationError);
}

TEST_CASE("minimality: exhaustive up to four nodes")
{
    Tally tally;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::size_t> image(n, 0);
        for (;;) {
            std::vector<unsigned> degree(n, 1);
            for (;;) {
                compare_one(image, degree, tally);
                std::size_t k = 0;
                while (k < n && ++degree[k] == 4)
                    degree[k++] = 1;
                if (k == n)
                    break;
            }
            std::size_t k = 0;
            while (k < n && ++image[k] == n)
                image[k++] = 0;
            if (k == n)
                break;
        }
    }
    CHECK(tally.mismatches == 0);
    CHECK(tally.compared > 1000);
}

TEST_CASE("minimality: random five and six node portraits")
{
    std::mt19937 rng(20261016);
    Tally tally;
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 5 + trial % 2;
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::uniform_int_distribution<unsigned> deg(1, 3);
        std::vector<std::size_t> image(n);
        std::vector<unsigned> degree(n);
        for (std::size_t v = 0; v < n; ++v) {
            image[v] = pick(rng);
            // Mostly unramified, as in real portraits.
            degree[v] = deg(rng) == 3 ? deg(rng) : 1;
        }
        compare_one(image, degree, tally);
    }
    CHECK(tally.mismatches == 0);
    CHECK(tally.compared > 50);
}
