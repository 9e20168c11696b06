#include "doctest.h"

#include "common.hpp"
#include "lattes/classify.hpp"
#include "lattes/errors.hpp"

#include <algorithm>
#include <cmath>

using namespace lattes;
using namespace lattes::classify;
using testing::map_of;

TEST_CASE("verdict table")
{
    auto scalar = lattes_verdict(map_of(2, 0, 0, 2));
    CHECK(scalar.verdict == Verdict::lattes);
    CHECK(scalar.evidence == AlgebraicEvidence::scalar_matrix);
    CHECK(scalar.consistent);

    auto rot = lattes_verdict(map_of(1, -2, 1, 1));
    CHECK(rot.verdict == Verdict::lattes);
    CHECK(rot.evidence == AlgebraicEvidence::negative_discriminant);
    CHECK(rot.consistent);

    auto diag = lattes_verdict(map_of(2, 0, 0, 3));
    CHECK(diag.verdict == Verdict::lattes_type_non_lattes);
    CHECK(diag.evidence == AlgebraicEvidence::neither);
    CHECK_FALSE(diag.non_semisimple);
    CHECK(diag.consistent);

    auto shear = lattes_verdict(map_of(2, 1, 0, 2));
    CHECK(shear.verdict == Verdict::lattes_type_non_lattes);
    CHECK(shear.non_semisimple);
    CHECK(shear.consistent);

    auto real = lattes_verdict(map_of(3, 1, 1, 2), 6);
    CHECK(real.verdict == Verdict::lattes_type_non_lattes);
    CHECK(real.consistent);
}

TEST_CASE("empirical window")
{
    auto shear = lattes_verdict(map_of(2, 1, 0, 2), 8);
    REQUIRE(shear.empirical.size() == 8);
    const std::uint64_t dn[] = {2, 2, 4, 6, 10, 16, 29, 52};
    double smallest = 1e9;
    for (unsigned k = 0; k < 8; ++k) {
        CHECK(shear.empirical[k].n == k + 1);
        CHECK(shear.empirical[k].dn == dn[k]);
        CHECK(shear.empirical[k].ratio_f64 == doctest::Approx(dn[k] / std::pow(2.0, k + 1)));
        smallest = std::min(smallest, shear.empirical[k].ratio_f64);
    }
    CHECK(shear.c_window_f64 == doctest::Approx(smallest));
    // D_2 / 4 == D_3 / 8: the ratio is non-increasing but not strictly so.
    CHECK(shear.empirical[1].ratio_f64 == shear.empirical[2].ratio_f64);

    auto scalar = lattes_verdict(map_of(2, 0, 0, 2), 5);
    for (const auto& t : scalar.empirical)
        CHECK(t.ratio_f64 == doctest::Approx(1.0));
    CHECK(scalar.c_window_f64 == doctest::Approx(1.0));
}

TEST_CASE("arguments and names")
{
    CHECK_THROWS_AS(lattes_verdict(map_of(2, 0, 0, 2), 2), ValidationError);
    CHECK(std::string(to_string(Verdict::lattes)) == "lattes");
    CHECK(std::string(to_string(Verdict::lattes_type_non_lattes)) == "lattes_type_non_lattes");
    CHECK(std::string(to_string(AlgebraicEvidence::negative_discriminant)) == "disc<0");
    CHECK(lattes_verdict(map_of(2, 1, 0, 2), 5, {}, Exec::serial) ==
          lattes_verdict(map_of(2, 1, 0, 2), 5, {}, Exec::parallel));
}
