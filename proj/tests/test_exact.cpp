#include "doctest.h"

#include "lattes/errors.hpp"
#include "lattes/exact.hpp"

#include <cmath>

using namespace lattes;
using namespace lattes::exact;

namespace {

double log_of(const BigInt& v)
{
    long e = 0;
    double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

// ||L^-n||^(-1/n) without leaving exact arithmetic until the logarithm.
double gelfand_term(const IntMat2& l, unsigned n)
{
    Rational norm = linf_norm(inv_pow(l, n));
    return std::exp(-(log_of(norm.num()) - log_of(norm.den())) / n);
}

} // namespace

TEST_CASE("rational parse and print")
{
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational::parse("-6/4") == Rational(BigInt(-3), BigInt(2)));
    CHECK(Rational::parse("7").is_integer());
    CHECK(Rational::parse("-7/2").floor() == -4);
    CHECK(Rational::parse("-7/2").ceil() == -3);
    CHECK_THROWS_AS(Rational::parse("1/0"), ValidationError);
    CHECK_THROWS_AS(Rational::parse("x"), ValidationError);
    CHECK_THROWS_AS(Rational::parse(""), ValidationError);
    CHECK(pow(Rational::parse("2/3"), 3) == Rational::parse("8/27"));
}

TEST_CASE("matrix powers and inverses")
{
    IntMat2 l{1, -2, 1, 1};
    CHECK(mat_pow(l, 0) == IntMat2::identity());
    CHECK(mat_pow(l, 2) == IntMat2{-1, -4, 2, -1});
    RatMat2 inv = inv_pow(l, 2);
    CHECK(inv == RatMat2{Rational::parse("-1/9"), Rational::parse("4/9"), Rational::parse("-2/9"),
                         Rational::parse("-1/9")});
    CHECK(inv * RatMat2::from(mat_pow(l, 2)) == RatMat2::identity());
    CHECK(linf_norm(inv) == Rational::parse("5/9"));
    CHECK_THROWS_AS(inv_pow(IntMat2{1, 2, 2, 4}, 1), ValidationError);
    CHECK(IntMat2{0, 2, 3, 0}.is_monomial());
    CHECK_FALSE(IntMat2{2, 1, 0, 2}.is_monomial());
}

TEST_CASE("hermite normal form residues")
{
    IntMat2 m = IntMat2::diag(4, 6);
    Hnf h = column_hnf(m);
    CHECK(h.h11 == 4);
    CHECK(h.h21 == 0);
    CHECK(h.h22 == 6);
    CHECK(hnf_residue(m, {-1, 7}) == IntVec2{3, 1});

    // Residues are invariant under the lattice and land in the box.
    IntMat2 g{3, 1, 1, 2};
    Hnf hg = column_hnf(g);
    CHECK(hg.h11 * hg.h22 == g.det());
    for (long x = -7; x <= 7; ++x)
        for (long y = -7; y <= 7; ++y) {
            IntVec2 r = hnf_residue(g, {x, y});
            CHECK(r.x >= 0);
            CHECK(r.x < hg.h11);
            CHECK(r.y >= 0);
            CHECK(r.y < hg.h22);
            CHECK(hnf_residue(g, {x + 3 * g.a - 2 * g.b, y + 3 * g.c - 2 * g.d}) == r);
        }
}

TEST_CASE("eigenvalue moduli")
{
    auto two = eig_min_modulus(IntMat2::scalar(2));
    CHECK(two.kind() == AlgebraicModulus::Kind::integer);
    CHECK(two.compare(Rational(2)) == 0);

    auto rot = eig_min_modulus(IntMat2{1, -2, 1, 1});
    CHECK(rot.kind() == AlgebraicModulus::Kind::sqrt_of_rational);
    CHECK(rot.radicand() == Rational(3));
    CHECK(rot.approx() == doctest::Approx(std::sqrt(3.0)));
    CHECK(rot.compare(Rational::parse("173/100")) > 0);
    CHECK(rot.compare(Rational::parse("174/100")) < 0);

    CHECK(eig_min_modulus(IntMat2{2, 1, 0, 2}).compare(Rational(2)) == 0);
    CHECK(eig_min_modulus(IntMat2::diag(2, 3)).compare(Rational(2)) == 0);

    auto irr = eig_min_modulus(IntMat2{3, 1, 1, 2});
    CHECK(irr.kind() == AlgebraicModulus::Kind::half_sum_with_sqrt);
    CHECK(irr.approx() == doctest::Approx((5.0 - std::sqrt(5.0)) / 2));
    CHECK_FALSE(irr.is_rational());
}

TEST_CASE("quadratic surds compare exactly")
{
    QuadSurd r3{0, 1, 3, 1};
    CHECK(compare(r3, Rational::parse("7/4")) < 0);
    CHECK(compare(r3, Rational::parse("17/10")) > 0);
    CHECK(compare(r3 * r3, Rational(3)) == 0);
    CHECK(compare(r3.pow(4), Rational(9)) == 0);
    CHECK(compare(r3 * r3.inverse(), Rational(1)) == 0);
    QuadSurd golden{1, 1, 5, 2};
    CHECK(compare(golden * golden, QuadSurd{3, 1, 5, 2}) == 0);
    CHECK(golden.to_double() == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    CHECK(QuadSurd::from(Rational::parse("-3/5")).sign() < 0);
}

TEST_CASE("rotation orders")
{
    CHECK(rotation_order(IntMat2::identity()) == 1);
    CHECK(rotation_order(IntMat2::scalar(-1)) == 2);
    CHECK(rotation_order(IntMat2{0, -1, 1, -1}) == 3);
    CHECK(rotation_order(IntMat2{0, -1, 1, 0}) == 4);
    CHECK(rotation_order(IntMat2{1, -1, 1, 0}) == 6);
    CHECK_THROWS_AS(rotation_order(IntMat2{1, 1, 0, 1}), ValidationError);
}

TEST_CASE("integer helpers")
{
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(7, -2) == -4);
    CHECK(isqrt(BigInt(99)) == 9);
    CHECK(is_perfect_square(BigInt(144)));
    CHECK_FALSE(is_perfect_square(BigInt(145)));
    CHECK(to_i64(BigInt(-5)) == -5);
    BigInt huge = BigInt(1) << 70;
    CHECK_THROWS_AS(to_i64(huge), BudgetExceeded);
}

TEST_CASE("gelfand: ||L^-n||^(-1/n) approaches the smallest eigenvalue modulus")
{
    struct Case {
        IntMat2 l;
        double target;
    };
    for (const Case& c : {Case{IntMat2::scalar(2), 2.0}, Case{{1, -2, 1, 1}, std::sqrt(3.0)},
                          Case{{2, 1, 0, 2}, 2.0}, Case{{3, 1, 1, 2}, (5 - std::sqrt(5.0)) / 2}}) {
        // The terms never overshoot the limit.
        for (unsigned n = 1; n <= 12; ++n)
            CHECK(gelfand_term(c.l, n) <= c.target + 1e-12);
        CHECK(std::fabs(gelfand_term(c.l, 4096) - c.target) <= 1e-2);
    }
    // Scalar and normal matrices reach it at once; the shear only slowly.
    CHECK(gelfand_term(IntMat2::scalar(2), 1) == doctest::Approx(2.0));
    CHECK(std::fabs(gelfand_term({2, 1, 0, 2}, 12) - 2.0) > 1e-2);
}
