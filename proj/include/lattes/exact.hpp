#pragma once

/**
 * @file exact.hpp
 * @brief Exact scalar and 2x2 matrix arithmetic.
 *
 * Everything here is exact: integers are arbitrary precision, rationals are
 * kept in lowest terms with a positive denominator, and eigenvalue moduli are
 * carried as quadratic surds (a + b*sqrt(d)) / den alongside a binary64
 * approximation.  Comparisons between algebraic quantities never go through
 * floating point.
 */

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace lattes::exact {

using BigInt = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    Rational(const BigInt& v) : v_(v) {}
    Rational(const BigInt& num, const BigInt& den);

    // Accepts "n", "-n", "n/d".  Throws ValidationError on malformed input
    // or a zero denominator.
    static Rational parse(std::string_view text);

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const;
    BigInt floor() const;
    BigInt ceil() const;
    double to_double() const { return v_.get_d(); }
    // "n" for integers, "n/d" otherwise.
    std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r; r.v_ = -v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_{0};
};

Rational pow(const Rational& base, unsigned exponent);

struct IntVec2 {
    BigInt x = 0;
    BigInt y = 0;
    friend bool operator==(const IntVec2& a, const IntVec2& b) { return a.x == b.x && a.y == b.y; }
};

// Row-major [[a, b], [c, d]].
struct IntMat2 {
    BigInt a = 0, b = 0, c = 0, d = 0;

    static IntMat2 identity() { return {1, 0, 0, 1}; }
    static IntMat2 scalar(long s) { return {s, 0, 0, s}; }
    static IntMat2 diag(long p, long q) { return {p, 0, 0, q}; }

    BigInt det() const { return a * d - b * c; }
    BigInt trace() const { return a + d; }
    BigInt discriminant() const { return trace() * trace() - 4 * det(); }
    bool is_scalar() const { return b == 0 && c == 0 && a == d; }
    // Exactly one non-zero entry in each row and column.
    bool is_monomial() const;
    IntMat2 adjugate() const { return {d, -b, -c, a}; }
    IntVec2 apply(const IntVec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    std::string str() const;

    friend IntMat2 operator*(const IntMat2& l, const IntMat2& r);
    friend bool operator==(const IntMat2& l, const IntMat2& r)
    {
        return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
    }
};

struct RatMat2 {
    Rational a = 0, b = 0, c = 0, d = 0;

    static RatMat2 identity() { return {1, 0, 0, 1}; }
    static RatMat2 from(const IntMat2& m) { return {m.a, m.b, m.c, m.d}; }

    Rational det() const { return a * d - b * c; }

    friend RatMat2 operator*(const RatMat2& l, const RatMat2& r);
    friend bool operator==(const RatMat2& l, const RatMat2& r)
    {
        return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
    }
};

IntMat2 mat_pow(const IntMat2& m, unsigned n);

// L^-n = adj(L)^n / det(L)^n.  Throws ValidationError("non-invertible").
RatMat2 inv_pow(const IntMat2& m, unsigned n);

// Operator norm induced by the max-norm on R^2: the largest absolute row sum.
Rational linf_norm(const RatMat2& m);

/// Exact value (a + b*sqrt(d)) / den with den > 0 and d >= 0.
struct QuadSurd {
    BigInt a = 0, b = 0, d = 0, den = 1;

    static QuadSurd from(const Rational& r) { return {r.num(), 0, 0, r.den()}; }

    bool is_rational() const { return b == 0 || d == 0; }
    // Only meaningful when is_rational().
    Rational rational() const;
    int sign() const;
    double to_double() const;

    // Product of two surds over the same radicand (or one rational).
    friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y);
    QuadSurd pow(unsigned k) const;
    QuadSurd inverse() const;

    // Representation equality; use compare() for value equality.
    friend bool operator==(const QuadSurd&, const QuadSurd&) = default;
};

// Three-way exact comparison; radicands must agree unless one side is rational.
int compare(const QuadSurd& x, const QuadSurd& y);
int compare(const QuadSurd& x, const Rational& y);

/// Modulus of an eigenvalue of an integer 2x2 matrix.
class AlgebraicModulus {
public:
    enum class Kind { integer, sqrt_of_rational, half_sum_with_sqrt };

    static AlgebraicModulus integer(const BigInt& v);
    static AlgebraicModulus sqrt_of(const Rational& q);
    // (p + s*sqrt(d)) / 2 with s = +-1 and d not a perfect square.
    static AlgebraicModulus half_sum(const BigInt& p, int s, const BigInt& d);

    Kind kind() const { return kind_; }
    const QuadSurd& exact() const { return value_; }
    double approx() const { return approx_; }
    // The rational q with value == sqrt(q); only for sqrt_of_rational.
    const Rational& radicand() const { return radicand_; }
    bool is_rational() const { return value_.is_rational(); }
    std::string str() const;

    int compare(const Rational& r) const { return exact::compare(value_, r); }
    int compare(const AlgebraicModulus& o) const { return exact::compare(value_, o.value_); }

    friend bool operator==(const AlgebraicModulus& x, const AlgebraicModulus& y)
    {
        return x.kind_ == y.kind_ && exact::compare(x.value_, y.value_) == 0;
    }

private:
    Kind kind_ = Kind::integer;
    QuadSurd value_;
    Rational radicand_;
    double approx_ = 0.0;
};

// Minimum modulus over the two eigenvalues.  Requires det > 0.
AlgebraicModulus eig_min_modulus(const IntMat2& m);

// Finite order of a determinant-one integer matrix: one of 1, 2, 3, 4, 6.
// Throws ValidationError("infinite order") otherwise.
int rotation_order(const IntMat2& u);

// Column Hermite normal form [[h11, 0], [h21, h22]] of a non-singular matrix:
// same column lattice, h11 > 0, h22 > 0, 0 <= h21 < h22.
struct Hnf {
    BigInt h11, h21, h22;
};
Hnf column_hnf(const IntMat2& m);

// Unique representative of v + M*Z^2 in [0, h11) x [0, h22).
IntVec2 hnf_residue(const IntMat2& m, const IntVec2& v);
IntVec2 hnf_residue(const Hnf& h, const IntVec2& v);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt isqrt(const BigInt& v);
bool is_perfect_square(const BigInt& v);

// Narrowing with a range check; throws BudgetExceeded when it does not fit.
std::int64_t to_i64(const BigInt& v);

} // namespace lattes::exact
