#include "lattes/exact.hpp"

#include "lattes/errors.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace lattes::exact {

namespace {

bool parse_integer(std::string_view s, BigInt& out)
{
    if (s.empty())
        return false;
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size())
        return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    std::string digits(s.substr(s.front() == '+' ? 1 : 0));
    return out.set_str(digits, 10) == 0;
}

// sign(p + q*sqrt(d)) for d >= 0.
int surd_sign(const BigInt& p, const BigInt& q, const BigInt& d)
{
    int sp = sgn(p);
    int sq = (d == 0) ? 0 : sgn(q);
    if (sq == 0)
        return sp;
    if (sp == 0 || sp == sq)
        return sq;
    // Opposite signs: compare p^2 with q^2 d.
    int c = cmp(BigInt(p * p), BigInt(q * q * d));
    if (c == 0)
        return 0;
    return (c > 0) ? sp : sq;
}

BigInt common_radicand(const QuadSurd& x, const QuadSurd& y)
{
    if (x.is_rational())
        return y.is_rational() ? BigInt(0) : y.d;
    if (y.is_rational() || x.d == y.d)
        return x.d;
    throw ValidationError("quadratic surds over different radicands");
}

} // namespace

Rational::Rational(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw ValidationError("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    auto slash = text.find('/');
    BigInt num, den = 1;
    if (!parse_integer(text.substr(0, slash), num))
        throw ValidationError("malformed rational '" + std::string(text) + "'");
    if (slash != std::string_view::npos) {
        auto rest = text.substr(slash + 1);
        if (rest.empty() || rest.front() == '-' || rest.front() == '+' || !parse_integer(rest, den))
            throw ValidationError("malformed rational '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

Rational Rational::abs() const
{
    Rational r;
    r.v_ = ::abs(v_);
    return r;
}

BigInt Rational::floor() const
{
    return floor_div(v_.get_num(), v_.get_den());
}

BigInt Rational::ceil() const
{
    return -floor_div(-v_.get_num(), v_.get_den());
}

std::string Rational::str() const
{
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.v_ == 0)
        throw ValidationError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational pow(const Rational& base, unsigned exponent)
{
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), exponent);
    return Rational(num, den);
}

bool IntMat2::is_monomial() const
{
    bool diagonal = a != 0 && d != 0 && b == 0 && c == 0;
    bool anti = a == 0 && d == 0 && b != 0 && c != 0;
    return diagonal || anti;
}

std::string IntMat2::str() const
{
    return a.get_str() + "," + b.get_str() + "," + c.get_str() + "," + d.get_str();
}

IntMat2 operator*(const IntMat2& l, const IntMat2& r)
{
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

RatMat2 operator*(const RatMat2& l, const RatMat2& r)
{
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

IntMat2 mat_pow(const IntMat2& m, unsigned n)
{
    IntMat2 result = IntMat2::identity();
    IntMat2 base = m;
    while (n > 0) {
        if (n & 1u)
            result = result * base;
        n >>= 1;
        if (n > 0)
            base = base * base;
    }
    return result;
}

RatMat2 inv_pow(const IntMat2& m, unsigned n)
{
    BigInt det = m.det();
    if (det == 0)
        throw ValidationError("non-invertible");
    IntMat2 adj_n = mat_pow(m.adjugate(), n);
    BigInt det_n;
    mpz_pow_ui(det_n.get_mpz_t(), det.get_mpz_t(), n);
    return {Rational(adj_n.a, det_n), Rational(adj_n.b, det_n),
            Rational(adj_n.c, det_n), Rational(adj_n.d, det_n)};
}

Rational linf_norm(const RatMat2& m)
{
    Rational top = m.a.abs() + m.b.abs();
    Rational bottom = m.c.abs() + m.d.abs();
    return top < bottom ? bottom : top;
}

Rational QuadSurd::rational() const
{
    return Rational(a, den);
}

int QuadSurd::sign() const
{
    return surd_sign(a, b, d);
}

double QuadSurd::to_double() const
{
    if (is_rational())
        return Rational(a, den).to_double();
    double root = std::sqrt(d.get_d());
    if (sgn(a) == 0 || sgn(a) == sgn(b))
        return (a.get_d() + b.get_d() * root) / den.get_d();
    // Cancellation-free form: (a^2 - b^2 d) / (den * (a - b sqrt(d))).
    BigInt numer = a * a - b * b * d;
    return numer.get_d() / (den.get_d() * (a.get_d() - b.get_d() * root));
}

QuadSurd operator*(const QuadSurd& x, const QuadSurd& y)
{
    BigInt d = common_radicand(x, y);
    QuadSurd xr = x, yr = y;
    if (xr.is_rational()) { xr.b = 0; xr.d = d; }
    if (yr.is_rational()) { yr.b = 0; yr.d = d; }
    QuadSurd r{xr.a * yr.a + xr.b * yr.b * d, xr.a * yr.b + xr.b * yr.a, d, xr.den * yr.den};
    BigInt g = gcd(gcd(r.a, r.b), r.den);
    if (g > 1) {
        r.a /= g;
        r.b /= g;
        r.den /= g;
    }
    if (r.b == 0)
        r.d = 0;
    return r;
}

QuadSurd QuadSurd::pow(unsigned k) const
{
    QuadSurd result{1, 0, 0, 1};
    QuadSurd base = *this;
    while (k > 0) {
        if (k & 1u)
            result = result * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return result;
}

QuadSurd QuadSurd::inverse() const
{
    BigInt norm = a * a - b * b * d;
    if (norm == 0)
        throw ValidationError("division by zero");
    QuadSurd r{den * a, -den * b, d, norm};
    if (r.den < 0) {
        r.a = -r.a;
        r.b = -r.b;
        r.den = -r.den;
    }
    BigInt g = gcd(gcd(r.a, r.b), r.den);
    if (g > 1) {
        r.a /= g;
        r.b /= g;
        r.den /= g;
    }
    if (r.b == 0)
        r.d = 0;
    return r;
}

int compare(const QuadSurd& x, const QuadSurd& y)
{
    BigInt d = common_radicand(x, y);
    BigInt xb = x.is_rational() ? BigInt(0) : x.b;
    BigInt yb = y.is_rational() ? BigInt(0) : y.b;
    BigInt p = x.a * y.den - y.a * x.den;
    BigInt q = xb * y.den - yb * x.den;
    return surd_sign(p, q, d);
}

int compare(const QuadSurd& x, const Rational& y)
{
    return compare(x, QuadSurd::from(y));
}

AlgebraicModulus AlgebraicModulus::integer(const BigInt& v)
{
    AlgebraicModulus m;
    m.kind_ = Kind::integer;
    m.value_ = {v, 0, 0, 1};
    m.radicand_ = Rational(v * v);
    m.approx_ = v.get_d();
    return m;
}

AlgebraicModulus AlgebraicModulus::sqrt_of(const Rational& q)
{
    if (q.sign() < 0)
        throw ValidationError("square root of a negative rational");
    AlgebraicModulus m;
    m.kind_ = Kind::sqrt_of_rational;
    BigInt prod = q.num() * q.den();
    if (is_perfect_square(prod))
        m.value_ = {isqrt(prod), 0, 0, q.den()};
    else
        m.value_ = {0, 1, prod, q.den()};
    m.radicand_ = q;
    m.approx_ = std::sqrt(q.to_double());
    return m;
}

AlgebraicModulus AlgebraicModulus::half_sum(const BigInt& p, int s, const BigInt& d)
{
    AlgebraicModulus m;
    m.kind_ = Kind::half_sum_with_sqrt;
    m.value_ = {p, s, d, 2};
    m.approx_ = m.value_.to_double();
    return m;
}

std::string AlgebraicModulus::str() const
{
    switch (kind_) {
    case Kind::integer:
        return value_.a.get_str();
    case Kind::sqrt_of_rational:
        return "sqrt(" + radicand_.str() + ")";
    case Kind::half_sum_with_sqrt: {
        std::ostringstream os;
        os << "(" << value_.a.get_str() << (value_.b < 0 ? "-" : "+") << "sqrt(" << value_.d.get_str() << "))/2";
        return os.str();
    }
    }
    return {};
}

AlgebraicModulus eig_min_modulus(const IntMat2& m)
{
    BigInt det = m.det();
    if (det <= 0)
        throw ValidationError("eigenvalue modulus requires a positive determinant");
    BigInt tr = m.trace();
    BigInt disc = tr * tr - 4 * det;
    if (disc < 0) {
        // Complex pair: |lambda|^2 = det.
        if (is_perfect_square(det))
            return AlgebraicModulus::integer(isqrt(det));
        return AlgebraicModulus::sqrt_of(Rational(det));
    }
    // Real roots share the sign of tr because det > 0.
    BigInt abs_tr = abs(tr);
    if (is_perfect_square(disc))
        return AlgebraicModulus::integer(BigInt((abs_tr - isqrt(disc)) / 2));
    return AlgebraicModulus::half_sum(abs_tr, -1, disc);
}

int rotation_order(const IntMat2& u)
{
    if (u.det() != 1)
        throw ValidationError("rotation order requires determinant 1");
    BigInt tr = u.trace();
    int order = 0;
    if (tr == 2) order = 1;
    else if (tr == -2) order = 2;
    else if (tr == -1) order = 3;
    else if (tr == 0) order = 4;
    else if (tr == 1) order = 6;
    if (order == 0 || !(mat_pow(u, static_cast<unsigned>(order)) == IntMat2::identity()))
        throw ValidationError("infinite order");
    return order;
}

Hnf column_hnf(const IntMat2& m)
{
    BigInt det = m.det();
    if (det == 0)
        throw ValidationError("singular matrix");
    BigInt g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), m.a.get_mpz_t(), m.b.get_mpz_t());
    // Column operations: first row becomes (g, 0).
    BigInt h21 = x * m.c + y * m.d;
    BigInt h22 = abs(det) / g;
    h21 -= floor_div(h21, h22) * h22;
    return {g, h21, h22};
}

IntVec2 hnf_residue(const Hnf& h, const IntVec2& v)
{
    BigInt k1 = floor_div(v.x, h.h11);
    BigInt rx = v.x - k1 * h.h11;
    BigInt ry = v.y - k1 * h.h21;
    BigInt k2 = floor_div(ry, h.h22);
    ry -= k2 * h.h22;
    return {rx, ry};
}

IntVec2 hnf_residue(const IntMat2& m, const IntVec2& v)
{
    return hnf_residue(column_hnf(m), v);
}

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt isqrt(const BigInt& v)
{
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

bool is_perfect_square(const BigInt& v)
{
    return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

std::int64_t to_i64(const BigInt& v)
{
    if (!mpz_fits_slong_p(v.get_mpz_t()))
        throw BudgetExceeded("level too deep: index arithmetic exceeds 64 bits");
    return static_cast<std::int64_t>(v.get_si());
}

} // namespace lattes::exact
