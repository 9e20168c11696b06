#include "lattes/classify.hpp"

#include "lattes/errors.hpp"
#include "lattes/expansion.hpp"

#include <algorithm>
#include <cmath>

namespace lattes::classify {

using exact::BigInt;

namespace {

BigInt big(std::uint64_t v) { return BigInt(std::to_string(v)); }

BigInt power(const BigInt& b, unsigned e)
{
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
    return out;
}

} // namespace

ClassificationVerdict lattes_verdict(const pillow::LattesTypeMap& map, unsigned n_max, const Budget& budget, Exec exec)
{
    if (n_max < 3)
        throw ValidationError("n-max must be at least 3");
    const exact::IntMat2& l = map.matrix();
    ClassificationVerdict v;
    BigInt disc = l.discriminant();
    if (disc < 0)
        v.evidence = AlgebraicEvidence::negative_discriminant;
    else if (l.is_scalar())
        v.evidence = AlgebraicEvidence::scalar_matrix;
    v.verdict = v.evidence == AlgebraicEvidence::neither ? Verdict::lattes_type_non_lattes : Verdict::lattes;
    v.non_semisimple = disc == 0 && !l.is_scalar();

    const BigInt& det = map.degree();
    std::vector<std::uint64_t> dn = expansion::dn_sweep(map, 1, n_max, budget, exec);
    for (unsigned n = 1; n <= n_max; ++n) {
        double ratio = static_cast<double>(dn[n - 1]) / std::pow(det.get_d(), n / 2.0);
        v.empirical.push_back({n, dn[n - 1], ratio});
    }
    v.c_window_f64 = std::min_element(v.empirical.begin(), v.empirical.end(), [](auto& a, auto& b) {
                         return a.ratio_f64 < b.ratio_f64;
                     })->ratio_f64;

    // Exact comparisons on squares: r_n = D_n / det^(n/2).
    if (v.verdict == Verdict::lattes) {
        // r_n >= 1/2  <=>  4 D_n^2 >= det^n
        v.consistent = std::all_of(v.empirical.begin(), v.empirical.end(), [&](const RatioTerm& t) {
            return 4 * big(t.dn) * big(t.dn) >= power(det, t.n);
        });
    } else {
        bool monotone = true;
        for (std::size_t k = 0; k + 1 < v.empirical.size(); ++k) {
            // r_{n+1} <= r_n  <=>  D_{n+1}^2 <= det * D_n^2
            BigInt a = big(v.empirical[k].dn), b = big(v.empirical[k + 1].dn);
            if (b * b > det * a * a)
                monotone = false;
        }
        const RatioTerm& first = v.empirical.front();
        const RatioTerm& last = v.empirical.back();
        // r_last < r_first  <=>  D_last^2 det^first < D_first^2 det^last
        bool decayed = big(last.dn) * big(last.dn) * power(det, first.n) <
                       big(first.dn) * big(first.dn) * power(det, last.n);
        v.consistent = monotone && decayed;
    }
    return v;
}

const char* to_string(Verdict v)
{
    return v == Verdict::lattes ? "lattes" : "lattes_type_non_lattes";
}

const char* to_string(AlgebraicEvidence e)
{
    switch (e) {
    case AlgebraicEvidence::negative_discriminant:
        return "disc<0";
    case AlgebraicEvidence::scalar_matrix:
        return "scalar";
    case AlgebraicEvidence::neither:
        return "neither";
    }
    return "neither";
}

} // namespace lattes::classify
