#include "lattes/metrics.hpp"

#include "lattes/errors.hpp"
#include "lattes/kernels.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lattes::metrics {

using exact::BigInt;
using pillow::Level;

namespace {

bool separated(const Level& level, const std::vector<TileIndex>& tx, const std::vector<TileIndex>& ty)
{
    for (const TileIndex& a : tx)
        for (const TileIndex& b : ty)
            if (!level.chain_adjacent(a, b))
                return true;
    return false;
}

bool touching(const Level& level, const std::vector<TileIndex>& tx, const std::vector<TileIndex>& ty)
{
    for (const TileIndex& a : tx)
        for (const TileIndex& b : ty)
            if (level.chain_adjacent(a, b))
                return true;
    return false;
}

QuadSurd from_count(std::uint64_t count) { return QuadSurd::from(Rational(BigInt(std::to_string(count)))); }

// count * lambda^-k
QuadSurd scaled_down(std::uint64_t count, const AlgebraicModulus& lambda, unsigned k)
{
    return from_count(count) * lambda.exact().pow(k).inverse();
}

Rational radical_inverse(std::uint64_t k, std::uint64_t base)
{
    Rational out(0);
    Rational scale(BigInt(1), BigInt(std::to_string(base)));
    Rational place = scale;
    while (k > 0) {
        out += Rational(static_cast<long>(k % base)) * place;
        place *= scale;
        k /= base;
    }
    return out;
}

} // namespace

ExtNat m_index(const LattesTypeMap& map, const PillowPoint& x, const PillowPoint& y, unsigned n_cap)
{
    if (x == y)
        return ExtNat::infinity();
    for (unsigned n = 0; n <= n_cap; ++n) {
        Level level(map, n);
        if (separated(level, pillow::tiles_containing(level, x), pillow::tiles_containing(level, y)))
            return ExtNat(n);
    }
    throw CapExceeded("cap exceeded");
}

PrimeIndex m_prime_index(const LattesTypeMap& map, const PillowPoint& x, const PillowPoint& y, unsigned n_cap)
{
    if (x == y)
        throw ValidationError("m' needs distinct points");
    // Touching need not be monotone in n, so scan downward from the cap.
    for (unsigned n = n_cap + 1; n-- > 0;) {
        Level level(map, n);
        if (touching(level, pillow::tiles_containing(level, x), pillow::tiles_containing(level, y)))
            return {ExtNat(n), n == n_cap};
    }
    throw std::logic_error("0-tiles always touch");
}

DnMetric dn_metric(const LattesTypeMap& map, const PillowPoint& x, const PillowPoint& y, unsigned n,
                   const Budget& budget)
{
    DnMetric r;
    r.n = n;
    if (!(x == y)) {
        pillow::check_enumeration_budget(map, n, budget);
        Level level(map, n);
        auto tx = pillow::tiles_containing(level, x);
        auto ty = pillow::tiles_containing(level, y);
        r.count = kernels::chain_distance(level, tx, ty);
        if (r.count == kernels::unreached)
            throw std::logic_error("the pillow is chain connected");
    }
    r.value = scaled_down(r.count, map.lambda0(), n);
    if (map.lambda0().is_rational())
        r.exact = r.value.rational();
    r.value_f64 = r.value.to_double();
    return r;
}

std::vector<PillowPoint> default_samples(std::size_t count)
{
    std::vector<PillowPoint> out;
    for (std::uint64_t k = 1; out.size() < count; ++k) {
        PillowPoint p(Rational(2) * radical_inverse(k, 2), radical_inverse(k, 3));
        if (!p.is_cone_point())
            out.push_back(p);
    }
    return out;
}

VisualReport visual_report(const LattesTypeMap& map, const std::vector<PillowPoint>& points,
                           const VisualOptions& options)
{
    if (points.empty())
        throw ValidationError("empty sample");
    VisualReport r;
    r.lambda = map.lambda0();
    r.window = options.window;

    // Distinct points, in first-seen order.
    std::vector<PillowPoint> unique;
    auto slot = [&](const PillowPoint& p) {
        auto it = std::find(unique.begin(), unique.end(), p);
        if (it != unique.end())
            return static_cast<std::size_t>(it - unique.begin());
        unique.push_back(p);
        return unique.size() - 1;
    };
    for (const PillowPoint& p : points)
        slot(p);

    struct Pending {
        std::size_t x, y;
        unsigned m;
    };
    std::vector<Pending> pending;
    std::set<unsigned> levels;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const PillowPoint& x = points[k];
        const PillowPoint& y = points[k + 1];
        if (x == y) {
            r.notes.push_back("pair " + std::to_string(k) + " excluded: identical points");
            continue;
        }
        PairSample s;
        s.x = x;
        s.y = y;
        s.m = m_index(map, x, y, options.n_cap);
        s.m_prime = m_prime_index(map, x, y, options.n_cap);
        unsigned m = static_cast<unsigned>(s.m.value());
        for (unsigned n = m + 1; n <= m + options.window; ++n)
            levels.insert(n);
        pending.push_back({slot(x), slot(y), m});
        r.pairs.push_back(std::move(s));
    }
    if (r.pairs.empty())
        r.notes.push_back("no pairs of distinct points");

    r.m_prime_ok = true;
    for (const PairSample& s : r.pairs) {
        auto m = static_cast<std::int64_t>(s.m.value());
        auto mp = static_cast<std::int64_t>(s.m_prime.value.value());
        if (mp > m + 1)
            r.m_prime_ok = false;
        r.max_m_gap = std::max(r.max_m_gap, m - mp);
    }

    // One breadth-first search per point per level.
    for (unsigned n : levels) {
        pillow::check_enumeration_budget(map, n, options.budget);
        Level level(map, n);
        std::vector<std::vector<TileIndex>> sets;
        for (const PillowPoint& p : unique)
            sets.push_back(pillow::tiles_containing(level, p));
        auto dist = kernels::chain_distance_matrix(level, sets, options.exec);

        const std::size_t u = unique.size();
        for (std::size_t a = 0; a < u; ++a)
            for (std::size_t b = 0; b < u; ++b) {
                if (a == b)
                    continue;
                if (dist[a][b] != dist[b][a])
                    ++r.symmetry_violations;
                for (std::size_t c = 0; c < u; ++c) {
                    if (c == a || c == b)
                        continue;
                    ++r.triangles_checked;
                    if (dist[a][c] > dist[a][b] + dist[b][c])
                        ++r.triangle_violations;
                }
            }

        for (std::size_t k = 0; k < pending.size(); ++k) {
            const Pending& p = pending[k];
            if (n <= p.m || n > p.m + options.window)
                continue;
            LevelDistance d;
            d.n = n;
            d.count = dist[p.x][p.y];
            d.normalized = scaled_down(d.count, r.lambda, n - p.m);
            d.normalized_f64 = d.normalized.to_double();
            r.pairs[k].distances.push_back(d);
        }
    }

    bool first = true;
    for (const PairSample& s : r.pairs)
        for (const LevelDistance& d : s.distances) {
            if (first || exact::compare(d.normalized, r.empirical_c) < 0)
                r.empirical_c = d.normalized;
            if (first || exact::compare(d.normalized, r.empirical_C) > 0)
                r.empirical_C = d.normalized;
            first = false;
        }
    r.empirical_c_f64 = r.empirical_c.to_double();
    r.empirical_C_f64 = r.empirical_C.to_double();
    r.spread_within_64 = first || exact::compare(r.empirical_C, r.empirical_c * from_count(64)) <= 0;

    // Tile diameters at the deepest level, for tiles around the first few
    // points two and three levels up.
    r.diameters_ok = true;
    if (levels.empty())
        return r;
    const unsigned deep = *levels.rbegin();
    Level deep_level(map, deep);
    std::vector<std::pair<unsigned, TileIndex>> sampled;
    for (unsigned n = deep >= 3 ? deep - 3 : 1; n + 2 <= deep; ++n) {
        if (n == 0)
            continue;
        Level level(map, n);
        for (std::size_t k = 0; k < std::min<std::size_t>(4, unique.size()); ++k) {
            TileIndex t = pillow::tiles_containing(level, unique[k]).front();
            if (std::find(sampled.begin(), sampled.end(), std::pair{n, t}) == sampled.end())
                sampled.emplace_back(n, t);
        }
    }
    for (const auto& [n, t] : sampled) {
        exact::RatMat2 inv = exact::inv_pow(map.matrix(), n);
        auto at = [&](const Rational& i, const Rational& j) {
            return PillowPoint(inv.a * i + inv.b * j, inv.c * i + inv.d * j);
        };
        Rational i(BigInt(std::to_string(t.coords.i))), j(BigInt(std::to_string(t.coords.j)));
        Rational half(BigInt(1), BigInt(2));
        std::vector<PillowPoint> probe{at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1),
                                       at(i + half, j + half)};
        std::vector<std::vector<TileIndex>> sets;
        for (const PillowPoint& p : probe)
            sets.push_back(pillow::tiles_containing(deep_level, p));
        auto dist = kernels::chain_distance_matrix(deep_level, sets, options.exec);
        TileDiameter d;
        d.n = n;
        d.tile = t;
        d.level = deep;
        for (const auto& row : dist)
            for (std::uint32_t v : row)
                d.count = std::max<std::uint64_t>(d.count, v);
        d.normalized = scaled_down(d.count, r.lambda, deep - n);
        d.normalized_f64 = d.normalized.to_double();
        r.diameters.push_back(d);
    }
    if (r.diameters.empty() || r.pairs.empty())
        return r;
    r.diameter_scale = r.diameters.front().normalized;
    r.diameter_scale_f64 = r.diameter_scale.to_double();
    const QuadSurd& s = r.diameter_scale;
    for (const TileDiameter& d : r.diameters) {
        bool above = exact::compare(d.normalized * r.empirical_C, s * r.empirical_c) >= 0;
        bool below = exact::compare(d.normalized * r.empirical_c, s * r.empirical_C) <= 0;
        if (!above || !below)
            r.diameters_ok = false;
    }
    return r;
}

} // namespace lattes::metrics
