#include "lattes/expansion.hpp"

#include "lattes/errors.hpp"
#include "lattes/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace lattes::expansion {

using exact::BigInt;
using pillow::Idx;
using pillow::Level;
using pillow::TileIndex;
using pillow::ZeroEdge;

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b)
{
    while (b != 0)
        a = std::exchange(b, a % b);
    return a;
}

struct IdxHash {
    std::size_t operator()(const Idx& v) const noexcept
    {
        auto h = static_cast<std::uint64_t>(v.i) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(v.j) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// Shortest corner-connected chain of unit squares from the lattice line
// s(w) = 0 to either of s(w) = +-delta, where s(w) = p1*w.j - p2*w.i.  The
// problem is invariant under integer steps along p, so cells are reduced to the strip
// 0 <= w.i < p1 (after normalizing p1 > 0, p1 >= |p2|; transposing and
// negating only flip the sign of s, which the symmetric target absorbs).
//
// Returns min(distance, cap).
std::uint64_t line_distance(i128 p1, i128 p2, i128 delta, std::uint64_t cap, const Budget& budget)
{
    // Any integer step along the line preserves s, so use the primitive one.
    i128 g = gcd128(abs128(p1), abs128(p2));
    p1 /= g;
    p2 /= g;
    delta /= g; // g divides delta = cross(p, q)
    if (abs128(p2) > abs128(p1))
        std::swap(p1, p2);
    if (p1 < 0) {
        p1 = -p1;
        p2 = -p2;
    }
    const i128 lo_off = std::min<i128>(0, -p2);
    const i128 hi_off = p1 + std::max<i128>(0, -p2);
    auto meets = [&](Idx w, i128 c) {
        i128 s0 = p1 * w.j - p2 * w.i;
        return s0 + lo_off <= c && c <= s0 + hi_off;
    };
    auto at_target = [&](Idx w) { return meets(w, delta) || meets(w, -delta); };
    auto reduce = [&](Idx w) {
        i128 k = floor_div(w.i, p1);
        return Idx{static_cast<std::int64_t>(w.i - k * p1), static_cast<std::int64_t>(w.j - k * p2)};
    };

    std::unordered_map<Idx, std::uint32_t, IdxHash> dist;
    std::deque<Idx> queue;
    auto visit = [&](Idx w, std::uint32_t d) {
        if (!dist.emplace(w, d).second)
            return false;
        if (dist.size() > budget.frontier)
            throw BudgetExceeded("budget exceeded");
        queue.push_back(w);
        return true;
    };

    for (i128 i = 0; i < p1; ++i) {
        i128 big = p2 * i + std::max<i128>(0, p2);
        i128 small = p2 * i + std::min<i128>(0, p2);
        i128 j_hi = floor_div(big, p1);
        i128 j_lo = ceil_div(small, p1) - 1;
        for (i128 j = j_lo; j <= j_hi; ++j) {
            Idx w{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)};
            if (visit(w, 1) && at_target(w))
                return 1;
        }
    }
    while (!queue.empty()) {
        Idx cur = queue.front();
        queue.pop_front();
        std::uint32_t next = dist[cur] + 1;
        if (next >= cap)
            return cap;
        for (std::int64_t di = -1; di <= 1; ++di)
            for (std::int64_t dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0)
                    continue;
                Idx nb = reduce({cur.i + di, cur.j + dj});
                if (visit(nb, next) && at_target(nb))
                    return next;
            }
    }
    throw std::logic_error("chain search exhausted a strip without reaching the target");
}

template <typename F>
void for_each_level(unsigned first, unsigned last, Exec exec, F body)
{
    const auto count = static_cast<std::int64_t>(last) - static_cast<std::int64_t>(first) + 1;
    if (count <= 0)
        return;
    if (exec == Exec::serial) {
        for (std::int64_t k = 0; k < count; ++k)
            body(static_cast<unsigned>(first + k));
        return;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = count - 1; k >= 0; --k) {
        try {
            body(static_cast<unsigned>(first + k));
        } catch (...) {
#pragma omp critical(lattes_level_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace

PlanarDn dn_planar_detail(const LattesTypeMap& map, unsigned n, const Budget& budget)
{
    exact::IntMat2 p = exact::mat_pow(map.matrix(), n);
    i128 delta = exact::to_i64(p.det());
    i128 a = exact::to_i64(p.a), b = exact::to_i64(p.b), c = exact::to_i64(p.c), d = exact::to_i64(p.d);
    constexpr auto unbounded = std::numeric_limits<std::uint64_t>::max();
    PlanarDn out;
    // y = 0 against y = +-1: direction L^n e1.
    out.horizontal = line_distance(a, c, delta, unbounded, budget);
    // x = 0 against x = +-1: direction L^n e2; no need to search past the first answer.
    out.vertical = line_distance(b, d, delta, out.horizontal, budget);
    return out;
}

std::uint64_t dn_planar(const LattesTypeMap& map, unsigned n, const Budget& budget)
{
    return dn_planar_detail(map, n, budget).value();
}

std::uint64_t dn_folded(const LattesTypeMap& map, unsigned n, pillow::EdgeConvention conv, const Budget& budget)
{
    Level level(map, n);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (auto [from, to] : {std::pair{ZeroEdge::bottom, ZeroEdge::top}, std::pair{ZeroEdge::left, ZeroEdge::right}}) {
        auto sources = pillow::zero_edge_tiles(level, from, conv, budget);
        auto targets = pillow::zero_edge_tiles(level, to, conv, budget);
        std::uint32_t d = kernels::chain_distance(level, sources, targets);
        if (d == kernels::unreached)
            throw std::logic_error("opposite 0-edges are not chain connected");
        best = std::min<std::uint64_t>(best, d);
    }
    return best;
}

std::pair<Rational, Rational> dn_bounds(const LattesTypeMap& map, unsigned n)
{
    Rational norm = exact::linf_norm(exact::inv_pow(map.matrix(), n));
    Rational lower = Rational(1) / norm;
    return {lower, lower + Rational(1)};
}

DnReport dn_report(const LattesTypeMap& map, unsigned n, Method method, const Budget& budget,
                   pillow::EdgeConvention conv)
{
    DnReport r;
    r.n = n;
    r.method = method;
    auto [lo, hi] = dn_bounds(map, n);
    r.lower_bound = lo;
    r.upper_bound = hi;
    switch (method) {
    case Method::planar:
        r.dn = dn_planar(map, n, budget);
        break;
    case Method::folded:
        r.dn = dn_folded(map, n, conv, budget);
        break;
    case Method::both: {
        std::uint64_t planar = dn_planar(map, n, budget);
        std::uint64_t folded = dn_folded(map, n, conv, budget);
        r.agreement = planar == folded;
        if (!r.agreement)
            throw std::logic_error("planar and folded D_n disagree");
        r.dn = planar;
        break;
    }
    }
    return r;
}

std::vector<std::uint64_t> dn_sweep(const LattesTypeMap& map, unsigned first, unsigned last, const Budget& budget,
                                    Exec exec)
{
    if (last < first)
        return {};
    std::vector<std::uint64_t> out(last - first + 1);
    for_each_level(first, last, exec, [&](unsigned n) { out[n - first] = dn_planar(map, n, budget); });
    return out;
}

Lambda0Report lambda0_estimate(const LattesTypeMap& map, unsigned n_max, double tolerance, const Budget& budget,
                               Exec exec)
{
    if (n_max < 1)
        throw ValidationError("n-max must be at least 1");
    Lambda0Report r;
    r.target = map.lambda0();
    r.tolerance = tolerance;
    std::vector<std::uint64_t> dns = dn_sweep(map, 1, n_max, budget, exec);
    for (unsigned n = 1; n <= n_max; ++n) {
        Lambda0Term t;
        t.n = n;
        t.dn = dns[n - 1];
        auto [lo, hi] = dn_bounds(map, n);
        double inv = 1.0 / static_cast<double>(n);
        t.root_f64 = std::pow(static_cast<double>(t.dn), inv);
        t.lower_root_f64 = std::pow(lo.to_double(), inv);
        t.upper_root_f64 = std::pow(hi.to_double(), inv);
        Rational dn_q(BigInt(std::to_string(t.dn)));
        t.squeezed = lo <= dn_q && dn_q <= hi;
        r.terms.push_back(t);
    }
    r.converged = std::abs(r.terms.back().root_f64 - r.target.approx()) <= tolerance;
    return r;
}

namespace {

// Unit-capacity max flow (Edmonds-Karp) on an explicit residual graph.
class UnitFlow {
public:
    explicit UnitFlow(std::size_t nodes) : head_(nodes, -1) {}

    void add_edge(std::size_t u, std::size_t v)
    {
        push(u, v, 1);
        push(v, u, 0);
    }

    std::uint64_t run(std::size_t s, std::size_t t)
    {
        std::uint64_t flow = 0;
        std::vector<std::int64_t> via(head_.size());
        for (;;) {
            std::fill(via.begin(), via.end(), -1);
            std::deque<std::size_t> queue{s};
            via[s] = -2;
            while (!queue.empty() && via[t] == -1) {
                std::size_t u = queue.front();
                queue.pop_front();
                for (std::int64_t e = head_[u]; e != -1; e = next_[e])
                    if (cap_[e] > 0 && via[to_[e]] == -1) {
                        via[to_[e]] = e;
                        queue.push_back(to_[e]);
                    }
            }
            if (via[t] == -1)
                return flow;
            for (std::size_t v = t; v != s; v = to_[via[v] ^ 1]) {
                --cap_[via[v]];
                ++cap_[via[v] ^ 1];
            }
            ++flow;
        }
    }

private:
    void push(std::size_t u, std::size_t v, int c)
    {
        to_.push_back(v);
        cap_.push_back(c);
        next_.push_back(head_[u]);
        head_[u] = static_cast<std::int64_t>(to_.size()) - 1;
    }

    std::vector<std::int64_t> head_;
    std::vector<std::int64_t> next_;
    std::vector<std::size_t> to_;
    std::vector<int> cap_;
};

bool square_meets_segment(std::int64_t i, std::int64_t j, Idx u, Idx v)
{
    // Axis-aligned segment: closed boxes overlap.
    return std::max(i, std::min(u.i, v.i)) <= std::min(i + 1, std::max(u.i, v.i)) &&
           std::max(j, std::min(u.j, v.j)) <= std::min(j + 1, std::max(u.j, v.j));
}

} // namespace

MengerReport menger_verify(const LattesTypeMap& map, unsigned n, const Budget& budget)
{
    if (!map.matrix().is_monomial())
        throw ValidationError("menger verification needs a monomial matrix");
    exact::IntMat2 p = exact::mat_pow(map.matrix(), n);
    BigInt deg = p.det();
    if (deg > BigInt(std::to_string(budget.cells)))
        throw BudgetExceeded("level too deep");

    Idx pe1{exact::to_i64(p.a), exact::to_i64(p.c)};
    Idx pe2{exact::to_i64(p.b), exact::to_i64(p.d)};
    Idx pe12{pe1.i + pe2.i, pe1.j + pe2.j};
    std::int64_t x0 = std::min({std::int64_t{0}, pe1.i, pe2.i, pe12.i});
    std::int64_t x1 = std::max({std::int64_t{0}, pe1.i, pe2.i, pe12.i});
    std::int64_t y0 = std::min({std::int64_t{0}, pe1.j, pe2.j, pe12.j});
    std::int64_t y1 = std::max({std::int64_t{0}, pe1.j, pe2.j, pe12.j});
    const std::int64_t w = x1 - x0, h = y1 - y0;
    const auto cells = static_cast<std::size_t>(w * h);
    auto id = [&](std::int64_t i, std::int64_t j) { return static_cast<std::size_t>((i - x0) * h + (j - y0)); };

    std::vector<std::uint8_t> in_a(cells, 0), in_b(cells, 0);
    for (std::int64_t i = x0; i < x1; ++i)
        for (std::int64_t j = y0; j < y1; ++j) {
            in_a[id(i, j)] = square_meets_segment(i, j, Idx{0, 0}, pe1);
            in_b[id(i, j)] = square_meets_segment(i, j, pe2, pe12);
        }
    auto neighbours = [&](std::int64_t i, std::int64_t j, auto&& f) {
        static constexpr std::int64_t d[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (auto& s : d) {
            std::int64_t a = i + s[0], b = j + s[1];
            if (a >= x0 && a < x1 && b >= y0 && b < y1)
                f(a, b);
        }
    };

    // N: fewest tiles on an A-B path in the dual graph.
    std::vector<std::uint64_t> dist(cells, 0);
    std::deque<Idx> queue;
    std::uint64_t path_min = 0;
    for (std::int64_t i = x0; i < x1 && path_min == 0; ++i)
        for (std::int64_t j = y0; j < y1; ++j)
            if (in_a[id(i, j)]) {
                dist[id(i, j)] = 1;
                if (in_b[id(i, j)]) {
                    path_min = 1;
                    break;
                }
                queue.push_back({i, j});
            }
    while (!queue.empty() && path_min == 0) {
        Idx cur = queue.front();
        queue.pop_front();
        std::uint64_t next = dist[id(cur.i, cur.j)] + 1;
        neighbours(cur.i, cur.j, [&](std::int64_t a, std::int64_t b) {
            if (path_min != 0 || dist[id(a, b)] != 0)
                return;
            dist[id(a, b)] = next;
            if (in_b[id(a, b)])
                path_min = next;
            queue.push_back({a, b});
        });
    }

    // k: vertex-disjoint A-B paths, by node splitting.
    UnitFlow flow(2 * cells + 2);
    const std::size_t source = 2 * cells, sink = 2 * cells + 1;
    for (std::int64_t i = x0; i < x1; ++i)
        for (std::int64_t j = y0; j < y1; ++j) {
            std::size_t v = id(i, j);
            flow.add_edge(2 * v, 2 * v + 1);
            if (in_a[v])
                flow.add_edge(source, 2 * v);
            if (in_b[v])
                flow.add_edge(2 * v + 1, sink);
            neighbours(i, j, [&](std::int64_t a, std::int64_t b) { flow.add_edge(2 * v + 1, 2 * id(a, b)); });
        }

    MengerReport r;
    r.n = n;
    r.dn = dn_planar(map, n, budget);
    r.path_min_tiles = path_min;
    r.max_disjoint_paths = flow.run(source, sink);
    r.tile_budget = static_cast<std::uint64_t>(exact::to_i64(deg));
    r.chain_ok = r.dn <= r.path_min_tiles && r.dn <= r.max_disjoint_paths;
    r.single_tile_budget_ok = r.max_disjoint_paths * r.path_min_tiles <= r.tile_budget;
    r.double_budget_ok = r.max_disjoint_paths * r.path_min_tiles <= 2 * r.tile_budget;
    return r;
}

} // namespace lattes::expansion
