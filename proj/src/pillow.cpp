#include "lattes/pillow.hpp"

#include "lattes/errors.hpp"
#include "lattes/kernels.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace lattes::pillow {

namespace {

using i128 = __int128;

std::int64_t floor_div64(i128 a, i128 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return static_cast<std::int64_t>(q);
}

i128 floor_mod(i128 a, i128 b)
{
    i128 r = a % b;
    if (r < 0)
        r += b;
    return r;
}

Rational mod2(const Rational& r)
{
    Rational half = r / Rational(2);
    return r - Rational(2) * Rational(half.floor());
}

std::array<Idx, 4> corners(Idx t)
{
    return {Idx{t.i, t.j}, Idx{t.i + 1, t.j}, Idx{t.i, t.j + 1}, Idx{t.i + 1, t.j + 1}};
}

} // namespace

bool is_expanding(const IntMat2& l)
{
    BigInt det = l.det();
    if (det <= 1)
        return false;
    return abs(l.trace()) < det + 1;
}

LattesTypeMap make_map(const IntMat2& l)
{
    if (l.det() <= 1)
        throw ValidationError("degree must exceed 1");
    if (!is_expanding(l))
        throw ValidationError("not expanding");
    LattesTypeMap m;
    m.matrix_ = l;
    m.degree_ = l.det();
    m.lambda0_ = exact::eig_min_modulus(l);
    return m;
}

PillowPoint::PillowPoint(const Rational& x, const Rational& y)
{
    Rational ax = mod2(x), ay = mod2(y);
    Rational bx = mod2(-x), by = mod2(-y);
    if (bx < ax || (bx == ax && by < ay)) {
        x_ = bx;
        y_ = by;
    } else {
        x_ = ax;
        y_ = ay;
    }
}

Level::Level(const LattesTypeMap& map, unsigned n)
    : map_(map), n_(n), power_(exact::mat_pow(map.matrix(), n))
{
    BigInt det_n = power_.det();
    deg_n_ = static_cast<std::uint64_t>(exact::to_i64(det_n));
    p1_ = exact::to_i64(power_.a);
    p2_ = exact::to_i64(power_.c);
    q1_ = exact::to_i64(power_.b);
    q2_ = exact::to_i64(power_.d);
    delta_ = exact::to_i64(det_n);

    IntMat2 scaled{2 * power_.a, 2 * power_.b, 2 * power_.c, 2 * power_.d};
    exact::Hnf h = exact::column_hnf(scaled);
    h11_ = exact::to_i64(h.h11);
    h21_ = exact::to_i64(h.h21);
    h22_ = exact::to_i64(h.h22);
    // The residue box holds 4 deg^n cells; keep ids comfortably inside 64 bits.
    if (deg_n_ > (std::uint64_t{1} << 60))
        throw BudgetExceeded("level too deep: index arithmetic exceeds 64 bits");
}

Idx Level::residue(Idx v) const
{
    std::int64_t k1 = floor_div64(v.i, h11_);
    i128 ri = static_cast<i128>(v.i) - static_cast<i128>(k1) * h11_;
    i128 rj = static_cast<i128>(v.j) - static_cast<i128>(k1) * h21_;
    rj = floor_mod(rj, h22_);
    return {static_cast<std::int64_t>(ri), static_cast<std::int64_t>(rj)};
}

TileIndex Level::canonical_tile(Idx v) const
{
    Idx a = residue(v);
    Idx b = residue(tile_involution(v));
    return {n_, std::min(a, b)};
}

VertexIndex Level::canonical_vertex(Idx v) const
{
    Idx a = residue(v);
    Idx b = residue(vertex_involution(v));
    return {n_, std::min(a, b)};
}

EdgeIndex Level::canonical_edge(Idx v, Side side) const
{
    Idx partner = (side == Side::bottom) ? Idx{-v.i - 1, -v.j} : Idx{-v.i, -v.j - 1};
    Idx a = residue(v);
    Idx b = residue(partner);
    return {n_, std::min(a, b), side};
}

void Level::check_level(const TileIndex& t) const
{
    if (t.level != n_)
        throw ValidationError("level mismatch");
}

bool Level::offset_in_lattice(Idx a, Idx b, Idx delta) const
{
    return residue({a.i - b.i - delta.i, a.j - b.j - delta.j}) == Idx{0, 0};
}

bool Level::chain_adjacent(const TileIndex& a, const TileIndex& b) const
{
    check_level(a);
    check_level(b);
    for (Idx image : {b.coords, tile_involution(b.coords)})
        for (std::int64_t di = -1; di <= 1; ++di)
            for (std::int64_t dj = -1; dj <= 1; ++dj)
                if (offset_in_lattice(a.coords, image, {di, dj}))
                    return true;
    return false;
}

bool Level::edge_adjacent(const TileIndex& a, const TileIndex& b) const
{
    check_level(a);
    check_level(b);
    static constexpr std::array<Idx, 4> sides{Idx{1, 0}, Idx{-1, 0}, Idx{0, 1}, Idx{0, -1}};
    for (Idx image : {b.coords, tile_involution(b.coords)})
        for (Idx d : sides)
            if (offset_in_lattice(a.coords, image, d))
                return true;
    return false;
}

bool Level::tile_meets_zero_edge(Idx tile, ZeroEdge edge, EdgeConvention conv) const
{
    // Lifts of the 0-edges are whole grid lines in the plane: bottom/top are
    // {y even}/{y odd}, left/right are {x even}/{x odd}.  In index space the
    // plane coordinates of w are y = cross(p, w) / delta, x = cross(w, q) / delta.
    bool horizontal = (edge == ZeroEdge::bottom || edge == ZeroEdge::top);
    int parity = (edge == ZeroEdge::bottom || edge == ZeroEdge::left) ? 0 : 1;
    auto along = [&](Idx w) -> i128 {
        i128 y = static_cast<i128>(p1_) * w.j - static_cast<i128>(p2_) * w.i;
        i128 x = static_cast<i128>(w.i) * q2_ - static_cast<i128>(w.j) * q1_;
        return horizontal ? y : x;
    };
    auto across = [&](Idx w) -> i128 {
        i128 y = static_cast<i128>(p1_) * w.j - static_cast<i128>(p2_) * w.i;
        i128 x = static_cast<i128>(w.i) * q2_ - static_cast<i128>(w.j) * q1_;
        return horizontal ? x : y;
    };

    auto cs = corners(tile);
    std::array<i128, 4> s{};
    for (std::size_t k = 0; k < 4; ++k)
        s[k] = along(cs[k]);
    i128 lo = *std::min_element(s.begin(), s.end());
    i128 hi = *std::max_element(s.begin(), s.end());
    std::int64_t k_lo = -floor_div64(-lo, delta_);
    std::int64_t k_hi = floor_div64(hi, delta_);
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        if (floor_mod(k, 2) != parity)
            continue;
        if (conv == EdgeConvention::closed)
            return true;
        i128 level_value = static_cast<i128>(k) * delta_;
        int on = 0, below = 0, above = 0;
        std::size_t on_index = 0;
        for (std::size_t c = 0; c < 4; ++c) {
            if (s[c] == level_value) {
                ++on;
                on_index = c;
            } else if (s[c] < level_value) {
                ++below;
            } else {
                ++above;
            }
        }
        if (on >= 2 || (below > 0 && above > 0))
            return true;
        // Single-corner contact: it counts unless the corner is a cone point.
        if (floor_mod(across(cs[on_index]), delta_) != 0)
            return true;
    }
    return false;
}

TileIndex canonical_tile(const LattesTypeMap& map, unsigned n, std::int64_t i, std::int64_t j)
{
    return Level(map, n).canonical_tile({i, j});
}

void check_enumeration_budget(const LattesTypeMap& map, unsigned n, const Budget& budget)
{
    BigInt count;
    mpz_pow_ui(count.get_mpz_t(), map.degree().get_mpz_t(), n);
    count *= 2;
    if (count > BigInt(std::to_string(budget.cells)))
        throw BudgetExceeded("level too deep");
}

std::vector<TileIndex> tiles(const LattesTypeMap& map, unsigned n, const Budget& budget)
{
    check_enumeration_budget(map, n, budget);
    Level level(map, n);
    std::vector<TileIndex> out;
    out.reserve(2 * level.degree_power());
    for (std::int64_t i = 0; i < level.box_width(); ++i)
        for (std::int64_t j = 0; j < level.box_height(); ++j) {
            TileIndex t = level.canonical_tile({i, j});
            if (t.coords == Idx{i, j})
                out.push_back(t);
        }
    return out;
}

CellCounts cell_counts(const LattesTypeMap& map, unsigned n, const Budget& budget, Exec exec)
{
    check_enumeration_budget(map, n, budget);
    Level level(map, n);
    CellCounts counted = (exec == Exec::parallel) ? kernels::count_cells_parallel(level)
                                                  : kernels::count_cells_serial(level);
    std::uint64_t d = level.degree_power();
    CellCounts expected{2 * d + 2, 4 * d, 2 * d};
    if (!(counted == expected))
        throw std::logic_error("enumerated cell counts disagree with (2d^n+2, 4d^n, 2d^n)");
    return counted;
}

std::vector<TileIndex> tiles_containing(const Level& level, const PillowPoint& p)
{
    const IntMat2& m = level.power();
    Rational wx = Rational(m.a) * p.x() + Rational(m.b) * p.y();
    Rational wy = Rational(m.c) * p.x() + Rational(m.d) * p.y();
    auto candidates = [](const Rational& w) {
        std::vector<std::int64_t> out;
        std::int64_t f = exact::to_i64(w.floor());
        if (w.is_integer())
            out.push_back(f - 1);
        out.push_back(f);
        return out;
    };
    std::vector<TileIndex> out;
    for (std::int64_t i : candidates(wx))
        for (std::int64_t j : candidates(wy))
            out.push_back(level.canonical_tile({i, j}));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<TileIndex> tiles_containing(const LattesTypeMap& map, unsigned n, const PillowPoint& p)
{
    return tiles_containing(Level(map, n), p);
}

std::vector<TileIndex> zero_edge_tiles(const Level& level, ZeroEdge edge, EdgeConvention conv, const Budget& budget)
{
    check_enumeration_budget(level.map(), level.n(), budget);
    std::vector<TileIndex> out;
    for (std::int64_t i = 0; i < level.box_width(); ++i)
        for (std::int64_t j = 0; j < level.box_height(); ++j) {
            TileIndex t = level.canonical_tile({i, j});
            if (t.coords == Idx{i, j} && level.tile_meets_zero_edge(t.coords, edge, conv))
                out.push_back(t);
        }
    return out;
}

std::vector<TileIndex> zero_edge_tiles(const LattesTypeMap& map, unsigned n, ZeroEdge edge, EdgeConvention conv,
                                       const Budget& budget)
{
    return zero_edge_tiles(Level(map, n), edge, conv, budget);
}

CellDecomposition CellDecomposition::build(const LattesTypeMap& map, unsigned n, const Budget& budget)
{
    check_enumeration_budget(map, n, budget);
    CellDecomposition cd{Level(map, n)};
    const Level& lv = cd.level_;
    for (std::int64_t i = 0; i < lv.box_width(); ++i)
        for (std::int64_t j = 0; j < lv.box_height(); ++j) {
            Idx r{i, j};
            if (lv.canonical_tile(r).coords == r)
                cd.tiles_.push_back({n, r});
            if (lv.canonical_vertex(r).coords == r)
                cd.vertices_.push_back({n, r});
            for (Side s : {Side::bottom, Side::left})
                if (lv.canonical_edge(r, s).coords == r)
                    cd.edges_.push_back({n, r, s});
        }
    std::sort(cd.edges_.begin(), cd.edges_.end());
    return cd;
}

std::vector<EdgeIndex> CellDecomposition::tile_edges(const TileIndex& t) const
{
    Idx c = t.coords;
    return {level_.canonical_edge(c, Side::bottom), level_.canonical_edge({c.i + 1, c.j}, Side::left),
            level_.canonical_edge({c.i, c.j + 1}, Side::bottom), level_.canonical_edge(c, Side::left)};
}

std::vector<VertexIndex> CellDecomposition::tile_vertices(const TileIndex& t) const
{
    Idx c = t.coords;
    return {level_.canonical_vertex(c), level_.canonical_vertex({c.i + 1, c.j}),
            level_.canonical_vertex({c.i + 1, c.j + 1}), level_.canonical_vertex({c.i, c.j + 1})};
}

std::uint64_t CellDecomposition::fixed_vertex_classes() const
{
    std::uint64_t count = 0;
    for (const VertexIndex& v : vertices_)
        if (level_.residue(vertex_involution(v.coords)) == v.coords)
            ++count;
    return count;
}

} // namespace lattes::pillow
