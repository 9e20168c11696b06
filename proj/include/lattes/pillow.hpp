#pragma once

/**
 * @file pillow.hpp
 * @brief The (2,2,2,2) pillow S^2 = R^2 / Gamma and its level-n cell
 *        decompositions under a Lattes-type map.
 *
 * Gamma is generated by the translations by 2Z^2 and x -> -x.  With the
 * invariant curve C taken as the image of the integer grid, the level-n
 * tiles are the images of the parallelograms L^-n([i,i+1] x [j,j+1]).  All
 * cells are handled in "index space" (the coordinates w = L^n x), where the
 * level-n tiles are unit squares indexed by their lower-left corner and the
 * symmetry group acts by translations in 2 L^n Z^2 and the involutions
 *
 *   tiles:    (i, j) -> (-i-1, -j-1)
 *   vertices: (i, j) -> (-i, -j)
 *   edges:    bottom(i, j) -> bottom(-i-1, -j),  left(i, j) -> left(-i, -j-1)
 *
 * Canonical representatives are the HNF residue of an index, minimized
 * lexicographically over its involution orbit.
 */

#include "lattes/budget.hpp"
#include "lattes/exact.hpp"
#include "lattes/exec.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace lattes::pillow {

using exact::AlgebraicModulus;
using exact::BigInt;
using exact::IntMat2;
using exact::Rational;

class LattesTypeMap {
public:
    // The lattice is fixed to 2Z^2 and the folding group to <-id>.
    static constexpr int lattice_scale = 2;
    static constexpr int rotation_order = 2;

    const IntMat2& matrix() const { return matrix_; }
    const BigInt& degree() const { return degree_; }
    const AlgebraicModulus& lambda0() const { return lambda0_; }

    friend LattesTypeMap make_map(const IntMat2& l);

private:
    LattesTypeMap() = default;

    IntMat2 matrix_;
    BigInt degree_;
    AlgebraicModulus lambda0_;
};

// Validates det(L) > 1 and that both eigenvalues have modulus > 1.
// Throws ValidationError("degree must exceed 1") / ("not expanding").
LattesTypeMap make_map(const IntMat2& l);

// Exact test that both roots of z^2 - tr z + det lie outside the closed unit
// disk (given det > 1): |tr| < 1 + det.
bool is_expanding(const IntMat2& l);

struct Idx {
    std::int64_t i = 0;
    std::int64_t j = 0;
    auto operator<=>(const Idx&) const = default;
};

struct TileIndex {
    unsigned level = 0;
    Idx coords;
    auto operator<=>(const TileIndex&) const = default;
};

enum class Side : std::uint8_t { bottom, left };

struct EdgeIndex {
    unsigned level = 0;
    Idx coords;
    Side side = Side::bottom;
    auto operator<=>(const EdgeIndex&) const = default;
};

struct VertexIndex {
    unsigned level = 0;
    Idx coords;
    auto operator<=>(const VertexIndex&) const = default;
};

// A point of the pillow, stored as its canonical lift in [0,2) x [0,2).
class PillowPoint {
public:
    PillowPoint() = default;
    PillowPoint(const Rational& x, const Rational& y);

    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }
    bool is_cone_point() const { return x_.is_integer() && y_.is_integer(); }

    friend bool operator==(const PillowPoint& a, const PillowPoint& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
    friend bool operator<(const PillowPoint& a, const PillowPoint& b)
    {
        return a.x_ < b.x_ || (a.x_ == b.x_ && a.y_ < b.y_);
    }

private:
    Rational x_;
    Rational y_;
};

// The four 0-edges are the images of the sides of [0,1]^2.
enum class ZeroEdge { bottom, top, left, right };

// Whether a tile touching a 0-edge only at one of its (cone point) endpoints
// counts as meeting it.
enum class EdgeConvention { closed, open };

/// Index-space symmetry group of one level.
class Level {
public:
    Level(const LattesTypeMap& map, unsigned n);

    const LattesTypeMap& map() const { return map_; }
    unsigned n() const { return n_; }
    const IntMat2& power() const { return power_; }
    std::uint64_t degree_power() const { return deg_n_; }

    // Residues live in the box [0, width) x [0, height).
    std::int64_t box_width() const { return h11_; }
    std::int64_t box_height() const { return h22_; }
    std::uint64_t box_cells() const { return static_cast<std::uint64_t>(h11_) * static_cast<std::uint64_t>(h22_); }
    std::uint64_t cell_id(Idx residue) const
    {
        return static_cast<std::uint64_t>(residue.i) * static_cast<std::uint64_t>(h22_) + static_cast<std::uint64_t>(residue.j);
    }
    Idx cell_at(std::uint64_t id) const
    {
        return {static_cast<std::int64_t>(id / static_cast<std::uint64_t>(h22_)),
                static_cast<std::int64_t>(id % static_cast<std::uint64_t>(h22_))};
    }

    Idx residue(Idx v) const;

    TileIndex canonical_tile(Idx v) const;
    VertexIndex canonical_vertex(Idx v) const;
    EdgeIndex canonical_edge(Idx v, Side side) const;

    // Closed tiles intersect on the pillow.  Throws on level mismatch.
    bool chain_adjacent(const TileIndex& a, const TileIndex& b) const;
    // Tiles share a full side.  Throws on level mismatch.
    bool edge_adjacent(const TileIndex& a, const TileIndex& b) const;

    bool tile_meets_zero_edge(Idx tile, ZeroEdge edge, EdgeConvention conv = EdgeConvention::closed) const;

private:
    void check_level(const TileIndex& t) const;
    bool offset_in_lattice(Idx a, Idx b, Idx delta) const;

    LattesTypeMap map_;
    unsigned n_;
    IntMat2 power_;
    std::uint64_t deg_n_;
    // L^n in 64 bits: p = L^n e1, q = L^n e2, delta = det L^n.
    std::int64_t p1_, p2_, q1_, q2_, delta_;
    std::int64_t h11_, h21_, h22_;
};

inline Idx tile_involution(Idx v) { return {-v.i - 1, -v.j - 1}; }
inline Idx vertex_involution(Idx v) { return {-v.i, -v.j}; }

TileIndex canonical_tile(const LattesTypeMap& map, unsigned n, std::int64_t i, std::int64_t j);

// All 2*deg^n tiles in canonical order.  Throws BudgetExceeded("level too deep").
std::vector<TileIndex> tiles(const LattesTypeMap& map, unsigned n, const Budget& budget = {});

struct CellCounts {
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t tiles = 0;
    std::int64_t euler() const
    {
        return static_cast<std::int64_t>(vertices) - static_cast<std::int64_t>(edges) + static_cast<std::int64_t>(tiles);
    }
    friend bool operator==(const CellCounts&, const CellCounts&) = default;
};

// (V, E, F) by enumeration of the index-space classes, checked against
// (2 deg^n + 2, 4 deg^n, 2 deg^n).
CellCounts cell_counts(const LattesTypeMap& map, unsigned n, const Budget& budget = {}, Exec exec = Exec::parallel);

// Throws BudgetExceeded when 2*deg^n exceeds budget.cells.
void check_enumeration_budget(const LattesTypeMap& map, unsigned n, const Budget& budget);

std::vector<TileIndex> tiles_containing(const Level& level, const PillowPoint& p);
std::vector<TileIndex> tiles_containing(const LattesTypeMap& map, unsigned n, const PillowPoint& p);

std::vector<TileIndex> zero_edge_tiles(const Level& level, ZeroEdge edge,
                                       EdgeConvention conv = EdgeConvention::closed,
                                       const Budget& budget = {});
std::vector<TileIndex> zero_edge_tiles(const LattesTypeMap& map, unsigned n, ZeroEdge edge,
                                       EdgeConvention conv = EdgeConvention::closed,
                                       const Budget& budget = {});

/// Full enumeration of one level's cells.
class CellDecomposition {
public:
    static CellDecomposition build(const LattesTypeMap& map, unsigned n, const Budget& budget = {});

    const Level& level() const { return level_; }
    const std::vector<TileIndex>& tiles() const { return tiles_; }
    const std::vector<EdgeIndex>& edges() const { return edges_; }
    const std::vector<VertexIndex>& vertices() const { return vertices_; }
    CellCounts counts() const { return {vertices_.size(), edges_.size(), tiles_.size()}; }

    // Edges of a tile: bottom(i,j), left(i,j), bottom(i,j+1), left(i+1,j).
    std::vector<EdgeIndex> tile_edges(const TileIndex& t) const;
    // Corners of a tile, in the same cyclic order.
    std::vector<VertexIndex> tile_vertices(const TileIndex& t) const;
    // Vertices fixed by the vertex involution (the cone points).
    std::uint64_t fixed_vertex_classes() const;

private:
    explicit CellDecomposition(Level level) : level_(std::move(level)) {}

    Level level_;
    std::vector<TileIndex> tiles_;
    std::vector<EdgeIndex> edges_;
    std::vector<VertexIndex> vertices_;
};

} // namespace lattes::pillow
