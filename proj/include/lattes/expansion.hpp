#pragma once

/**
 * @file expansion.hpp
 * @brief D_n, the minimum number of n-tiles whose union joins two disjoint
 *        0-edges, computed two independent ways, plus the quantities it is
 *        sandwiched between.
 *
 * Planar route: in index space the lifts of a pair of opposite 0-edges are
 * two parallel lattice lines, and D_n is the shortest corner-connected chain
 * of unit squares between them (minimized over the two directions).
 * Folded route: breadth-first search over the 2 deg^n tiles of the pillow.
 */

#include "lattes/budget.hpp"
#include "lattes/exact.hpp"
#include "lattes/exec.hpp"
#include "lattes/pillow.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace lattes::expansion {

using exact::AlgebraicModulus;
using exact::Rational;
using pillow::LattesTypeMap;

enum class Method { planar, folded, both };

struct DnReport {
    unsigned n = 0;
    std::uint64_t dn = 0;
    Rational lower_bound;
    Rational upper_bound;
    Method method = Method::planar;
    // Both routes agree (trivially true for a single route).
    bool agreement = true;
    friend bool operator==(const DnReport&, const DnReport&) = default;
};

struct MengerReport {
    unsigned n = 0;
    std::uint64_t dn = 0;
    std::uint64_t path_min_tiles = 0;     // N_n
    std::uint64_t max_disjoint_paths = 0; // k
    std::uint64_t tile_budget = 0;        // deg^n
    bool chain_ok = false;                // dn <= N_n and dn <= k
    bool single_tile_budget_ok = false;   // k * N_n <= deg^n
    bool double_budget_ok = false;        // k * N_n <= 2 deg^n
    friend bool operator==(const MengerReport&, const MengerReport&) = default;
};

struct Lambda0Term {
    unsigned n = 0;
    std::uint64_t dn = 0;
    double root_f64 = 0;       // dn^(1/n)
    double lower_root_f64 = 0; // (1/||L^-n||)^(1/n)
    double upper_root_f64 = 0; // (1/||L^-n|| + 1)^(1/n)
    bool squeezed = false;     // exact: lower <= dn <= upper
    friend bool operator==(const Lambda0Term&, const Lambda0Term&) = default;
};

struct Lambda0Report {
    std::vector<Lambda0Term> terms;
    AlgebraicModulus target;
    double tolerance = 0.15;
    bool converged = false; // |last root - target| <= tolerance
    friend bool operator==(const Lambda0Report&, const Lambda0Report&) = default;
};

struct PlanarDn {
    std::uint64_t horizontal = 0; // between the lifts of y = 0 and y = 1
    std::uint64_t vertical = 0;   // between the lifts of x = 0 and x = 1
    std::uint64_t value() const { return horizontal < vertical ? horizontal : vertical; }
};

// Throws BudgetExceeded("budget exceeded") if a search visits more than
// budget.frontier cells.
PlanarDn dn_planar_detail(const LattesTypeMap& map, unsigned n, const Budget& budget = {});
std::uint64_t dn_planar(const LattesTypeMap& map, unsigned n, const Budget& budget = {});

std::uint64_t dn_folded(const LattesTypeMap& map, unsigned n,
                        pillow::EdgeConvention conv = pillow::EdgeConvention::closed,
                        const Budget& budget = {});

// (1 / ||L^-n||_inf, 1 / ||L^-n||_inf + 1).
std::pair<Rational, Rational> dn_bounds(const LattesTypeMap& map, unsigned n);

// Method::both throws std::logic_error if the two routes disagree.  The
// edge convention only affects the folded route.
DnReport dn_report(const LattesTypeMap& map, unsigned n, Method method = Method::planar,
                   const Budget& budget = {}, pillow::EdgeConvention conv = pillow::EdgeConvention::closed);

// D_n for every n in [first, last], parallel over levels.
std::vector<std::uint64_t> dn_sweep(const LattesTypeMap& map, unsigned first, unsigned last,
                                    const Budget& budget = {}, Exec exec = Exec::parallel);

Lambda0Report lambda0_estimate(const LattesTypeMap& map, unsigned n_max, double tolerance = 0.15,
                               const Budget& budget = {}, Exec exec = Exec::parallel);

// Requires a monomial matrix (the grid curve is then invariant and the
// n-tiles subdivide each 0-tile).  Works on the dual graph of the deg^n
// tiles inside the 0-tile [0,1]^2 with A / B the tiles meeting its bottom /
// top side.
MengerReport menger_verify(const LattesTypeMap& map, unsigned n, const Budget& budget = {});

} // namespace lattes::expansion
