#pragma once

/**
 * @file metrics.hpp
 * @brief Tile-separation indices and the finite-level chain metric d_n.
 *
 * m(x, y) is the first level with disjoint tiles around x and y; m'(x, y) the
 * last level at which some tiles around them still touch.  d_n(x, y) is the
 * shortest tile chain between the tiles around x and around y, scaled by
 * Lambda0^-n.  Everything that depends on Lambda0 is kept as an exact surd.
 */

#include "lattes/budget.hpp"
#include "lattes/exact.hpp"
#include "lattes/exec.hpp"
#include "lattes/orbifold.hpp"
#include "lattes/pillow.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lattes::metrics {

using exact::AlgebraicModulus;
using exact::QuadSurd;
using exact::Rational;
using orbifold::ExtNat;
using pillow::LattesTypeMap;
using pillow::PillowPoint;
using pillow::TileIndex;

// Infinity for x == y.  Throws CapExceeded("cap exceeded") when no level up
// to n_cap separates the points.
ExtNat m_index(const LattesTypeMap& map, const PillowPoint& x, const PillowPoint& y, unsigned n_cap = 24);

struct PrimeIndex {
    ExtNat value;
    // The points still touch at n_cap, so the true value may be larger.
    bool lower_bound_only = false;
    friend bool operator==(const PrimeIndex&, const PrimeIndex&) = default;
};

// Requires x != y (ValidationError otherwise).
PrimeIndex m_prime_index(const LattesTypeMap& map, const PillowPoint& x, const PillowPoint& y, unsigned n_cap = 24);

struct DnMetric {
    unsigned n = 0;
    std::uint64_t count = 0;      // tiles on a shortest chain; 0 for x == y
    QuadSurd value;               // count * Lambda0^-n
    std::optional<Rational> exact; // present when Lambda0 is rational
    double value_f64 = 0;
    friend bool operator==(const DnMetric&, const DnMetric&) = default;
};

DnMetric dn_metric(const LattesTypeMap& map, const PillowPoint& x, const PillowPoint& y, unsigned n,
                   const Budget& budget = {});

struct LevelDistance {
    unsigned n = 0;
    std::uint64_t count = 0;
    QuadSurd normalized; // d_n * Lambda0^m = count * Lambda0^(m - n)
    double normalized_f64 = 0;
    friend bool operator==(const LevelDistance&, const LevelDistance&) = default;
};

struct PairSample {
    PillowPoint x;
    PillowPoint y;
    ExtNat m;
    PrimeIndex m_prime;
    std::vector<LevelDistance> distances; // n in (m, m + window]
    friend bool operator==(const PairSample&, const PairSample&) = default;
};

struct TileDiameter {
    unsigned n = 0;
    TileIndex tile;
    unsigned level = 0;       // the metric level N
    std::uint64_t count = 0;  // largest chain count between corners/centre
    QuadSurd normalized;      // diam_{d_N} * Lambda0^n
    double normalized_f64 = 0;
    friend bool operator==(const TileDiameter&, const TileDiameter&) = default;
};

struct VisualReport {
    std::vector<PairSample> pairs;
    std::vector<std::string> notes;
    AlgebraicModulus lambda;
    unsigned window = 5;

    QuadSurd empirical_c;
    QuadSurd empirical_C;
    double empirical_c_f64 = 0;
    double empirical_C_f64 = 0;
    bool spread_within_64 = false; // empirical_C <= 64 * empirical_c

    std::uint64_t triangles_checked = 0;
    std::uint64_t triangle_violations = 0;
    std::uint64_t symmetry_violations = 0;

    bool m_prime_ok = false; // m' <= m + 1 on every pair
    std::int64_t max_m_gap = 0; // max of m - m'

    std::vector<TileDiameter> diameters;
    QuadSurd diameter_scale; // s: normalized diameter of the first sampled tile
    double diameter_scale_f64 = 0;
    // Every normalized diameter lies in [s * c / C, s * C / c].
    bool diameters_ok = false;

    friend bool operator==(const VisualReport&, const VisualReport&) = default;
};

struct VisualOptions {
    unsigned window = 5;
    unsigned n_cap = 16;
    Budget budget;
    Exec exec = Exec::parallel;
};

// Deterministic low-discrepancy rational points of [0,2] x [0,1] (Halton,
// bases 2 and 3), skipping cone points.
std::vector<PillowPoint> default_samples(std::size_t count = 13);

// Pairs are consecutive sample points.  Identical pairs are skipped with a
// note.  Throws ValidationError on an empty sample.
VisualReport visual_report(const LattesTypeMap& map, const std::vector<PillowPoint>& points,
                           const VisualOptions& options = {});

} // namespace lattes::metrics
