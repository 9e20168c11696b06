#pragma once

// Data-parallel kernels.  Each has a serial reference implementation that
// the tests hold the OpenMP version to, and which the benchmark compares
// against.

#include "lattes/exec.hpp"
#include "lattes/pillow.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace lattes::kernels {

using pillow::Level;
using pillow::TileIndex;

// Reference: collects canonical classes into ordered sets.
pillow::CellCounts count_cells_serial(const Level& level);
// Counts residues that are their own canonical representative.
pillow::CellCounts count_cells_parallel(const Level& level);

inline constexpr std::uint32_t unreached = 0;

// Multi-source breadth-first search over the folded tiles of one level with
// chain (corner-contact) adjacency.  Result is indexed by Level::cell_id of
// the canonical representative; a value k > 0 is the number of tiles on a
// shortest chain from the sources, 0 means unreached or not canonical.
std::vector<std::uint32_t> chain_field(const Level& level, std::span<const TileIndex> sources);

// Shortest chain cardinality from any source to any target, or 0 if none.
std::uint32_t chain_distance(const Level& level, std::span<const TileIndex> sources,
                             std::span<const TileIndex> targets);

// One chain_field per source set; parallel over the sets.
std::vector<std::vector<std::uint32_t>> chain_fields(const Level& level,
                                                     const std::vector<std::vector<TileIndex>>& source_sets,
                                                     Exec exec);

// Row x, column y: shortest chain from source set x to source set y (the
// smallest field value of x over y's tiles).  Parallel over rows; each row
// owns its field, so only one field per thread is alive at a time.
std::vector<std::vector<std::uint32_t>> chain_distance_matrix(const Level& level,
                                                              const std::vector<std::vector<TileIndex>>& source_sets,
                                                              Exec exec);

} // namespace lattes::kernels
