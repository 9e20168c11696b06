#pragma once

// Deterministic SVG of one level: the unfolded two-square window of the
// plane, the level-n parallelograms clipped to it in checkerboard colours,
// the level-n grid lines, and the four cone points.

#include "lattes/budget.hpp"
#include "lattes/pillow.hpp"

#include <cstdint>
#include <string>

namespace lattes::render {

struct SvgOptions {
    // [0,1] x [0,2] instead of [0,2] x [0,1].
    bool portrait = false;
    Budget budget;
};

struct Svg {
    std::string text;
    std::uint64_t cells = 0; // parallelograms meeting the window in positive area
};

// Throws BudgetExceeded("level too deep") if the index box covering the
// window holds more than budget.cells squares.
Svg render_svg(const pillow::LattesTypeMap& map, unsigned n, const SvgOptions& options = {});

} // namespace lattes::render
