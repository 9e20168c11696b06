#pragma once

#include <cstdint>

namespace lattes {

// Limits on enumeration and search sizes.  `cells` bounds folded-pillow
// enumerations (2*deg^n tiles); `frontier` bounds the visited set of
// unbounded planar searches.
struct Budget {
    std::uint64_t cells = std::uint64_t{1} << 22;
    std::uint64_t frontier = 10'000'000;
};

} // namespace lattes
