#pragma once

#include "lattes/pillow.hpp"
#include "oracle.hpp"

#include <array>
#include <string>

namespace testing {

using lattes::exact::IntMat2;
using lattes::pillow::LattesTypeMap;

struct Named {
    const char* name;
    oracle::Mat m;
};

// The five matrices every module is exercised on.
inline const std::array<Named, 5> matrices{{
    {"2I", {2, 0, 0, 2}},
    {"diag(2,3)", {2, 0, 0, 3}},
    {"[[1,-2],[1,1]]", {1, -2, 1, 1}},
    {"shear", {2, 1, 0, 2}},
    {"[[3,1],[1,2]]", {3, 1, 1, 2}},
}};

inline IntMat2 int_mat(const oracle::Mat& m) { return {m.a, m.b, m.c, m.d}; }

inline LattesTypeMap map_of(const oracle::Mat& m) { return lattes::pillow::make_map(int_mat(m)); }

inline LattesTypeMap map_of(long a, long b, long c, long d) { return map_of(oracle::Mat{a, b, c, d}); }

} // namespace testing
