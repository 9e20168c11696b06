#pragma once

// Lattes or not: decided by the exact algebraic condition on L, with the
// growth of D_n / det^(n/2) over a finite window as a consistency witness.

#include "lattes/budget.hpp"
#include "lattes/exec.hpp"
#include "lattes/pillow.hpp"

#include <cstdint>
#include <vector>

namespace lattes::classify {

enum class Verdict { lattes, lattes_type_non_lattes };
enum class AlgebraicEvidence { negative_discriminant, scalar_matrix, neither };

struct RatioTerm {
    unsigned n = 0;
    std::uint64_t dn = 0;
    double ratio_f64 = 0; // D_n / det^(n/2)
    friend bool operator==(const RatioTerm&, const RatioTerm&) = default;
};

struct ClassificationVerdict {
    Verdict verdict = Verdict::lattes;
    AlgebraicEvidence evidence = AlgebraicEvidence::neither;
    // disc == 0 but L is not scalar: ||L^-n|| carries an extra factor n.
    bool non_semisimple = false;
    std::vector<RatioTerm> empirical; // n = 1..n_max
    // Lattes: every ratio >= 1/2.  Otherwise: non-increasing, last < first.
    bool consistent = false;
    double c_window_f64 = 0; // smallest ratio on the window
    friend bool operator==(const ClassificationVerdict&, const ClassificationVerdict&) = default;
};

// Requires n_max >= 3.
ClassificationVerdict lattes_verdict(const pillow::LattesTypeMap& map, unsigned n_max = 8,
                                     const Budget& budget = {}, Exec exec = Exec::parallel);

const char* to_string(Verdict v);
const char* to_string(AlgebraicEvidence e);

} // namespace lattes::classify
