#pragma once

// Orbifold data of a Thurston map from its ramification portrait: the
// minimal nu with nu(p) * deg(p) | nu(f(p)), the signature, chi and the
// parabolic / hyperbolic split.

#include "lattes/exact.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lattes::orbifold {

using exact::Rational;

/// Natural number or infinity.  Infinity is a multiple of everything.  Also
/// used for level indices (which may be 0); orbifold weights are >= 1.
class ExtNat {
public:
    ExtNat() = default;
    ExtNat(std::uint64_t v);
    static ExtNat infinity();

    bool is_infinite() const { return inf_; }
    // Only meaningful for finite values.
    std::uint64_t value() const { return v_; }

    // "inf" or the decimal value.
    std::string str() const;
    // Accepts what str() produces; also "∞".
    static ExtNat parse(std::string_view text);

    friend bool operator==(const ExtNat&, const ExtNat&) = default;
    friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b)
    {
        if (a.inf_ || b.inf_)
            return a.inf_ <=> b.inf_;
        return a.v_ <=> b.v_;
    }

private:
    std::uint64_t v_ = 1;
    bool inf_ = false;
};

bool divides(const ExtNat& a, const ExtNat& b);
ExtNat lcm(const ExtNat& a, const ExtNat& b);
ExtNat gcd(const ExtNat& a, const ExtNat& b);
ExtNat operator*(const ExtNat& a, std::uint64_t k);

struct PortraitNode {
    std::string id;
    std::string image;
    unsigned degree = 1;
    friend bool operator==(const PortraitNode&, const PortraitNode&) = default;
};

struct Portrait {
    std::vector<PortraitNode> nodes;

    // Unique ids, degree >= 1, every image present.  Throws
    // ValidationError("malformed portrait: ...").
    void validate() const;
    friend bool operator==(const Portrait&, const Portrait&) = default;
};

// Four fixed points of local degree 1, each with one degree-2 preimage.
Portrait pillow_portrait();
// z -> z^2 at 0 and infinity.
Portrait power_map_portrait();
// X -> A -> B -> C -> C with deg X = 2, deg A = 2.
Portrait chain_portrait();

enum class OrbifoldClass { parabolic, hyperbolic };

struct OrbifoldData {
    std::map<std::string, ExtNat> nu;
    std::vector<ExtNat> signature; // ascending, infinity last
    Rational chi;
    OrbifoldClass cls = OrbifoldClass::hyperbolic;
    // One of "(2,2,2,2)", "(3,3,3)", "(2,4,4)", "(2,3,6)" when it matches.
    std::optional<std::string> parabolic_type;
    friend bool operator==(const OrbifoldData&, const OrbifoldData&) = default;
};

struct OrbifoldClassification {
    OrbifoldClass cls = OrbifoldClass::hyperbolic;
    std::optional<std::string> parabolic_type;
};

// Throws ValidationError on a malformed portrait, and
// ValidationError("not a Thurston-map orbifold") when chi > 0.
OrbifoldData nu_minimal(const Portrait& portrait);

// Whether nu(p) * deg(p) divides nu(f(p)) at every node.
bool is_valid_nu(const Portrait& portrait, const std::map<std::string, ExtNat>& nu);

// 2 - sum(1 - 1/v) with 1/inf = 0.
Rational euler_char(const std::vector<ExtNat>& signature);

std::string signature_str(const std::vector<ExtNat>& signature);

// Throws ValidationError("not a Thurston-map orbifold") when chi > 0.
OrbifoldClassification classify_orbifold(const std::vector<ExtNat>& signature);

bool has_periodic_critical(const Portrait& portrait);

} // namespace lattes::orbifold
