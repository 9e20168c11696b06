#include "lattes/orbifold.hpp"

#include "lattes/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace lattes::orbifold {

using exact::BigInt;

ExtNat::ExtNat(std::uint64_t v) : v_(v) {}

ExtNat ExtNat::infinity()
{
    ExtNat e;
    e.inf_ = true;
    e.v_ = 0;
    return e;
}

std::string ExtNat::str() const { return inf_ ? "inf" : std::to_string(v_); }

ExtNat ExtNat::parse(std::string_view text)
{
    if (text == "inf" || text == "\xe2\x88\x9e")
        return infinity();
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ValidationError("malformed weight '" + std::string(text) + "'");
    return ExtNat(std::stoull(std::string(text)));
}

bool divides(const ExtNat& a, const ExtNat& b)
{
    if (b.is_infinite())
        return true;
    if (a.is_infinite())
        return false;
    if (a.value() == 0)
        return b.value() == 0;
    return b.value() % a.value() == 0;
}

ExtNat lcm(const ExtNat& a, const ExtNat& b)
{
    if (a.is_infinite() || b.is_infinite())
        return ExtNat::infinity();
    if (a.value() == 0 || b.value() == 0)
        return ExtNat(0);
    std::uint64_t g = std::gcd(a.value(), b.value());
    std::uint64_t q = a.value() / g;
    if (q > UINT64_MAX / b.value())
        throw BudgetExceeded("orbifold weight overflows 64 bits");
    return ExtNat(q * b.value());
}

ExtNat gcd(const ExtNat& a, const ExtNat& b)
{
    if (a.is_infinite())
        return b;
    if (b.is_infinite())
        return a;
    return ExtNat(std::gcd(a.value(), b.value()));
}

ExtNat operator*(const ExtNat& a, std::uint64_t k)
{
    if (a.is_infinite())
        return a;
    if (k != 0 && a.value() > UINT64_MAX / k)
        throw BudgetExceeded("orbifold weight overflows 64 bits");
    return ExtNat(a.value() * k);
}

void Portrait::validate() const
{
    std::set<std::string> ids;
    for (const PortraitNode& node : nodes) {
        if (node.id.empty())
            throw ValidationError("malformed portrait: empty node id");
        if (!ids.insert(node.id).second)
            throw ValidationError("malformed portrait: duplicate node '" + node.id + "'");
        if (node.degree < 1)
            throw ValidationError("malformed portrait: node '" + node.id + "' has degree 0");
    }
    for (const PortraitNode& node : nodes)
        if (!ids.count(node.image))
            throw ValidationError("malformed portrait: dangling image '" + node.image + "'");
}

Portrait pillow_portrait()
{
    Portrait p;
    for (int k = 1; k <= 4; ++k) {
        std::string id = "p" + std::to_string(k);
        p.nodes.push_back({id, id, 1});
        p.nodes.push_back({"c" + std::to_string(k), id, 2});
    }
    return p;
}

Portrait power_map_portrait() { return {{{"0", "0", 2}, {"inf", "inf", 2}}}; }

Portrait chain_portrait() { return {{{"X", "A", 2}, {"A", "B", 2}, {"B", "C", 1}, {"C", "C", 1}}}; }

namespace {

struct Graph {
    std::vector<std::size_t> image;
    std::vector<unsigned> degree;
};

Graph index(const Portrait& portrait)
{
    portrait.validate();
    std::unordered_map<std::string, std::size_t> at;
    for (std::size_t k = 0; k < portrait.nodes.size(); ++k)
        at[portrait.nodes[k].id] = k;
    Graph g;
    for (const PortraitNode& node : portrait.nodes) {
        g.image.push_back(at.at(node.image));
        g.degree.push_back(node.degree);
    }
    return g;
}

// Every cycle of the functional graph, as node lists.
std::vector<std::vector<std::size_t>> cycles(const Graph& g)
{
    const std::size_t n = g.image.size();
    std::vector<int> state(n, 0); // 0 new, 1 on current walk, 2 done
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t start = 0; start < n; ++start) {
        std::vector<std::size_t> walk;
        std::size_t v = start;
        while (state[v] == 0) {
            state[v] = 1;
            walk.push_back(v);
            v = g.image[v];
        }
        if (state[v] == 1) {
            auto it = std::find(walk.begin(), walk.end(), v);
            out.emplace_back(it, walk.end());
        }
        for (std::size_t w : walk)
            state[w] = 2;
    }
    return out;
}

bool critical_cycle(const Graph& g, const std::vector<std::size_t>& cycle)
{
    return std::any_of(cycle.begin(), cycle.end(), [&](std::size_t v) { return g.degree[v] > 1; });
}

} // namespace

OrbifoldData nu_minimal(const Portrait& portrait)
{
    Graph g = index(portrait);
    const std::size_t n = g.image.size();
    std::vector<ExtNat> nu(n, ExtNat(1));

    // Infinity on critical cycles, pushed forward.
    std::vector<std::size_t> stack;
    for (const auto& cycle : cycles(g))
        if (critical_cycle(g, cycle))
            for (std::size_t v : cycle)
                if (!nu[v].is_infinite()) {
                    nu[v] = ExtNat::infinity();
                    stack.push_back(v);
                }
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        std::size_t w = g.image[v];
        if (!nu[w].is_infinite()) {
            nu[w] = ExtNat::infinity();
            stack.push_back(w);
        }
    }

    // Finite part: monotone lcm iteration.  Values are bounded by the product
    // of all degrees, since no finite node sits downstream of a critical cycle.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t w = g.image[v];
            ExtNat next = lcm(nu[w], nu[v] * g.degree[v]);
            if (next != nu[w]) {
                nu[w] = next;
                changed = true;
            }
        }
    }

    OrbifoldData data;
    for (std::size_t v = 0; v < n; ++v) {
        data.nu.emplace(portrait.nodes[v].id, nu[v]);
        if (nu[v] != ExtNat(1))
            data.signature.push_back(nu[v]);
    }
    std::sort(data.signature.begin(), data.signature.end());
    data.chi = euler_char(data.signature);
    OrbifoldClassification c = classify_orbifold(data.signature);
    data.cls = c.cls;
    data.parabolic_type = c.parabolic_type;
    return data;
}

bool is_valid_nu(const Portrait& portrait, const std::map<std::string, ExtNat>& nu)
{
    portrait.validate();
    for (const PortraitNode& node : portrait.nodes) {
        auto here = nu.find(node.id);
        auto there = nu.find(node.image);
        if (here == nu.end() || there == nu.end())
            return false;
        if (!divides(here->second * node.degree, there->second))
            return false;
    }
    return true;
}

Rational euler_char(const std::vector<ExtNat>& signature)
{
    Rational chi(2);
    for (const ExtNat& v : signature) {
        chi -= Rational(1);
        if (!v.is_infinite())
            chi += Rational(BigInt(1), BigInt(std::to_string(v.value())));
    }
    return chi;
}

std::string signature_str(const std::vector<ExtNat>& signature)
{
    std::string out = "(";
    for (std::size_t k = 0; k < signature.size(); ++k) {
        if (k)
            out += ",";
        out += signature[k].str();
    }
    return out + ")";
}

OrbifoldClassification classify_orbifold(const std::vector<ExtNat>& signature)
{
    Rational chi = euler_char(signature);
    if (chi > Rational(0))
        throw ValidationError("not a Thurston-map orbifold");
    OrbifoldClassification c;
    if (chi < Rational(0))
        return c;
    c.cls = OrbifoldClass::parabolic;
    std::vector<ExtNat> sorted = signature;
    std::sort(sorted.begin(), sorted.end());
    std::string s = signature_str(sorted);
    for (const char* name : {"(2,2,2,2)", "(3,3,3)", "(2,4,4)", "(2,3,6)"})
        if (s == name)
            c.parabolic_type = s;
    return c;
}

bool has_periodic_critical(const Portrait& portrait)
{
    Graph g = index(portrait);
    for (const auto& cycle : cycles(g))
        if (critical_cycle(g, cycle))
            return true;
    return false;
}

} // namespace lattes::orbifold
