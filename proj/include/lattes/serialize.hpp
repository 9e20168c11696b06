#pragma once

// JSON and CSV forms of every report.  Exact quantities travel as strings
// ("n/d" for rationals) with a parallel *_f64 field where a float is handy.
// decode(encode(x)) == x for every type here.

#include "lattes/classify.hpp"
#include "lattes/expansion.hpp"
#include "lattes/metrics.hpp"
#include "lattes/orbifold.hpp"
#include "lattes/pillow.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace lattes::serialize {

using json = nlohmann::json;

struct CellsReport {
    unsigned n = 0;
    pillow::CellCounts counts;
    friend bool operator==(const CellsReport&, const CellsReport&) = default;
};

json encode(const exact::Rational& v);
json encode(const exact::QuadSurd& v);
json encode(const exact::AlgebraicModulus& v);
json encode(const orbifold::ExtNat& v);
json encode(const pillow::PillowPoint& v);
json encode(const pillow::TileIndex& v);
json encode(const CellsReport& v);
json encode(const expansion::DnReport& v);
json encode(const expansion::MengerReport& v);
json encode(const expansion::Lambda0Report& v);
json encode(const orbifold::Portrait& v);
json encode(const orbifold::OrbifoldData& v);
json encode(const metrics::VisualReport& v);
json encode(const classify::ClassificationVerdict& v);

// Each throws ValidationError on a document of the wrong shape.
void decode(const json& j, exact::Rational& v);
void decode(const json& j, exact::QuadSurd& v);
void decode(const json& j, exact::AlgebraicModulus& v);
void decode(const json& j, orbifold::ExtNat& v);
void decode(const json& j, pillow::PillowPoint& v);
void decode(const json& j, pillow::TileIndex& v);
void decode(const json& j, CellsReport& v);
void decode(const json& j, expansion::DnReport& v);
void decode(const json& j, expansion::MengerReport& v);
void decode(const json& j, expansion::Lambda0Report& v);
void decode(const json& j, orbifold::Portrait& v);
void decode(const json& j, orbifold::OrbifoldData& v);
void decode(const json& j, metrics::VisualReport& v);
void decode(const json& j, classify::ClassificationVerdict& v);

template <typename T>
T decode_as(const json& j)
{
    T v{};
    decode(j, v);
    return v;
}

// Portrait input: {"nodes":[{"id":"p1","image":"p1","degree":1}, ...]}.
orbifold::Portrait parse_portrait(const std::string& text);

// Sample input: {"points":[["1/4","1/4"], ...]}.
std::vector<pillow::PillowPoint> parse_samples(const std::string& text);

const char* to_string(expansion::Method m);
expansion::Method parse_method(const std::string& s);

// CSV: a header line, then one line per row, "\n" terminated.
std::string csv(const std::vector<CellsReport>& rows);
std::string csv(const std::vector<expansion::DnReport>& rows);
std::string csv(const std::vector<expansion::MengerReport>& rows);
std::string csv(const expansion::Lambda0Report& report);
std::string csv(const orbifold::Portrait& portrait, const orbifold::OrbifoldData& data);
std::string csv(const metrics::VisualReport& report);
std::string csv(const classify::ClassificationVerdict& verdict);

} // namespace lattes::serialize
