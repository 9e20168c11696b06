#include "lattes/serialize.hpp"

#include "lattes/errors.hpp"

#include <sstream>

namespace lattes::serialize {

using exact::AlgebraicModulus;
using exact::BigInt;
using exact::QuadSurd;
using exact::Rational;
using orbifold::ExtNat;

namespace {

template <typename F>
void guarded(F&& f)
{
    try {
        f();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed document: ") + e.what());
    }
}

BigInt big(const json& j)
{
    const std::string& s = j.get_ref<const std::string&>();
    BigInt v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw ValidationError("malformed integer '" + s + "'");
    return v;
}

void put(json& j, const std::string& key, const Rational& r)
{
    j[key] = r.str();
    j[key + "_f64"] = r.to_double();
}

void put(json& j, const std::string& key, const QuadSurd& q)
{
    j[key] = encode(q);
    j[key + "_f64"] = q.to_double();
}

template <typename T>
T take(const json& j, const std::string& key)
{
    T v{};
    decode(j.at(key), v);
    return v;
}

const char* class_name(orbifold::OrbifoldClass c)
{
    return c == orbifold::OrbifoldClass::parabolic ? "parabolic" : "hyperbolic";
}

const char* kind_name(AlgebraicModulus::Kind k)
{
    switch (k) {
    case AlgebraicModulus::Kind::integer:
        return "integer";
    case AlgebraicModulus::Kind::sqrt_of_rational:
        return "sqrt_of_rational";
    case AlgebraicModulus::Kind::half_sum_with_sqrt:
        return "half_sum_with_sqrt";
    }
    return "integer";
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

std::string csv_double(double v)
{
    // Same shortest round-trip form the JSON writer uses.
    return json(v).dump();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

} // namespace

json encode(const Rational& v) { return v.str(); }

json encode(const QuadSurd& v)
{
    return {{"a", v.a.get_str()}, {"b", v.b.get_str()}, {"d", v.d.get_str()}, {"den", v.den.get_str()}};
}

json encode(const AlgebraicModulus& v)
{
    json j{{"kind", kind_name(v.kind())}, {"value", v.str()}, {"approx", v.approx()}};
    switch (v.kind()) {
    case AlgebraicModulus::Kind::integer:
        j["integer"] = v.exact().a.get_str();
        break;
    case AlgebraicModulus::Kind::sqrt_of_rational:
        j["radicand"] = v.radicand().str();
        break;
    case AlgebraicModulus::Kind::half_sum_with_sqrt:
        j["p"] = v.exact().a.get_str();
        j["s"] = sgn(v.exact().b);
        j["d"] = v.exact().d.get_str();
        break;
    }
    return j;
}

json encode(const ExtNat& v)
{
    if (v.is_infinite())
        return "inf";
    return v.value();
}

json encode(const pillow::PillowPoint& v) { return {{"x", v.x().str()}, {"y", v.y().str()}}; }

json encode(const pillow::TileIndex& v) { return {{"level", v.level}, {"i", v.coords.i}, {"j", v.coords.j}}; }

json encode(const CellsReport& v)
{
    return {{"n", v.n},
            {"vertices", v.counts.vertices},
            {"edges", v.counts.edges},
            {"tiles", v.counts.tiles},
            {"euler", v.counts.euler()}};
}

json encode(const expansion::DnReport& v)
{
    json j{{"n", v.n}, {"dn", v.dn}, {"method", to_string(v.method)}, {"agreement", v.agreement}};
    put(j, "lower_bound", v.lower_bound);
    put(j, "upper_bound", v.upper_bound);
    return j;
}

json encode(const expansion::MengerReport& v)
{
    return {{"n", v.n},
            {"dn", v.dn},
            {"path_min_tiles", v.path_min_tiles},
            {"max_disjoint_paths", v.max_disjoint_paths},
            {"tile_budget", v.tile_budget},
            {"chain_ok", v.chain_ok},
            {"single_tile_budget_ok", v.single_tile_budget_ok},
            {"double_budget_ok", v.double_budget_ok}};
}

json encode(const expansion::Lambda0Report& v)
{
    json terms = json::array();
    for (const auto& t : v.terms)
        terms.push_back({{"n", t.n},
                         {"dn", t.dn},
                         {"root_f64", t.root_f64},
                         {"lower_root_f64", t.lower_root_f64},
                         {"upper_root_f64", t.upper_root_f64},
                         {"squeezed", t.squeezed}});
    return {{"terms", terms},
            {"target", encode(v.target)},
            {"target_f64", v.target.approx()},
            {"tolerance_f64", v.tolerance},
            {"converged", v.converged}};
}

json encode(const orbifold::Portrait& v)
{
    json nodes = json::array();
    for (const auto& n : v.nodes)
        nodes.push_back({{"id", n.id}, {"image", n.image}, {"degree", n.degree}});
    return {{"nodes", nodes}};
}

json encode(const orbifold::OrbifoldData& v)
{
    json nu = json::object();
    for (const auto& [id, value] : v.nu)
        nu[id] = encode(value);
    json sig = json::array();
    for (const auto& s : v.signature)
        sig.push_back(encode(s));
    json j{{"nu", nu},
           {"signature", sig},
           {"signature_str", orbifold::signature_str(v.signature)},
           {"class", class_name(v.cls)},
           {"parabolic_type", v.parabolic_type ? json(*v.parabolic_type) : json(nullptr)}};
    put(j, "chi", v.chi);
    return j;
}

json encode(const metrics::VisualReport& v)
{
    json pairs = json::array();
    for (const auto& p : v.pairs) {
        json dist = json::array();
        for (const auto& d : p.distances) {
            json e{{"n", d.n}, {"count", d.count}};
            put(e, "normalized", d.normalized);
            dist.push_back(e);
        }
        pairs.push_back({{"x", encode(p.x)},
                         {"y", encode(p.y)},
                         {"m", encode(p.m)},
                         {"m_prime", encode(p.m_prime.value)},
                         {"m_prime_lower_bound_only", p.m_prime.lower_bound_only},
                         {"distances", dist}});
    }
    json diam = json::array();
    for (const auto& d : v.diameters) {
        json e{{"n", d.n}, {"tile", encode(d.tile)}, {"level", d.level}, {"count", d.count}};
        put(e, "normalized", d.normalized);
        diam.push_back(e);
    }
    json j{{"pairs", pairs},
           {"notes", v.notes},
           {"lambda", encode(v.lambda)},
           {"window", v.window},
           {"spread_within_64", v.spread_within_64},
           {"triangles_checked", v.triangles_checked},
           {"triangle_violations", v.triangle_violations},
           {"symmetry_violations", v.symmetry_violations},
           {"m_prime_ok", v.m_prime_ok},
           {"max_m_gap", v.max_m_gap},
           {"diameters", diam},
           {"diameters_ok", v.diameters_ok}};
    put(j, "empirical_c", v.empirical_c);
    put(j, "empirical_C", v.empirical_C);
    put(j, "diameter_scale", v.diameter_scale);
    return j;
}

json encode(const classify::ClassificationVerdict& v)
{
    json terms = json::array();
    for (const auto& t : v.empirical)
        terms.push_back({{"n", t.n}, {"dn", t.dn}, {"ratio_f64", t.ratio_f64}});
    return {{"verdict", classify::to_string(v.verdict)},
            {"algebraic_evidence", classify::to_string(v.evidence)},
            {"non_semisimple", v.non_semisimple},
            {"empirical", terms},
            {"consistent", v.consistent},
            {"c_window_f64", v.c_window_f64}};
}

void decode(const json& j, Rational& v)
{
    guarded([&] { v = Rational::parse(j.get_ref<const std::string&>()); });
}

void decode(const json& j, QuadSurd& v)
{
    guarded([&] { v = QuadSurd{big(j.at("a")), big(j.at("b")), big(j.at("d")), big(j.at("den"))}; });
}

void decode(const json& j, AlgebraicModulus& v)
{
    guarded([&] {
        const std::string& kind = j.at("kind").get_ref<const std::string&>();
        if (kind == "integer")
            v = AlgebraicModulus::integer(big(j.at("integer")));
        else if (kind == "sqrt_of_rational")
            v = AlgebraicModulus::sqrt_of(Rational::parse(j.at("radicand").get_ref<const std::string&>()));
        else if (kind == "half_sum_with_sqrt")
            v = AlgebraicModulus::half_sum(big(j.at("p")), j.at("s").get<int>(), big(j.at("d")));
        else
            throw ValidationError("unknown modulus kind '" + kind + "'");
    });
}

void decode(const json& j, ExtNat& v)
{
    guarded([&] {
        if (j.is_string())
            v = ExtNat::parse(j.get_ref<const std::string&>());
        else
            v = ExtNat(j.get<std::uint64_t>());
    });
}

void decode(const json& j, pillow::PillowPoint& v)
{
    guarded([&] { v = pillow::PillowPoint(take<Rational>(j, "x"), take<Rational>(j, "y")); });
}

void decode(const json& j, pillow::TileIndex& v)
{
    guarded([&] { v = {j.at("level").get<unsigned>(), {j.at("i").get<std::int64_t>(), j.at("j").get<std::int64_t>()}}; });
}

void decode(const json& j, CellsReport& v)
{
    guarded([&] {
        v.n = j.at("n").get<unsigned>();
        v.counts = {j.at("vertices").get<std::uint64_t>(), j.at("edges").get<std::uint64_t>(),
                    j.at("tiles").get<std::uint64_t>()};
    });
}

void decode(const json& j, expansion::DnReport& v)
{
    guarded([&] {
        v.n = j.at("n").get<unsigned>();
        v.dn = j.at("dn").get<std::uint64_t>();
        v.method = parse_method(j.at("method").get<std::string>());
        v.agreement = j.at("agreement").get<bool>();
        v.lower_bound = take<Rational>(j, "lower_bound");
        v.upper_bound = take<Rational>(j, "upper_bound");
    });
}

void decode(const json& j, expansion::MengerReport& v)
{
    guarded([&] {
        v.n = j.at("n").get<unsigned>();
        v.dn = j.at("dn").get<std::uint64_t>();
        v.path_min_tiles = j.at("path_min_tiles").get<std::uint64_t>();
        v.max_disjoint_paths = j.at("max_disjoint_paths").get<std::uint64_t>();
        v.tile_budget = j.at("tile_budget").get<std::uint64_t>();
        v.chain_ok = j.at("chain_ok").get<bool>();
        v.single_tile_budget_ok = j.at("single_tile_budget_ok").get<bool>();
        v.double_budget_ok = j.at("double_budget_ok").get<bool>();
    });
}

void decode(const json& j, expansion::Lambda0Report& v)
{
    guarded([&] {
        v.terms.clear();
        for (const json& t : j.at("terms"))
            v.terms.push_back({t.at("n").get<unsigned>(), t.at("dn").get<std::uint64_t>(),
                               t.at("root_f64").get<double>(), t.at("lower_root_f64").get<double>(),
                               t.at("upper_root_f64").get<double>(), t.at("squeezed").get<bool>()});
        v.target = take<AlgebraicModulus>(j, "target");
        v.tolerance = j.at("tolerance_f64").get<double>();
        v.converged = j.at("converged").get<bool>();
    });
}

void decode(const json& j, orbifold::Portrait& v)
{
    guarded([&] {
        v.nodes.clear();
        for (const json& n : j.at("nodes")) {
            std::int64_t degree = n.at("degree").get<std::int64_t>();
            if (degree < 1)
                throw ValidationError("malformed portrait: degree must be at least 1");
            v.nodes.push_back({n.at("id").get<std::string>(), n.at("image").get<std::string>(),
                               static_cast<unsigned>(degree)});
        }
    });
}

void decode(const json& j, orbifold::OrbifoldData& v)
{
    guarded([&] {
        v.nu.clear();
        for (const auto& [id, value] : j.at("nu").items())
            v.nu.emplace(id, decode_as<ExtNat>(value));
        v.signature.clear();
        for (const json& s : j.at("signature"))
            v.signature.push_back(decode_as<ExtNat>(s));
        v.chi = take<Rational>(j, "chi");
        const std::string cls = j.at("class").get<std::string>();
        if (cls != "parabolic" && cls != "hyperbolic")
            throw ValidationError("unknown orbifold class '" + cls + "'");
        v.cls = cls == "parabolic" ? orbifold::OrbifoldClass::parabolic : orbifold::OrbifoldClass::hyperbolic;
        const json& t = j.at("parabolic_type");
        v.parabolic_type = t.is_null() ? std::nullopt : std::optional<std::string>(t.get<std::string>());
    });
}

void decode(const json& j, metrics::VisualReport& v)
{
    guarded([&] {
        v = {};
        for (const json& p : j.at("pairs")) {
            metrics::PairSample s;
            s.x = take<pillow::PillowPoint>(p, "x");
            s.y = take<pillow::PillowPoint>(p, "y");
            s.m = take<ExtNat>(p, "m");
            s.m_prime = {take<ExtNat>(p, "m_prime"), p.at("m_prime_lower_bound_only").get<bool>()};
            for (const json& d : p.at("distances"))
                s.distances.push_back({d.at("n").get<unsigned>(), d.at("count").get<std::uint64_t>(),
                                       take<QuadSurd>(d, "normalized"), d.at("normalized_f64").get<double>()});
            v.pairs.push_back(std::move(s));
        }
        v.notes = j.at("notes").get<std::vector<std::string>>();
        v.lambda = take<AlgebraicModulus>(j, "lambda");
        v.window = j.at("window").get<unsigned>();
        v.empirical_c = take<QuadSurd>(j, "empirical_c");
        v.empirical_C = take<QuadSurd>(j, "empirical_C");
        v.empirical_c_f64 = j.at("empirical_c_f64").get<double>();
        v.empirical_C_f64 = j.at("empirical_C_f64").get<double>();
        v.spread_within_64 = j.at("spread_within_64").get<bool>();
        v.triangles_checked = j.at("triangles_checked").get<std::uint64_t>();
        v.triangle_violations = j.at("triangle_violations").get<std::uint64_t>();
        v.symmetry_violations = j.at("symmetry_violations").get<std::uint64_t>();
        v.m_prime_ok = j.at("m_prime_ok").get<bool>();
        v.max_m_gap = j.at("max_m_gap").get<std::int64_t>();
        for (const json& d : j.at("diameters"))
            v.diameters.push_back({d.at("n").get<unsigned>(), take<pillow::TileIndex>(d, "tile"),
                                   d.at("level").get<unsigned>(), d.at("count").get<std::uint64_t>(),
                                   take<QuadSurd>(d, "normalized"), d.at("normalized_f64").get<double>()});
        v.diameter_scale = take<QuadSurd>(j, "diameter_scale");
        v.diameter_scale_f64 = j.at("diameter_scale_f64").get<double>();
        v.diameters_ok = j.at("diameters_ok").get<bool>();
    });
}

void decode(const json& j, classify::ClassificationVerdict& v)
{
    guarded([&] {
        const std::string verdict = j.at("verdict").get<std::string>();
        if (verdict == "lattes")
            v.verdict = classify::Verdict::lattes;
        else if (verdict == "lattes_type_non_lattes")
            v.verdict = classify::Verdict::lattes_type_non_lattes;
        else
            throw ValidationError("unknown verdict '" + verdict + "'");
        const std::string ev = j.at("algebraic_evidence").get<std::string>();
        if (ev == "disc<0")
            v.evidence = classify::AlgebraicEvidence::negative_discriminant;
        else if (ev == "scalar")
            v.evidence = classify::AlgebraicEvidence::scalar_matrix;
        else if (ev == "neither")
            v.evidence = classify::AlgebraicEvidence::neither;
        else
            throw ValidationError("unknown evidence '" + ev + "'");
        v.non_semisimple = j.at("non_semisimple").get<bool>();
        v.empirical.clear();
        for (const json& t : j.at("empirical"))
            v.empirical.push_back({t.at("n").get<unsigned>(), t.at("dn").get<std::uint64_t>(),
                                   t.at("ratio_f64").get<double>()});
        v.consistent = j.at("consistent").get<bool>();
        v.c_window_f64 = j.at("c_window_f64").get<double>();
    });
}

orbifold::Portrait parse_portrait(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError("malformed portrait JSON");
    orbifold::Portrait p = decode_as<orbifold::Portrait>(j);
    p.validate();
    return p;
}

std::vector<pillow::PillowPoint> parse_samples(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError("malformed sample JSON");
    std::vector<pillow::PillowPoint> out;
    guarded([&] {
        for (const json& p : j.at("points")) {
            if (p.is_array() && p.size() == 2)
                out.emplace_back(decode_as<Rational>(p[0]), decode_as<Rational>(p[1]));
            else
                out.push_back(decode_as<pillow::PillowPoint>(p));
        }
    });
    return out;
}

const char* to_string(expansion::Method m)
{
    switch (m) {
    case expansion::Method::planar:
        return "planar";
    case expansion::Method::folded:
        return "folded";
    case expansion::Method::both:
        return "both";
    }
    return "planar";
}

expansion::Method parse_method(const std::string& s)
{
    if (s == "planar")
        return expansion::Method::planar;
    if (s == "folded")
        return expansion::Method::folded;
    if (s == "both")
        return expansion::Method::both;
    throw ValidationError("unknown method '" + s + "'");
}

std::string csv(const std::vector<CellsReport>& rows)
{
    std::ostringstream os;
    os << "n,vertices,edges,tiles,euler\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.counts.vertices << ',' << r.counts.edges << ',' << r.counts.tiles << ','
           << r.counts.euler() << '\n';
    return os.str();
}

std::string csv(const std::vector<expansion::DnReport>& rows)
{
    std::ostringstream os;
    os << "n,dn,lower_bound,upper_bound,method,agreement\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.dn << ',' << r.lower_bound.str() << ',' << r.upper_bound.str() << ','
           << to_string(r.method) << ',' << csv_bool(r.agreement) << '\n';
    return os.str();
}

std::string csv(const std::vector<expansion::MengerReport>& rows)
{
    std::ostringstream os;
    os << "n,dn,path_min_tiles,max_disjoint_paths,tile_budget,chain_ok,single_tile_budget_ok,double_budget_ok\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.dn << ',' << r.path_min_tiles << ',' << r.max_disjoint_paths << ',' << r.tile_budget
           << ',' << csv_bool(r.chain_ok) << ',' << csv_bool(r.single_tile_budget_ok) << ','
           << csv_bool(r.double_budget_ok) << '\n';
    return os.str();
}

std::string csv(const expansion::Lambda0Report& report)
{
    std::ostringstream os;
    os << "n,dn,root_f64,lower_root_f64,upper_root_f64,squeezed,target,target_f64\n";
    for (const auto& t : report.terms)
        os << t.n << ',' << t.dn << ',' << csv_double(t.root_f64) << ',' << csv_double(t.lower_root_f64) << ','
           << csv_double(t.upper_root_f64) << ',' << csv_bool(t.squeezed) << ',' << csv_field(report.target.str())
           << ',' << csv_double(report.target.approx()) << '\n';
    return os.str();
}

std::string csv(const orbifold::Portrait& portrait, const orbifold::OrbifoldData& data)
{
    std::ostringstream os;
    os << "id,image,degree,nu\n";
    for (const auto& n : portrait.nodes)
        os << csv_field(n.id) << ',' << csv_field(n.image) << ',' << n.degree << ',' << data.nu.at(n.id).str()
           << '\n';
    return os.str();
}

std::string csv(const metrics::VisualReport& report)
{
    std::ostringstream os;
    os << "pair,x,y,m,m_prime,n,count,normalized_f64\n";
    for (std::size_t k = 0; k < report.pairs.size(); ++k) {
        const auto& p = report.pairs[k];
        std::string head = std::to_string(k) + ',' + csv_field(p.x.x().str() + " " + p.x.y().str()) + ',' +
                           csv_field(p.y.x().str() + " " + p.y.y().str()) + ',' + p.m.str() + ',' +
                           p.m_prime.value.str();
        for (const auto& d : p.distances)
            os << head << ',' << d.n << ',' << d.count << ',' << csv_double(d.normalized_f64) << '\n';
    }
    return os.str();
}

std::string csv(const classify::ClassificationVerdict& verdict)
{
    std::ostringstream os;
    os << "verdict,algebraic_evidence,n,dn,ratio_f64,consistent\n";
    for (const auto& t : verdict.empirical)
        os << classify::to_string(verdict.verdict) << ',' << csv_field(classify::to_string(verdict.evidence)) << ','
           << t.n << ',' << t.dn << ',' << csv_double(t.ratio_f64) << ',' << csv_bool(verdict.consistent) << '\n';
    return os.str();
}

} // namespace lattes::serialize
