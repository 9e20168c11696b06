#include "lattes/cli.hpp"

#include "lattes/classify.hpp"
#include "lattes/errors.hpp"
#include "lattes/expansion.hpp"
#include "lattes/metrics.hpp"
#include "lattes/orbifold.hpp"
#include "lattes/pillow.hpp"
#include "lattes/render.hpp"
#include "lattes/serialize.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lattes::cli {

using serialize::json;

namespace {

struct Config {
    std::string matrix;
    std::string levels = "0";
    std::string format;
    std::string out;
    std::string method = "planar";
    std::string edges = "closed";
    std::string portrait;
    std::string samples;
    unsigned n_max = 8;
    double tolerance = 0.15;
    unsigned window = 5;
    unsigned n_cap = 16;
    bool vertical = false;
};

std::uint64_t parse_u64(const std::string& s, const std::string& what)
{
    if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string::npos)
        throw ValidationError("malformed " + what + " '" + s + "'");
    return std::stoull(s);
}

exact::IntMat2 parse_matrix(const std::string& text)
{
    if (text.empty())
        throw ValidationError("--matrix is required");
    std::vector<exact::BigInt> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        exact::BigInt b;
        std::string digits = (!item.empty() && (item[0] == '-' || item[0] == '+')) ? item.substr(1) : item;
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("malformed matrix '" + text + "'");
        b.set_str(digits, 10);
        v.push_back(item[0] == '-' ? exact::BigInt(-b) : b);
    }
    if (v.size() != 4 || (!text.empty() && text.back() == ','))
        throw ValidationError("malformed matrix '" + text + "': expected a,b,c,d");
    return {v[0], v[1], v[2], v[3]};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

orbifold::Portrait load_portrait(const std::string& source)
{
    if (source.empty())
        throw ValidationError("--portrait is required");
    if (source == "builtin:pillow")
        return orbifold::pillow_portrait();
    if (source == "builtin:power")
        return orbifold::power_map_portrait();
    if (source == "builtin:chain")
        return orbifold::chain_portrait();
    return serialize::parse_portrait(read_file(source));
}

std::string format_or(const Config& c, const char* fallback)
{
    std::string f = c.format.empty() ? fallback : c.format;
    if (f != "json" && f != "csv" && f != "text" && f != "svg")
        throw ValidationError("unknown format '" + f + "'");
    return f;
}

void reject_svg(const std::string& format)
{
    if (format == "svg")
        throw ValidationError("svg output is only available for render");
}

std::string document(const std::string& command, const pillow::LattesTypeMap* map, json body)
{
    json doc{{"command", command}};
    if (map)
        doc["matrix"] = map->matrix().str();
    doc["result"] = std::move(body);
    return doc.dump(2) + "\n";
}

std::string boolstr(bool b) { return b ? "true" : "false"; }

std::string cmd_cells(const Config& c, const Budget& budget)
{
    auto map = pillow::make_map(parse_matrix(c.matrix));
    std::string f = format_or(c, "json");
    reject_svg(f);
    auto [a, b] = parse_levels(c.levels);
    std::vector<serialize::CellsReport> rows;
    for (unsigned n = a; n <= b; ++n)
        rows.push_back({n, pillow::cell_counts(map, n, budget)});
    if (f == "csv")
        return serialize::csv(rows);
    if (f == "text") {
        std::ostringstream os;
        for (const auto& r : rows)
            os << "n=" << r.n << " V=" << r.counts.vertices << ",E=" << r.counts.edges << ",F=" << r.counts.tiles
               << " euler=" << r.counts.euler() << "\n";
        return os.str();
    }
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(serialize::encode(r));
    return document("cells", &map, arr);
}

std::string cmd_dn(const Config& c, const Budget& budget)
{
    auto map = pillow::make_map(parse_matrix(c.matrix));
    std::string f = format_or(c, "json");
    reject_svg(f);
    auto [a, b] = parse_levels(c.levels);
    expansion::Method method = serialize::parse_method(c.method);
    if (c.edges != "closed" && c.edges != "open")
        throw ValidationError("unknown edge convention '" + c.edges + "'");
    auto conv = c.edges == "open" ? pillow::EdgeConvention::open : pillow::EdgeConvention::closed;
    if (conv == pillow::EdgeConvention::open && method != expansion::Method::folded)
        throw ValidationError("the open edge convention needs --method folded");
    std::vector<expansion::DnReport> rows;
    for (unsigned n = a; n <= b; ++n)
        rows.push_back(expansion::dn_report(map, n, method, budget, conv));
    if (f == "csv")
        return serialize::csv(rows);
    if (f == "text") {
        std::ostringstream os;
        for (const auto& r : rows)
            os << "n=" << r.n << " dn=" << r.dn << " bounds=[" << r.lower_bound.str() << "," << r.upper_bound.str()
               << "] method=" << serialize::to_string(r.method) << "\n";
        return os.str();
    }
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(serialize::encode(r));
    return document("dn", &map, arr);
}

std::string cmd_lambda0(const Config& c, const Budget& budget)
{
    auto map = pillow::make_map(parse_matrix(c.matrix));
    std::string f = format_or(c, "json");
    reject_svg(f);
    auto r = expansion::lambda0_estimate(map, c.n_max, c.tolerance, budget);
    if (f == "csv")
        return serialize::csv(r);
    if (f == "text") {
        std::ostringstream os;
        for (const auto& t : r.terms)
            os << "n=" << t.n << " dn=" << t.dn << " root=" << serialize::json(t.root_f64).dump() << "\n";
        os << "target=" << r.target.str() << " converged=" << boolstr(r.converged) << "\n";
        return os.str();
    }
    return document("lambda0", &map, serialize::encode(r));
}

std::string cmd_menger(const Config& c, const Budget& budget)
{
    auto map = pillow::make_map(parse_matrix(c.matrix));
    std::string f = format_or(c, "json");
    reject_svg(f);
    auto [a, b] = parse_levels(c.levels);
    std::vector<expansion::MengerReport> rows;
    for (unsigned n = a; n <= b; ++n)
        rows.push_back(expansion::menger_verify(map, n, budget));
    if (f == "csv")
        return serialize::csv(rows);
    if (f == "text") {
        std::ostringstream os;
        for (const auto& r : rows)
            os << "n=" << r.n << " dn=" << r.dn << " N=" << r.path_min_tiles << " k=" << r.max_disjoint_paths
               << " budget=" << r.tile_budget << " chain_ok=" << boolstr(r.chain_ok)
               << " single_tile_budget_ok=" << boolstr(r.single_tile_budget_ok) << "\n";
        return os.str();
    }
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(serialize::encode(r));
    return document("menger", &map, arr);
}

std::string cmd_orbifold(const Config& c)
{
    std::string f = format_or(c, "json");
    reject_svg(f);
    orbifold::Portrait p = load_portrait(c.portrait);
    orbifold::OrbifoldData d = orbifold::nu_minimal(p);
    if (f == "csv")
        return serialize::csv(p, d);
    if (f == "text") {
        std::ostringstream os;
        for (const auto& node : p.nodes)
            os << "nu(" << node.id << ")=" << d.nu.at(node.id).str() << "\n";
        os << "signature=" << orbifold::signature_str(d.signature) << " chi=" << d.chi.str() << " class="
           << (d.cls == orbifold::OrbifoldClass::parabolic ? "parabolic" : "hyperbolic");
        if (d.parabolic_type)
            os << " type=" << *d.parabolic_type;
        os << "\n";
        return os.str();
    }
    json body{{"portrait", serialize::encode(p)}, {"orbifold", serialize::encode(d)},
              {"has_periodic_critical", orbifold::has_periodic_critical(p)}};
    return document("orbifold", nullptr, body);
}

std::string cmd_metric(const Config& c, const Budget& budget)
{
    auto map = pillow::make_map(parse_matrix(c.matrix));
    std::string f = format_or(c, "json");
    reject_svg(f);
    auto points = c.samples.empty() ? metrics::default_samples() : serialize::parse_samples(read_file(c.samples));
    metrics::VisualOptions opt;
    opt.window = c.window;
    opt.n_cap = c.n_cap;
    opt.budget = budget;
    auto r = metrics::visual_report(map, points, opt);
    if (f == "csv")
        return serialize::csv(r);
    if (f == "text") {
        std::ostringstream os;
        os << "pairs=" << r.pairs.size() << " c=" << json(r.empirical_c_f64).dump()
           << " C=" << json(r.empirical_C_f64).dump() << " spread_within_64=" << boolstr(r.spread_within_64) << "\n";
        os << "triangles=" << r.triangles_checked << " violations=" << r.triangle_violations
           << " m_prime_ok=" << boolstr(r.m_prime_ok) << " max_m_gap=" << r.max_m_gap
           << " diameters_ok=" << boolstr(r.diameters_ok) << "\n";
        for (const auto& note : r.notes)
            os << "note: " << note << "\n";
        return os.str();
    }
    return document("metric", &map, serialize::encode(r));
}

std::string cmd_classify(const Config& c, const Budget& budget)
{
    auto map = pillow::make_map(parse_matrix(c.matrix));
    std::string f = format_or(c, "json");
    reject_svg(f);
    auto v = classify::lattes_verdict(map, c.n_max, budget);
    if (f == "csv")
        return serialize::csv(v);
    if (f == "text") {
        std::ostringstream os;
        os << "verdict=" << classify::to_string(v.verdict) << " evidence=" << classify::to_string(v.evidence)
           << " consistent=" << boolstr(v.consistent) << "\n";
        for (const auto& t : v.empirical)
            os << "n=" << t.n << " dn=" << t.dn << " ratio=" << json(t.ratio_f64).dump() << "\n";
        return os.str();
    }
    return document("classify", &map, serialize::encode(v));
}

std::string cmd_render(const Config& c, const Budget& budget)
{
    auto map = pillow::make_map(parse_matrix(c.matrix));
    std::string f = format_or(c, "svg");
    if (f != "svg")
        throw ValidationError("render writes svg only");
    auto [a, b] = parse_levels(c.levels);
    if (a != b)
        throw ValidationError("render takes a single level");
    render::SvgOptions opt;
    opt.portrait = c.vertical;
    opt.budget = budget;
    return render::render_svg(map, a, opt).text;
}

void emit(const Config& c, const std::string& text, std::ostream& out)
{
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file)
        throw ValidationError("cannot write '" + c.out + "'");
    file << text;
}

std::string one_line(std::string s)
{
    for (char& ch : s)
        if (ch == '\n' || ch == '\r')
            ch = ' ';
    return s;
}

} // namespace

Budget parse_budget(const std::string& text)
{
    Budget b;
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        b.cells = b.frontier = parse_u64(text, "budget");
    } else {
        b.cells = parse_u64(text.substr(0, comma), "budget");
        b.frontier = parse_u64(text.substr(comma + 1), "budget");
    }
    if (b.cells == 0 || b.frontier == 0)
        throw ValidationError("budgets must be positive");
    return b;
}

Budget budget_from_env()
{
    const char* env = std::getenv("PILLOW_BUDGET");
    return env ? parse_budget(env) : Budget{};
}

std::pair<unsigned, unsigned> parse_levels(const std::string& text)
{
    auto dots = text.find("..");
    std::uint64_t a, b;
    if (dots == std::string::npos) {
        a = b = parse_u64(text, "level");
    } else {
        a = parse_u64(text.substr(0, dots), "level");
        b = parse_u64(text.substr(dots + 2), "level");
    }
    if (a > b || b > 4096)
        throw ValidationError("malformed level range '" + text + "'");
    return {static_cast<unsigned>(a), static_cast<unsigned>(b)};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Combinatorial invariants of Lattes-type maps on the (2,2,2,2) pillow", "pillow"};
    app.require_subcommand(1);
    Config c;

    auto add_common = [&](CLI::App* sub, bool with_matrix) {
        if (with_matrix)
            sub->add_option("--matrix", c.matrix, "row-major a,b,c,d")->required();
        sub->add_option("--format", c.format, "json | csv | text | svg");
        sub->add_option("--out", c.out, "output file (default: stdout)");
    };
    auto* cells = app.add_subcommand("cells", "vertex/edge/tile counts and the Euler check");
    add_common(cells, true);
    cells->add_option("--levels", c.levels, "N or A..B");
    auto* dn = app.add_subcommand("dn", "D_n with its norm bounds");
    add_common(dn, true);
    dn->add_option("--levels", c.levels, "N or A..B");
    dn->add_option("--method", c.method, "planar | folded | both");
    dn->add_option("--edges", c.edges, "closed | open (folded method)");
    auto* lambda0 = app.add_subcommand("lambda0", "D_n^(1/n) against the smallest eigenvalue modulus");
    add_common(lambda0, true);
    lambda0->add_option("--n-max", c.n_max, "deepest level");
    lambda0->add_option("--tolerance", c.tolerance, "allowed final error");
    auto* menger = app.add_subcommand("menger", "disjoint-path verification (monomial matrices)");
    add_common(menger, true);
    menger->add_option("--levels", c.levels, "N or A..B");
    auto* orb = app.add_subcommand("orbifold", "minimal orbifold weights of a portrait");
    add_common(orb, false);
    orb->add_option("--portrait", c.portrait, "portrait JSON file, or builtin:pillow|power|chain")->required();
    auto* metric = app.add_subcommand("metric", "finite-level visual metric report");
    add_common(metric, true);
    metric->add_option("--samples", c.samples, "JSON file {\"points\":[[\"x\",\"y\"],...]}");
    metric->add_option("--window", c.window, "levels past m per pair");
    metric->add_option("--n-cap", c.n_cap, "deepest level scanned for m and m'");
    auto* cls = app.add_subcommand("classify", "Lattes verdict");
    add_common(cls, true);
    cls->add_option("--n-max", c.n_max, "deepest level of the empirical window");
    auto* render = app.add_subcommand("render", "SVG of one level");
    add_common(render, true);
    render->add_option("--levels", c.levels, "N");
    render->add_flag("--vertical", c.vertical, "use the [0,1] x [0,2] window");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return 1;
    }

    try {
        Budget budget = budget_from_env();
        std::string text;
        if (cells->parsed())
            text = cmd_cells(c, budget);
        else if (dn->parsed())
            text = cmd_dn(c, budget);
        else if (lambda0->parsed())
            text = cmd_lambda0(c, budget);
        else if (menger->parsed())
            text = cmd_menger(c, budget);
        else if (orb->parsed())
            text = cmd_orbifold(c);
        else if (metric->parsed())
            text = cmd_metric(c, budget);
        else if (cls->parsed())
            text = cmd_classify(c, budget);
        else
            text = cmd_render(c, budget);
        emit(c, text, out);
        return 0;
    } catch (const BudgetExceeded& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << one_line(e.what()) << "\n";
        return 1;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k)
        args.emplace_back(argv[k]);
    return run(args, out, err);
}

} // namespace lattes::cli
