#include "doctest.h"

#include "lattes/cli.hpp"
#include "lattes/errors.hpp"
#include "lattes/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lattes;
using serialize::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t occurrences(const std::string& text, const std::string& needle)
{
    std::size_t k = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++k;
    return k;
}

std::string temp_file(const std::string& name, const std::string& body)
{
    auto path = std::filesystem::temp_directory_path() / ("pillow_test_" + name);
    std::ofstream(path) << body;
    return path.string();
}

template <typename T>
void round_trips(const json& j)
{
    CHECK(serialize::encode(serialize::decode_as<T>(j)) == j);
}

} // namespace

TEST_CASE("cells")
{
    auto r = run({"cells", "--matrix", "2,0,0,2", "--levels", "0..2"});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["command"] == "cells");
    REQUIRE(doc["result"].size() == 3);
    CHECK(doc["result"][0]["vertices"] == 4);
    CHECK(doc["result"][0]["edges"] == 4);
    CHECK(doc["result"][0]["tiles"] == 2);
    CHECK(doc["result"][2]["tiles"] == 32);
    for (const auto& row : doc["result"])
        round_trips<serialize::CellsReport>(row);
    auto csv = run({"cells", "--matrix", "2,0,0,3", "--levels", "1", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(occurrences(csv.out, "\n") == 2);
    CHECK(csv.out.find("14,24,12") != std::string::npos);
}

TEST_CASE("dn")
{
    auto r = run({"dn", "--matrix", "2,1,0,2", "--levels", "0..8", "--method", "planar"});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    const int want[] = {1, 2, 2, 4, 6, 10, 16, 29, 52};
    for (int n = 0; n <= 8; ++n) {
        CHECK(doc["result"][n]["dn"] == want[n]);
        round_trips<expansion::DnReport>(doc["result"][n]);
    }
    auto both = run({"dn", "--matrix", "1,-2,1,1", "--levels", "3", "--method", "both", "--format", "csv"});
    CHECK(both.code == 0);
    auto open = run({"dn", "--matrix", "1,-2,1,1", "--levels", "2", "--method", "folded", "--edges", "open"});
    CHECK(open.code == 0);
    CHECK(run({"dn", "--matrix", "2,0,0,2", "--method", "sideways"}).code == 1);
    CHECK(run({"dn", "--matrix", "2,0,0,2", "--edges", "ajar"}).code == 1);
}

TEST_CASE("lambda0, menger, classify, metric")
{
    auto l = run({"lambda0", "--matrix", "1,-2,1,1", "--n-max", "6"});
    REQUIRE(l.code == 0);
    round_trips<expansion::Lambda0Report>(json::parse(l.out)["result"]);

    auto m = run({"menger", "--matrix", "2,0,0,2", "--levels", "1..2"});
    REQUIRE(m.code == 0);
    auto mj = json::parse(m.out)["result"];
    CHECK(mj[1]["max_disjoint_paths"] == 4);
    round_trips<expansion::MengerReport>(mj[0]);
    CHECK(run({"menger", "--matrix", "1,-2,1,1", "--levels", "1"}).code == 1);

    auto c = run({"classify", "--matrix", "2,0,0,3", "--n-max", "5"});
    REQUIRE(c.code == 0);
    auto cj = json::parse(c.out)["result"];
    CHECK(cj["verdict"] == "lattes_type_non_lattes");
    round_trips<classify::ClassificationVerdict>(cj);

    auto samples = temp_file("samples.json", R"({"points":[["1/3","1/5"],["5/4","2/3"],["1/2","7/9"]]})");
    auto v = run({"metric", "--matrix", "2,0,0,2", "--samples", samples, "--window", "3"});
    REQUIRE(v.code == 0);
    auto vj = json::parse(v.out)["result"];
    CHECK(vj["pairs"].size() == 2);
    round_trips<metrics::VisualReport>(vj);
    CHECK(run({"metric", "--matrix", "2,0,0,2", "--format", "csv", "--window", "2"}).code == 0);
    std::filesystem::remove(samples);
}

TEST_CASE("orbifold")
{
    auto r = run({"orbifold", "--portrait", "builtin:chain"});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK_FALSE(doc.contains("matrix"));
    round_trips<orbifold::Portrait>(doc["result"]["portrait"]);
    round_trips<orbifold::OrbifoldData>(doc["result"]["orbifold"]);
    CHECK(doc["result"]["orbifold"]["chi"] == "0");

    auto file = temp_file("portrait.json",
                          R"({"nodes":[{"id":"a","image":"b","degree":3},{"id":"b","image":"b","degree":1},)"
                          R"({"id":"c","image":"c","degree":1},{"id":"d","image":"c","degree":3},)"
                          R"({"id":"e","image":"g","degree":3},{"id":"g","image":"g","degree":1}]})");
    auto f = run({"orbifold", "--portrait", file});
    REQUIRE(f.code == 0);
    CHECK(json::parse(f.out)["result"]["orbifold"]["parabolic_type"] == "(3,3,3)");
    CHECK(run({"orbifold", "--portrait", file, "--format", "csv"}).code == 0);
    auto bad = temp_file("bad.json", R"({"nodes":[{"id":"a","image":"zzz","degree":1}]})");
    auto b = run({"orbifold", "--portrait", bad});
    CHECK(b.code == 1);
    CHECK(b.err.rfind("error: ", 0) == 0);
    CHECK(occurrences(b.err, "\n") == 1);
    CHECK(run({"orbifold", "--portrait", "builtin:nothing"}).code == 1);
    std::filesystem::remove(file);
    std::filesystem::remove(bad);
}

TEST_CASE("render")
{
    auto r = run({"render", "--matrix", "2,0,0,2", "--levels", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("<svg", 0) == 0);
    CHECK(occurrences(r.out, "data-i=") == 8);
    CHECK(occurrences(run({"render", "--matrix", "2,0,0,3", "--levels", "1"}).out, "data-i=") == 12);
    CHECK(occurrences(run({"render", "--matrix", "2,0,0,2", "--levels", "0"}).out, "<circle") == 4);
    auto tall = run({"render", "--matrix", "1,-2,1,1", "--levels", "2", "--vertical"});
    CHECK(tall.code == 0);
    CHECK(run({"render", "--matrix", "2,0,0,2", "--levels", "1..2"}).code == 1);
    CHECK(run({"render", "--matrix", "2,0,0,2", "--format", "json"}).code == 1);
    CHECK(run({"cells", "--matrix", "2,0,0,2", "--format", "svg"}).code == 1);
}

TEST_CASE("errors and exit codes")
{
    CHECK(run({}).code == 1);
    CHECK(run({"cells"}).code == 1);
    CHECK(run({"cells", "--matrix", "1,2,3"}).code == 1);
    CHECK(run({"cells", "--matrix", "1,0,0,1"}).code == 1);
    CHECK(run({"cells", "--matrix", "1,0,0,2"}).code == 1);
    CHECK(run({"cells", "--matrix", "2,0,0,2", "--bogus"}).code == 1);
    CHECK(run({"cells", "--matrix", "2,0,0,2", "--levels", "3..1"}).code == 1);
    CHECK(run({"cells", "--matrix", "2,0,0,2", "--format", "xml"}).code == 1);
    auto big = run({"cells", "--matrix", "2,0,0,2", "--levels", "40"});
    CHECK(big.code == 2);
    CHECK(big.err.rfind("error: ", 0) == 0);

    ::setenv("PILLOW_BUDGET", "50", 1);
    CHECK(run({"dn", "--matrix", "2,0,0,2", "--levels", "8"}).code == 2);
    CHECK(run({"dn", "--matrix", "2,0,0,2", "--levels", "1"}).code == 0);
    ::setenv("PILLOW_BUDGET", "nonsense", 1);
    CHECK(run({"dn", "--matrix", "2,0,0,2", "--levels", "1"}).code == 1);
    ::unsetenv("PILLOW_BUDGET");

    CHECK(cli::parse_budget("12").cells == 12);
    CHECK(cli::parse_budget("3,4").frontier == 4);
    CHECK_THROWS_AS(cli::parse_budget("0"), ValidationError);
    CHECK_THROWS_AS(cli::parse_budget("1,"), ValidationError);
    CHECK(cli::parse_levels("2..5") == std::pair<unsigned, unsigned>{2, 5});
    CHECK_THROWS_AS(cli::parse_levels("a"), ValidationError);
}

TEST_CASE("output file")
{
    auto path = (std::filesystem::temp_directory_path() / "pillow_test_out.json").string();
    auto r = run({"cells", "--matrix", "2,0,0,2", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == run({"cells", "--matrix", "2,0,0,2"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("repeated runs are byte-identical")
{
    const std::vector<std::vector<std::string>> commands{
        {"cells", "--matrix", "3,1,1,2", "--levels", "0..3"},
        {"dn", "--matrix", "1,-2,1,1", "--levels", "0..6", "--method", "both"},
        {"lambda0", "--matrix", "2,1,0,2", "--n-max", "6", "--format", "csv"},
        {"menger", "--matrix", "2,0,0,3", "--levels", "1"},
        {"orbifold", "--portrait", "builtin:pillow"},
        {"metric", "--matrix", "1,-2,1,1", "--window", "2", "--n-cap", "10"},
        {"classify", "--matrix", "2,1,0,2"},
        {"render", "--matrix", "1,-2,1,1", "--levels", "2"},
    };
    for (const auto& args : commands) {
        CAPTURE(args[0]);
        auto a = run(args);
        auto b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
}
