#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coamoeba/cli.hpp"

using namespace coamoeba;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "coamoeba-cli-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string write_file(const std::string& name, const std::string& content) {
    const fs::path p = scratch(name);
    std::ofstream(p) << content;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string l; std::getline(ss, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("analyze reports") {
    SUBCASE("pair of pants") {
        const auto r = run({"analyze", data("pair_of_pants.json")});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["homology"]["betti"] == nlohmann::json({1, 2, 0}));
        CHECK(j["defect"] == 0);
        CHECK(j["galois_maximal_coamoeba"] == true);
        CHECK(j["galois_maximal_CX_condition"] == "conditional-on-conjecture-1.1");
        CHECK(j["partition"]["I01"] == nlohmann::json({1, 2}));
    }
    SUBCASE("sum of squares") {
        const auto j = nlohmann::json::parse(run({"analyze", "--json", data("sum_of_squares.json")}).out);
        CHECK(j["defect"] == 2);
        CHECK(j["galois_maximal_coamoeba"] == false);
        CHECK(j["real_part"]["component_count"] == 0);
    }
    SUBCASE("parabola") {
        const auto j = nlohmann::json::parse(run({"analyze", data("parabola.json")}).out);
        CHECK(j["defect"] == 0);
        CHECK(j["model"]["n"].get<int>() - j["rank2_A"].get<int>() == 1);
    }
    SUBCASE("text output") {
        const auto r = run({"analyze", "--text", data("unit_circle.json")});
        CHECK(r.code == 0);
        CHECK(r.out.find("real components        4") != std::string::npos);
    }
    SUBCASE("forced origin gives the same verdict") {
        const auto a = nlohmann::json::parse(run({"analyze", data("skew.json")}).out);
        const auto b = nlohmann::json::parse(run({"analyze", "--origin", "3", data("skew.json")}).out);
        CHECK(a["homology"] == b["homology"]);
        CHECK(a["defect"] == b["defect"]);
        CHECK(a["real_part"] == b["real_part"]);
    }
    SUBCASE("output is byte-stable") {
        CHECK(run({"analyze", data("skew.json")}).out == run({"analyze", data("skew.json")}).out);
    }
}

TEST_CASE("invalid input exits with code 2") {
    CHECK(run({"analyze", write_file("two_terms.json", R"({"n":2,"terms":[{"exponent":[0,0],"coefficient":"1"},
        {"exponent":[1,0],"coefficient":"1"}]})")})
              .code == 2);
    const auto dup = run({"analyze", write_file("dup.json", R"({"n":1,"terms":[{"exponent":[1],"coefficient":"1"},
        {"exponent":[1],"coefficient":"2"}]})")});
    CHECK(dup.code == 2);
    CHECK(dup.err.find("DuplicateExponent") != std::string::npos);
    CHECK(run({"analyze", write_file("garbage.json", "{not json")}).code == 2);
    CHECK(run({"analyze", scratch("missing.json").string()}).code == 2);
    CHECK(run({"analyze", "--bogus", data("skew.json")}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"analyze", "--origin", "9", data("skew.json")}).code == 2);
}

TEST_CASE("help exits cleanly") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("analyze") != std::string::npos);
}

TEST_CASE("verify") {
    SUBCASE("cubical oracle agrees") {
        const auto r = run({"verify", "--resolution", "16", data("pair_of_pants.json")});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["ok"] == true);
        CHECK(j["resolution"] == nlohmann::json({16, 16}));
        CHECK(j["cubical_betti"] == nlohmann::json({1, 2, 0}));
        CHECK_FALSE(j.contains("timings"));
    }
    SUBCASE("per-axis resolution") {
        const auto r = run({"verify", "--resolution", "12,18", "--samples", "50", data("skew.json")});
        CHECK(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["resolution"] == nlohmann::json({12, 18}));
    }
    SUBCASE("incompatible resolution") {
        CHECK(run({"verify", "--resolution", "12,16", data("skew.json")}).code == 2);
        CHECK(run({"verify", "--resolution", "x", data("skew.json")}).code == 2);
    }
    SUBCASE("four variables need the algebraic-only mode") {
        CHECK(run({"verify", data("four_variables.json")}).code == 2);
        const auto r = run({"verify", "--skip-cubical", "--samples", "200", data("four_variables.json")});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["cubical_ran"] == false);
        CHECK(j["membership_samples"] == 200);
    }
    SUBCASE("timings on request") {
        const auto r = run({"verify", "--timings", "--samples", "10", data("pair_of_pants.json")});
        CHECK(nlohmann::json::parse(r.out).contains("timings"));
    }
    SUBCASE("shared fields agree with analyze") {
        const auto a = nlohmann::json::parse(run({"analyze", data("unit_circle.json")}).out);
        const auto v = nlohmann::json::parse(run({"verify", "--samples", "50", data("unit_circle.json")}).out);
        CHECK(a["homology"]["betti"] == v["closed_betti"]);
        CHECK(a["rank_closed"] == v["rank_closed"]);
        CHECK(a["rank_assembled"] == v["rank_assembled"]);
    }
}

TEST_CASE("render") {
    SUBCASE("single hexagon") {
        const auto out = scratch("pants.svg");
        const auto r = run({"render", data("pair_of_pants.json"), "-o", out.string()});
        REQUIRE(r.code == 0);
        const std::string svg = slurp(out);
        CHECK(svg.rfind("<?xml", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(svg.find("href") == std::string::npos);
        CHECK(svg.find("<polygon") != std::string::npos);
    }
    SUBCASE("markers and determinism") {
        const auto a = run({"render", "--show-centers", "--show-conjugation", data("unit_circle.json")});
        const auto b = run({"render", "--show-centers", "--show-conjugation", data("unit_circle.json")});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("<marker") != std::string::npos);
        std::size_t centers = 0;
        for (auto pos = a.out.find("r=\"3\""); pos != std::string::npos; pos = a.out.find("r=\"3\"", pos + 1))
            ++centers;
        CHECK(centers == 4);
    }
    SUBCASE("only planar input") {
        CHECK(run({"render", data("four_variables.json")}).code == 2);
    }
}

TEST_CASE("batch") {
    SUBCASE("worked corpus") {
        const auto out = scratch("worked.tsv");
        const auto r = run({"batch", data("worked.jsonl"), "-o", out.string(), "--threads", "3"});
        REQUIRE(r.code == 0);
        const auto rows = lines_of(slurp(out));
        REQUIRE(rows.size() == 4);
        CHECK(rows[0] == "id\tn\tD\tI00\trank\tcomponents\tdefect\tgalois_maximal_coamoeba\tgalois_maximal_CX\terror");
        CHECK(rows[1] == "pants\t2\t1,1\t0\t0\t3\t0\ttrue\ttrue\t");
        CHECK(rows[2] == "squares\t2\t2,2\t2\t2\t0\t2\tfalse\tfalse\t");
        CHECK(rows[3] == "parabola\t2\t1,2\t1\t1\t2\t0\ttrue\ttrue\t");
        const auto serial = run({"batch", data("worked.jsonl"), "--threads", "1"});
        CHECK(serial.out == slurp(out));
    }
    SUBCASE("empty corpus") {
        const auto r = run({"batch", write_file("empty.jsonl", "")});
        CHECK(r.code == 0);
        CHECK(lines_of(r.out).size() == 1);
    }
    SUBCASE("one malformed line") {
        const auto corpus = slurp(data("worked.jsonl")) + "{\"n\": 1}\n";
        const auto r = run({"batch", write_file("mixed.jsonl", corpus)});
        CHECK(r.code == 0);
        const auto rows = lines_of(r.out);
        REQUIRE(rows.size() == 5);
        CHECK(rows[4].rfind("line-4\t", 0) == 0);
        CHECK(rows[4].find("InvalidJson") != std::string::npos);
    }
    SUBCASE("every line malformed") {
        CHECK(run({"batch", write_file("bad.jsonl", "[]\n{}\n")}).code == 2);
    }
}

TEST_CASE("snf") {
    const auto r = run({"snf", "[[2,1],[1,2]]"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["D"] == nlohmann::json({1, 3}));
    CHECK(j.contains("G"));
    CHECK(j.contains("H"));
    CHECK(run({"snf", "[[1,2],[2,4]]"}).code == 2);
    CHECK(run({"snf", "[[1,2,3],[2,4,5]]"}).code == 2);
    CHECK(run({"snf", write_file("m.json", "[[0,1],[1,0]]")}).code == 0);
}
