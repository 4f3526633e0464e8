#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sextic/classify.hpp"
#include "sextic/errors.hpp"
#include "sextic/json_io.hpp"

using namespace sextic;
namespace fs = std::filesystem;

#ifndef SEXTIC_CLI_PATH
#define SEXTIC_CLI_PATH "./sextic"
#endif

namespace {

int run_cli(const std::string& args, std::string* out = nullptr) {
    std::string cmd = std::string(SEXTIC_CLI_PATH) + " " + args;
    std::string tmp = (fs::temp_directory_path() / "sextic_cli_out.txt").string();
    cmd += " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    if (out) {
        std::ifstream f(tmp);
        std::stringstream ss;
        ss << f.rdbuf();
        *out = ss.str();
    }
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("JSON round trip of classification documents") {
    ADEType r = parse_ade("A3+2A7");
    auto types = lattice_types(r);
    std::string doc = classification_to_json(r, types);
    auto back = classification_from_json(doc, r);
    REQUIRE(back.has_value());
    REQUIRE(back->size() == types.size());
    for (size_t i = 0; i < types.size(); ++i) {
        CHECK((*back)[i].glue_tuples == types[i].glue_tuples);
        CHECK((*back)[i].g_structure == types[i].g_structure);
        CHECK((*back)[i].profile.z1 == types[i].profile.z1);
        CHECK((*back)[i].profile.z2 == types[i].profile.z2);
        CHECK((*back)[i].profile.degs == types[i].profile.degs);
        CHECK((*back)[i].fingerprint == types[i].fingerprint);
    }
    // serialization is deterministic (cache hits byte-identical)
    CHECK(doc == classification_to_json(r, *back));
}

TEST_CASE("single lattice-datum documents parse with marked classes") {
    // glue: the order-4 subgroup in dual coordinates 2*t3^dual + 2*e7^dual + 2*e7'^dual
    std::string doc2 = R"({
        "ade": "A3+2A7",
        "glue": [["0","0","2","0","0","0","0","0","0","2","0","0","0","0","0","0","2","0"]]
    })";
    auto parsed = lattice_data_from_json(doc2);
    CHECK(parsed.type.glue_order() == 4);
    CHECK(!parsed.marked.has_value());

    std::string doc3 = R"({
        "ade": "A3+2A7",
        "mu": 17,
        "glue": [["0","0","2","0","0","0","0","0","0","2","0","0","0","0","0","0","2","0"]],
        "marked": [["0","1","0","0","1","0","0","0","0","0","0","1","0","0","0","0","0","2"],
                   ["0","1","0","0","0","0","0","0","1","0","0","0","0","0","0","1","0","2"]]
    })";
    auto with_marked = lattice_data_from_json(doc3);
    REQUIRE(with_marked.marked.has_value());
    CHECK(with_marked.marked->plus[17] == 2);
}

TEST_CASE("schema violations raise parse errors") {
    CHECK_THROWS_AS(lattice_data_from_json("{"), parse_error);
    CHECK_THROWS_AS(lattice_data_from_json(R"({"mu": 3})"), parse_error);
    CHECK_THROWS_AS(lattice_data_from_json(R"({"ade": "D3"})"), parse_error);
    CHECK_THROWS_AS(lattice_data_from_json(R"({"ade": "A1", "glue": [["1/2","0"]]})"), parse_error);
    CHECK_THROWS_AS(lattice_data_from_json(R"({"ade": "A1", "glue": [["1","0","0"]]})"), parse_error);
}

TEST_CASE("cli: classify, criterion, exit codes") {
    std::string out;
    CHECK(run_cli("classify A3+2A7 --format csv", &out) == 0);
    CHECK(out.find("A3+2A7,17,0,1") != std::string::npos);
    CHECK(out.find("A3+2A7,17,3,8") != std::string::npos);

    CHECK(run_cli("classify D3", &out) == 2);  // parse error
    CHECK(run_cli("criterion --deg 2 --t 0 --sing 6A2:1", &out) == 0);
    CHECK(out.find("Equality") != std::string::npos);
    CHECK(run_cli("criterion --deg 1 --t 3", &out) == 0);
    CHECK(out.find("StrictInequality") != std::string::npos);
    CHECK(run_cli("criterion --deg 2 --t 0", &out) == 0);
    CHECK(out.find("Infeasible") != std::string::npos);
}

TEST_CASE("cli: cache reuse is byte-identical") {
    fs::path dir = fs::temp_directory_path() / "sextic_cache_test";
    fs::remove_all(dir);
    std::string out1, out2;
    std::string base = "--cache-dir " + dir.string() + " classify 6A2 --format json";
    CHECK(run_cli(base, &out1) == 0);
    CHECK(run_cli(base, &out2) == 0);
    CHECK(out1 == out2);
    CHECK(fs::exists(dir / "6A2.json"));
    fs::remove_all(dir);
}

TEST_CASE("cli: specialize between files, including the no-embedding exit") {
    fs::path dir = fs::temp_directory_path() / "sextic_spec_test";
    fs::create_directories(dir);
    // identical data: identity embedding exists
    std::string small = R"({"ade": "A2", "glue": []})";
    {
        std::ofstream f(dir / "a2.json");
        f << small;
    }
    std::string out;
    CHECK(run_cli("specialize " + (dir / "a2.json").string() + " " + (dir / "a2.json").string(), &out) == 0);
    CHECK(out.find("embedding") != std::string::npos);
    // incompatible ranks: none found, nonzero exit
    std::string big = R"({"ade": "A3", "glue": []})";
    {
        std::ofstream f(dir / "a3.json");
        f << big;
    }
    CHECK(run_cli("specialize " + (dir / "a3.json").string() + " " + (dir / "a2.json").string(), &out) == 1);
    fs::remove_all(dir);
}
