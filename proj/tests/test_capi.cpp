#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "eisencf.h"

using nlohmann::json;

namespace {

// Takes ownership of a returned string.
std::string take(char* p) {
    REQUIRE(p != nullptr);
    std::string s(p);
    cf_string_free(p);
    return s;
}

}  // namespace

TEST_CASE("arithmetic entry points") {
    char* out = nullptr;
    REQUIRE(cf_normalize("6/4-2/4r", &out) == CF_OK);
    CHECK(take(out) == "3/2-1/2r");
    REQUIRE(cf_floor_j("5/2", &out) == CF_OK);
    CHECK(take(out) == "(3,0)");
    int in = -1;
    REQUIRE(cf_in_u("1/2-1/2r", &in) == CF_OK);
    CHECK(in == 1);
    REQUIRE(cf_in_u("1", &in) == CF_OK);
    CHECK(in == 0);

    CHECK(cf_normalize("1/0", &out) == CF_ERR_PARSE);
    CHECK(std::string(cf_last_error()).size() > 0);
    CHECK(cf_normalize(nullptr, &out) == CF_ERR_CONFIG);
    CHECK(cf_in_u("1", nullptr) == CF_ERR_CONFIG);
    REQUIRE(cf_in_u("0", &in) == CF_OK);
    CHECK(std::string(cf_last_error()).empty());
    cf_string_free(nullptr);
}

TEST_CASE("expansion handle") {
    cf_expansion* e = nullptr;
    REQUIRE(cf_expand("1/4+1/4r", 9, &e) == CF_OK);
    CHECK(cf_expansion_length(e) == 9);
    CHECK(std::string(cf_expansion_terminal(e)) == "SpecialPeriodic");
    char* out = nullptr;
    REQUIRE(cf_expansion_digit(e, 0, &out) == CF_OK);
    CHECK(take(out) == "(2,-1)");
    CHECK(cf_expansion_digit(e, 9, &out) == CF_ERR_CONFIG);
    REQUIRE(cf_expansion_json(e, &out) == CF_OK);
    json j = json::parse(take(out));
    CHECK(j["digits"].size() == 9);
    CHECK(j["digits"][0] == json({{"a", 2}, {"b", -1}}));
    CHECK(j["convergents"][1]["q"] == json({{"a", 2}, {"b", -1}}));
    CHECK(j["terminal"] == "SpecialPeriodic");
    CHECK(j["special_point"] == "-zeta");
    CHECK(j["entry_index"] == 1);
    REQUIRE(cf_expansion_csv(e, &out) == CF_OK);
    std::string csv = take(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);  // header, n = 0, one row per digit
    CHECK(csv.find("\n1,\"(2,-1)\",") != std::string::npos);
    cf_expansion_free(e);

    REQUIRE(cf_expand("3/10+1/7r", 40, &e) == CF_OK);
    CHECK(std::string(cf_expansion_terminal(e)) == "TerminatedAtZero");
    CHECK(cf_expansion_length(e) < 40);
    cf_expansion_free(e);

    e = nullptr;
    CHECK(cf_expand("1", 10, &e) == CF_ERR_DOMAIN);
    CHECK(e == nullptr);
    CHECK(std::string(cf_last_error()).find("U") != std::string::npos);
    CHECK(cf_expand("x", 10, &e) == CF_ERR_PARSE);
    CHECK(cf_expand("0", 0, &e) == CF_ERR_CONFIG);
    CHECK(cf_expansion_length(nullptr) == 0);
    CHECK(std::string(cf_expansion_terminal(nullptr)).empty());
    cf_expansion_free(nullptr);
}

TEST_CASE("verification entry point") {
    cf_verify_config c;
    cf_verify_config_default(&c);
    CHECK(c.samples == 10000);
    CHECK(c.seed == 42);
    c.samples = 300;
    char* out = nullptr;
    REQUIRE(cf_verify("inversions", &c, &out) == CF_OK);
    json j = json::parse(take(out));
    CHECK(j["verdict"] == "PASS");
    CHECK(j["checks"].size() == 1);
    CHECK_FALSE(j["checks"][0].contains("elapsed_s"));
    c.timing = 1;
    REQUIRE(cf_verify("special", &c, &out) == CF_OK);
    CHECK(json::parse(take(out))["checks"][0].contains("elapsed_s"));
    CHECK(cf_verify("bogus", &c, &out) == CF_ERR_CONFIG);
    c.samples = 0;
    CHECK(cf_verify("frs", &c, &out) == CF_ERR_CONFIG);
    CHECK(cf_verify("frs", nullptr, &out) == CF_ERR_CONFIG);
}

TEST_CASE("ergodic entry points") {
    cf_ergodic_config c;
    cf_ergodic_config_default(&c);
    CHECK(c.orbits == 64);
    CHECK(c.length == 20000);
    c.samples = 2000;
    char* out = nullptr;
    REQUIRE(cf_density(8, &c, &out) == CF_OK);
    std::string csv = take(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= 8);
    CHECK(cf_density(0, &c, &out) == CF_ERR_CONFIG);
    c.tol = 1.0;
    CHECK(cf_density(8, &c, &out) == CF_ERR_CONFIG);
    CHECK(cf_levy(&c, &out) == CF_ERR_CONFIG);
    cf_ergodic_config_default(&c);
    c.length = 5;
    CHECK(cf_levy(&c, &out) == CF_ERR_CONFIG);
}

TEST_CASE("render writes the figures") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "eisencf_capi_render";
    fs::remove_all(dir);
    char* out = nullptr;
    REQUIRE(cf_render(dir.string().c_str(), &out) == CF_OK);
    json j = json::parse(take(out));
    REQUIRE(j["files"].size() == 5);
    for (const auto& f : j["files"]) CHECK(fs::file_size(f.get<std::string>()) > 100);

    fs::path blocker = dir / "plain_file";
    std::ofstream(blocker) << "x";
    CHECK(cf_render((blocker / "sub").string().c_str(), &out) == CF_ERR_IO);
    fs::remove_all(dir);
}
