#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sbm/cli.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = sbm::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("walks order 4 as json") {
  auto r = run({"walks", "--order", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["order"] == 4);
  CHECK(j.contains("version"));
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["word"] == "1 1 1 1");
  CHECK(j["terms"][0]["multiplicity"] == 1);
  CHECK(j["terms"][0]["h"] == 1);
  CHECK(j["terms"][1]["word"] == "1 1 2 2");
  CHECK(j["terms"][1]["multiplicity"] == 2);
  CHECK(j["terms"][1]["h"] == 2);
}

TEST_CASE("walks as csv") {
  auto r = run({"walks", "--order", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("word,multiplicity,h") == 0);
  CHECK(r.out.find("\"1 1 2 2\",2,2") != std::string::npos);
}

TEST_CASE("planar moments order 8") {
  auto r = run({"moments", "--model", "planar", "--order", "8"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["order"] == 8);
  CHECK(j["z_coeffs"] == json::array({14, 62, 56, 14}));
}

TEST_CASE("planar text output mirrors polynomial notation") {
  auto r = run({"moments", "--model", "planar", "--order", "8", "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "mu_8 = 14 Z + 62 Z^2 + 56 Z^3 + 14 Z^4\n");
}

TEST_CASE("goe-finite moments order 4") {
  auto r = run({"moments", "--model", "goe-finite", "--order", "4"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["order"] == 4);
  CHECK(j["sigma_power"] == 4);
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["z_power"] == 1);
  CHECK(j["terms"][0]["d_poly"] == json::array({5, 5, 2}));
  CHECK(j["terms"][1]["z_power"] == 2);
  CHECK(j["terms"][1]["d_poly"] == json::array({2, 4, 2}));
}

TEST_CASE("closed-form models") {
  auto r1 = run({"moments", "--model", "rank1", "--order", "6"});
  REQUIRE(r1.code == 0);
  json j1 = json::parse(r1.out);
  CHECK(j1["moments"][2]["order"] == 6);
  CHECK(j1["moments"][2]["poly"] == json::array({0, 1, 6, 5}));

  auto r2 = run({"moments", "--model", "semicircle-nc", "--order", "12"});
  REQUIRE(r2.code == 0);
  json j2 = json::parse(r2.out);
  CHECK(j2["moments"][5]["order"] == 12);
  CHECK(j2["moments"][5]["poly"] == json::array({132, 990, 2420, 2420, 990, 132}));
}

TEST_CASE("transform round trip through files") {
  const char* path = "cli_series_input.json";
  {
    std::ofstream f(path);
    f << R"({"coeffs":[{"power":1,"poly":[1]},{"power":2,"poly":[1]},{"power":3,"poly":[1]},)"
         R"({"power":4,"poly":[1]},{"power":5,"poly":[1]},{"power":6,"poly":[1]}]})";
  }
  auto r = run({"transform", "--direction", "c2m", "--input", path});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  // all-ones cumulants -> Catalan moments 1 2 5 14 42 132
  std::map<int, long long> got;
  for (const auto& e : j["coeffs"]) got[e["power"].get<int>()] = e["poly"][0].get<long long>();
  CHECK(got == std::map<int, long long>{{1, 1}, {2, 2}, {3, 5}, {4, 14}, {5, 42}, {6, 132}});

  const char* out2 = "cli_series_output.json";
  {
    std::ofstream f(out2);
    f << r.out;
  }
  auto rb = run({"transform", "--direction", "m2c", "--input", out2});
  REQUIRE(rb.code == 0);
  json jb = json::parse(rb.out);
  for (const auto& e : jb["coeffs"]) CHECK(e["poly"] == json::array({1}));
  std::remove(path);
  std::remove(out2);
}

TEST_CASE("simulate emits a schema-stable report") {
  auto r = run({"simulate", "--n", "24", "--d", "2", "--z", "3", "--sigma2", "0.5", "--order", "4",
                "--samples", "8", "--seed", "9"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["config"]["n"] == 24);
  CHECK(j["config"]["sigma2"] == 0.5);
  REQUIRE(j["estimates"].size() == 2);
  for (const auto& e : j["estimates"]) {
    CHECK(e.contains("order"));
    CHECK(e.contains("mean"));
    CHECK(e.contains("stderr"));
    CHECK(e.contains("analytic"));
    CHECK(e.contains("z"));
  }
  CHECK(j["estimates"][0]["analytic"] == doctest::Approx(4.5));
}

TEST_CASE("validation failures exit with code 1 and one-line diagnostics") {
  CHECK(run({"walks", "--order", "3"}).code == 1);
  CHECK(run({"walks"}).code == 1);
  CHECK(run({"moments", "--model", "nonsense", "--order", "4"}).code == 1);
  CHECK(run({"transform", "--direction", "m2c", "--input", "missing_file.json"}).code == 1);
  CHECK(run({"simulate", "--n", "24", "--d", "2", "--z", "100"}).code == 1);
  auto r = run({"walks", "--order", "3"});
  CHECK(r.err.find('\n') == r.err.size() - 1);
}

TEST_CASE("unknown flags are rejected") {
  CHECK(run({"walks", "--order", "4", "--bogus"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
}
