#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qes/claims.hpp"
#include "qes/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = qes::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("timing");
  return j;
}

const std::string kEdge = R"({"n":2,"m":3,"a":{"1,2":1},"b":[0,0]})";

}  // namespace

TEST_CASE("cli: eval reports the normalized sum") {
  const auto r = run({"eval", "--poly", kEdge});
  REQUIRE(r.code == qes::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["norm"].get<double>() == doctest::Approx(0.8660254).epsilon(1e-7));
  CHECK(j["failed"] == false);
  CHECK(j["tool"] == "qes");
  CHECK(j["version"] == qes::kToolVersion);
  CHECK(j.contains("seed"));
  CHECK(j["config"]["command"] == "eval");
}

TEST_CASE("cli: verify m2 over a grid") {
  const auto r = run({"verify", "--claim", "m2", "--grid", "1..3x3,5,7"});
  REQUIRE(r.code == qes::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["failed"] == false);
  CHECK(j["result"]["claims"].size() == 1);
  CHECK(j["result"]["claims"][0]["passed"] == true);
}

TEST_CASE("cli: usage errors exit with 2") {
  CHECK(run({"search", "--n", "2", "--m", "4"}).code == qes::kExitUsage);
  CHECK(run({"eval", "--poly", "{not json"}).code == qes::kExitUsage);
  CHECK(run({"eval"}).code == qes::kExitUsage);
  CHECK(run({"frobnicate"}).code == qes::kExitUsage);
  CHECK(run({"verify", "--claim", "no-such-claim"}).code == qes::kExitUsage);
  CHECK(run({"moments", "--n", "2", "--m", "3", "--moment-order", "3"}).code == qes::kExitUsage);
  CHECK(run({"tail", "--n", "2", "--m", "3", "--gamma", "1.5"}).code == qes::kExitUsage);
  CHECK(run({"search", "--n", "6", "--m", "5", "--budget", "1000"}).code == qes::kExitUsage);
  CHECK(run({"decompose", "--poly", R"({"n":2,"m":5,"a":{},"b":[0,0]})"}).code == qes::kExitUsage);
}

TEST_CASE("cli: help and version exit with 0") {
  CHECK(run({"--help"}).code == qes::kExitOk);
  const auto v = run({"--version"});
  CHECK(v.code == qes::kExitOk);
  CHECK(v.out.find(qes::kToolVersion) != std::string::npos);
}

TEST_CASE("cli: reports are deterministic apart from timing") {
  const std::vector<std::vector<std::string>> cases = {
      {"search", "--n", "3", "--m", "5"},
      {"tail", "--n", "4", "--m", "5", "--samples", "200", "--seed", "9", "--gamma", "0.8"},
      {"verify", "--claim", "transforms", "--seed", "5"},
      {"spectrum", "--poly", kEdge},
  };
  for (const auto& args : cases) {
    const auto a = run(args);
    const auto again = run(args);
    REQUIRE(a.code == qes::kExitOk);
    CHECK(without_timing(nlohmann::json::parse(a.out)) == without_timing(nlohmann::json::parse(again.out)));

    // Thread count only shows up in the config echo.
    auto more = args;
    more.insert(more.end(), {"--threads", "3"});
    const auto b = run(more);
    REQUIRE(b.code == qes::kExitOk);
    auto ja = without_timing(nlohmann::json::parse(a.out));
    auto jb = without_timing(nlohmann::json::parse(b.out));
    ja.erase("config");
    jb.erase("config");
    CHECK(ja == jb);
  }
}

TEST_CASE("cli: exit code agrees with the failed flag") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "--claim", "m2-homogeneous"},
           {"verify", "--claim", "6"},
           {"search", "--n", "2", "--m", "7"},
           {"moments", "--n", "2", "--m", "5", "--moment-order", "6"},
       }) {
    const auto r = run(args);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(r.code == (j["failed"].get<bool>() ? qes::kExitClaimFailed : qes::kExitOk));
  }
}

TEST_CASE("cli: CSV output and --output") {
  const auto csv = run({"search", "--grid", "1..2x3", "--format", "csv"});
  REQUIRE(csv.code == qes::kExitOk);
  std::istringstream lines(csv.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,m,max,conjectured,second,gap_bound,exhaustive");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) rows += line.empty() ? 0 : 1;
  CHECK(rows == 2);

  const auto path = std::filesystem::temp_directory_path() / "qes_cli_test_report.json";
  const auto r = run({"eval", "--poly", kEdge, "--output", path.string()});
  CHECK(r.code == qes::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["result"]["norm"].get<double>() == doctest::Approx(0.8660254).epsilon(1e-7));
  std::filesystem::remove(path);
}

TEST_CASE("cli: decompose with an explicit pairing") {
  const auto r = run({"decompose", "--poly", kEdge, "--sigma", "2,1"});
  REQUIRE(r.code == qes::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["failed"] == false);
  CHECK(run({"decompose", "--poly", kEdge, "--sigma", "1,1"}).code == qes::kExitUsage);
}

TEST_CASE("cli: grid parsing") {
  using qes::GridPoint;
  CHECK(qes::parse_grid("1..2x3,5") == std::vector<GridPoint>{{1, 3}, {1, 5}, {2, 3}, {2, 5}});
  CHECK(qes::parse_grid("2x3..7") == std::vector<GridPoint>{{2, 3}, {2, 5}, {2, 7}});
  CHECK(qes::parse_grid("1x3;4x5") == std::vector<GridPoint>{{1, 3}, {4, 5}});
  CHECK_THROWS_AS(qes::parse_grid("1x4"), std::invalid_argument);
  CHECK_THROWS_AS(qes::parse_grid("0x3"), std::invalid_argument);
  CHECK_THROWS_AS(qes::parse_grid("1..3"), std::invalid_argument);
  CHECK_THROWS_AS(qes::parse_grid("ax3"), std::invalid_argument);
}

TEST_CASE("cli: claim catalog") {
  const auto& catalog = qes::claim_catalog();
  REQUIRE(catalog.size() == 13);
  for (std::size_t i = 0; i < catalog.size(); ++i) CHECK(catalog[i].number == static_cast<int>(i) + 1);
  CHECK(catalog[0].id == "m2");
  CHECK(catalog[12].id == "spot-checks");
}
