#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "toric/cli.hpp"
#include "toric/cyclo.hpp"
#include "toric/suites.hpp"

using namespace toric;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("correlate examples") {
  auto r = run({"correlate", "--p", "3", "--f", "1", "--rep", "trivial"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(CycNum::from_json(j["reports"][0]["value"]) == CycNum::rational(1));

  r = run({"correlate", "--p", "17", "--f", "2", "--rep", "ps:24"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["reports"][0]["zero"] == true);
  CHECK(j["reports"][0]["epsilon"] == 1);

  // q = 7 cuspidals: numeric values are 0 and (2 -+ sqrt 2)/6
  j = json::parse(run({"correlate", "--p", "7", "--rep", "all"}).out);
  std::vector<double> cusp;
  for (const auto& row : j["reports"])
    if (row["rep"].get<std::string>().rfind("cusp:", 0) == 0) cusp.push_back(row["numeric"]);
  std::sort(cusp.begin(), cusp.end());
  REQUIRE(cusp.size() == 3);
  CHECK(cusp[0] == doctest::Approx(0.0));
  CHECK(cusp[1] == doctest::Approx((2 - std::sqrt(2.0)) / 6));
  CHECK(cusp[2] == doctest::Approx((2 + std::sqrt(2.0)) / 6));
}

TEST_CASE("every emitted value re-parses") {
  auto j = json::parse(run({"chartable", "--p", "5", "--f", "2"}).out);
  const auto& t = j["table"];
  CHECK(t["classes"].size() == t["characters"].size());
  for (const auto& row : t["characters"])
    for (const auto& v : row["values"]) CHECK(CycNum::from_json(v).to_json() == v);
  // q = 7 table is 9 x 9 and the trivial row is all ones
  j = json::parse(run({"chartable", "--p", "7"}).out);
  CHECK(j["table"]["characters"].size() == 9);
  for (const auto& v : j["table"]["characters"][0]["values"]) CHECK(CycNum::from_json(v) == CycNum::rational(1));
}

TEST_CASE("modp residues at q = 49") {
  auto r = run({"modp", "--p", "7", "--f", "2", "--rep", "ps:10", "--all-primes"});
  REQUIRE(r.code == 0);
  std::set<std::int64_t> seen;
  const json rows = json::parse(r.out)["report"]["rows"];
  for (const auto& row : rows) seen.insert(row["reduced"].get<std::int64_t>());
  CHECK(seen == std::set<std::int64_t>{0, 2});

  r = run({"modp", "--p", "5", "--f", "1", "--rep", "st-eta"});
  REQUIRE(r.code == 0);
  auto row = json::parse(r.out)["report"]["rows"][0];
  CHECK(row["digits"] == json::array({2}));
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> a{"verify", "--suite", "regular", "--p", "7"};
  CHECK(run(a).out == run(a).out);
  const std::vector<std::string> b{"modp", "--p", "7", "--f", "3", "--rep", "ps:38", "--all-primes"};
  CHECK(run(b).out == run(b).out);
}

TEST_CASE("config errors exit 2") {
  CHECK(run({"correlate", "--p", "9"}).code == 2);
  CHECK(run({"correlate", "--p", "7", "--rep", "ps:9"}).code == 2);
  CHECK(run({"correlate", "--p", "7", "--rep", "bogus"}).code == 2);
  CHECK(run({"verify", "--suite", "nope", "--p", "7"}).code == 2);
  CHECK(run({"correlate", "--p", "7", "--unknown"}).code == 2);
  CHECK(run({"correlate", "--p", "7", "--table-cap", "10"}).code == 2);
  CHECK(run({"modp", "--p", "7"}).code == 2);
  CHECK(run({"modp", "--p", "7", "--rep", "ps:1", "--prime", "0", "--all-primes"}).code == 2);
  CHECK(run({"correlate", "--p", "7", "--f", "2", "--modulus", "X^2+1"}).code == 2);
}

TEST_CASE("config file sits under the flags") {
  const auto path = std::filesystem::temp_directory_path() / "toric_cli_test.toml";
  {
    std::ofstream f(path);
    f << "p = 7\nrep = \"cusp:2\"\n";
  }
  auto j = json::parse(run({"correlate", "--config", path.string()}).out);
  CHECK(j["manifest"]["config"]["p"] == 7);
  CHECK(j["manifest"]["config"]["rep"] == "cusp:2");
  j = json::parse(run({"correlate", "--config", path.string(), "--rep", "cusp:1"}).out);
  CHECK(j["manifest"]["config"]["rep"] == "cusp:1");
  std::filesystem::remove(path);
}

TEST_CASE("verify suites and injected failure") {
  auto r = run({"verify", "--suite", "all", "--p", "5", "--f", "1"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  r = run({"verify", "--suite", "regular", "--p", "7", "--f", "1"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(CycNum::from_json(j["suites"][0]["detail"]["sum"]) == CycNum::rational(7));

  r = run({"verify", "--suite", "shintani", "--p", "3", "--f-base", "3", "--ext", "2"});
  CHECK(r.code == 0);

  r = run({"verify", "--suite", "regular", "--p", "7", "--inject-fault"});
  CHECK(r.code == 1);
  CHECK(r.err.find("regular") != std::string::npos);
  j = json::parse(r.out);
  CHECK(j["ok"] == false);
  CHECK(!j["suites"][0]["failures"][0]["witness"].get<std::string>().empty());
}

TEST_CASE("verify all skips an oversized Shintani field") {
  SuiteContext ctx;
  ctx.p = 7;
  ctx.f = 2;
  auto results = run_suites("all", ctx);
  REQUIRE(results.back().suite == "shintani");
  CHECK(results.back().checks.empty());
  CHECK(results.back().detail.contains("skipped"));
  for (const auto& s : results) CHECK_MESSAGE(s.ok(), s.suite);
  CHECK_THROWS_AS(run_suites("shintani", ctx), std::invalid_argument);
}

TEST_CASE("corollary scan for q = p finds nothing") {
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    SuiteContext ctx;
    ctx.p = p;
    auto s = run_suites("corollary-scan", ctx);
    CHECK(s[0].ok());
    CHECK(s[0].detail["candidates"].empty());
  }
}
