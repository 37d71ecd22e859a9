#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toric/correlation.hpp"
#include "toric/pgl2.hpp"

namespace toric {

struct SuiteCheck {
  std::string name;
  bool ok = true;
  std::string witness;
};

struct SuiteResult {
  explicit SuiteResult(std::string name = {}) : suite(std::move(name)) {}

  std::string suite;
  std::vector<SuiteCheck> checks;
  nlohmann::json detail = nlohmann::json::object();

  void add(std::string name, bool ok, std::string witness = {});
  bool ok() const;
  std::size_t failures() const;
  nlohmann::json to_json() const;
};

/// Everything a suite needs to build its groups.
struct SuiteContext {
  std::int64_t p = 5;
  int f = 1;
  int ext = 2;                    // Shintani extension degree over F_q
  std::optional<int> f_base;      // Shintani base degree over F_p, f if unset
  std::uint64_t seed = 0x5eedULL; // prime-ideal enumeration
  /// Adds one to the identity-class pair count before the suites run, so that the
  /// failure path can be exercised end to end.
  bool inject_fault = false;
  std::optional<fp::Poly> modulus;
  std::int64_t table_cap = kDefaultTableCap;
};

const std::vector<std::string>& suite_names();  // includes "all"

SuiteResult suite_regular(const PGL2& G, const PairCounts& counts);
/// Three epsilon computations per eligible rep, and eps = -1 forcing a zero constant.
SuiteResult suite_epsilon(const PGL2& G, const PairCounts& counts);
/// Orthogonality, fixed-space dimensions, and the JSON round trip of every entry.
SuiteResult suite_chartable(const PGL2& G);
SuiteResult suite_ps_model(std::shared_ptr<const PGL2> G, const PairCounts& counts);
SuiteResult suite_modp(const PGL2& G, const PairCounts& counts, std::uint64_t seed = 0x5eedULL);
SuiteResult suite_sympow(std::shared_ptr<const PGL2> G);
SuiteResult suite_diamond(std::shared_ptr<const PGL2> G, const PairCounts& counts);
SuiteResult suite_shintani(std::int64_t p, int f_base, int ext, std::int64_t table_cap = kDefaultTableCap);
/// Reps with eps = +1 and constant 0. For q = p these contradict the q = p corollary and
/// fail the suite; for f > 1 they are listed without being asserted.
SuiteResult suite_corollary_scan(const PGL2& G, const PairCounts& counts);

/// Runs one named suite, or every suite for "all". Under "all" the Shintani suite is skipped
/// (and says so in its detail) when F_{q^{2 ext}} exceeds the table cap. Throws std::invalid_argument on an unknown
/// name or an unusable configuration. An exception raised inside a suite becomes a failed check.
std::vector<SuiteResult> run_suites(const std::string& name, const SuiteContext& ctx);

}  // namespace toric
