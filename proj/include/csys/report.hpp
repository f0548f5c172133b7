#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace csys {

struct CheckResult {
  enum class Status { Pass, Fail, Skip };

  std::string name;
  Status status = Status::Pass;
  std::string detail;    // counterexample, or reason for a skip
  long long cases = 0;   // data points examined
};

// Outcome of one suite. wall_ms is measured by the runner and deliberately
// kept out of the JSON serialization so that reports are byte-identical
// across runs with the same seed; runners print timing to stderr instead.
struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  nlohmann::json budgets = nlohmann::json::object();
  std::vector<CheckResult> checks;
  double wall_ms = 0.0;

  bool ok() const;
  void add(CheckResult c);
  void pass(const std::string& name, long long cases);
  void fail(const std::string& name, long long cases, const std::string& witness);
  void skip(const std::string& name, const std::string& reason);
  void merge(const Report& other);  // absorbs other's checks, prefixed by its suite name

  nlohmann::json to_json() const;  // checks sorted by name
  std::string summary() const;     // one human-readable line per check
};

}  // namespace csys
