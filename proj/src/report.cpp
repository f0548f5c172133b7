#include "csys/report.hpp"

#include <algorithm>
#include <sstream>

namespace csys {

namespace {
const char* status_str(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::Pass: return "pass";
    case CheckResult::Status::Fail: return "fail";
    default: return "skip";
  }
}
}  // namespace

bool Report::ok() const {
  for (const CheckResult& c : checks)
    if (c.status == CheckResult::Status::Fail) return false;
  return true;
}

void Report::add(CheckResult c) { checks.push_back(std::move(c)); }

void Report::pass(const std::string& name, long long cases) {
  checks.push_back({name, CheckResult::Status::Pass, "", cases});
}

void Report::fail(const std::string& name, long long cases, const std::string& witness) {
  checks.push_back({name, CheckResult::Status::Fail, witness, cases});
}

void Report::skip(const std::string& name, const std::string& reason) {
  checks.push_back({name, CheckResult::Status::Skip, reason, 0});
}

void Report::merge(const Report& other) {
  for (CheckResult c : other.checks) {
    c.name = other.suite + "/" + c.name;
    checks.push_back(std::move(c));
  }
}

nlohmann::json Report::to_json() const {
  std::vector<CheckResult> sorted = checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult& c : sorted) {
    nlohmann::json jc{{"name", c.name}, {"status", status_str(c.status)}, {"cases", c.cases}};
    if (!c.detail.empty()) jc["detail"] = c.detail;
    arr.push_back(std::move(jc));
  }
  return nlohmann::json{{"suite", suite},
                        {"seed", seed},
                        {"budgets", budgets},
                        {"ok", ok()},
                        {"checks", arr}};
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    os << "[" << status_str(c.status) << "] " << suite << "/" << c.name << " (" << c.cases
       << " cases)";
    if (!c.detail.empty()) os << " -- " << c.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace csys
