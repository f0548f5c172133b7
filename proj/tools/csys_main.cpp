#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "csys/suites.hpp"

namespace {

using csys::Budget;
using csys::Bundle;
using csys::Report;

int emit_report(const Report& rep, double wall_ms) {
  std::cout << rep.to_json().dump(2) << std::endl;
  std::cerr << rep.summary();
  std::cerr << "wall time: " << wall_ms << " ms" << std::endl;
  return rep.ok() ? 0 : 1;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C-systems from relative monads and left modules"};
  app.require_subcommand(1);

  std::string inst_sel, sys_sel, op_name, args_text, mode_name = "both";
  int max_n = 3, budget_len = 3, samples = 300, term_size = 8;
  std::uint64_t seed = 0;

  CLI::App* laws = app.add_subcommand("laws", "check the relative-monad laws of an instance");
  laws->add_option("instance", inst_sel, "vars | unit | exc | free:<sigfile>")->required();
  laws->add_option("--max-n", max_n, "largest context size");
  laws->add_option("--samples", samples, "sample count for non-enumerable carriers");
  laws->add_option("--seed", seed, "random seed");

  CLI::App* axioms = app.add_subcommand("axioms", "check the C-system axioms of a system");
  axioms->add_option("system", sys_sel, "crr:<inst> | crrlm:<inst>[:rrmod]")->required();
  axioms->add_option("--budget", budget_len, "largest object length");
  axioms->add_option("--samples", samples, "sample count for non-enumerable systems");
  axioms->add_option("--term-size", term_size, "sampled term size bound");
  axioms->add_option("--seed", seed, "random seed");

  CLI::App* bops = app.add_subcommand("bops", "evaluate one B-set operation");
  bops->add_option("system", sys_sel, "crr:<inst> | crrlm:<inst>[:rrmod]")->required();
  bops->add_option("op", op_name, "T | Tt | S | St | delta")->required();
  bops->add_option("args", args_text, "operation arguments as JSON")->required();
  bops->add_option("--mode", mode_name, "explicit | definitional | both");

  CLI::App* perm = app.add_subcommand("demo-perm", "check the variable swap against renaming");
  perm->add_option("instance", inst_sel, "vars | unit | exc | free:<sigfile>")->required();
  perm->add_option("--samples", samples, "sample count for non-enumerable carriers");
  perm->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << std::endl;
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    if (laws->parsed()) {
      csys::MonadPtr inst = csys::parse_instance(inst_sel);
      Report rep = csys::run_laws(*inst, max_n, samples, seed);
      return emit_report(rep, ms_since(t0));
    }
    if (axioms->parsed()) {
      Bundle b = csys::parse_system(sys_sel);
      Budget budget{budget_len, samples, term_size, seed};
      Report rep = csys::run_axioms(b, budget);
      return emit_report(rep, ms_since(t0));
    }
    if (perm->parsed()) {
      csys::MonadPtr inst = csys::parse_instance(inst_sel);
      Report rep = csys::run_demo_perm(*inst, samples, seed);
      return emit_report(rep, ms_since(t0));
    }
    if (bops->parsed()) {
      Bundle b = csys::parse_system(sys_sel);
      csys::BopMode mode;
      if (mode_name == "explicit")
        mode = csys::BopMode::Explicit;
      else if (mode_name == "definitional")
        mode = csys::BopMode::Definitional;
      else if (mode_name == "both")
        mode = csys::BopMode::Both;
      else
        throw csys::UsageError("unknown mode \"" + mode_name + "\"");
      nlohmann::json args;
      try {
        args = nlohmann::json::parse(args_text);
      } catch (const nlohmann::json::exception& e) {
        throw csys::UsageError(std::string("malformed JSON arguments: ") + e.what());
      }
      nlohmann::json out = csys::run_bop(b, op_name, args, mode);
      std::cout << out.dump(2) << std::endl;
      std::cerr << "wall time: " << ms_since(t0) << " ms" << std::endl;
      if (out.contains("agree") && !out["agree"].get<bool>()) return 1;
      return 0;
    }
  } catch (const csys::UsageError& e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return 2;
  } catch (const csys::BopDomainError& e) {
    nlohmann::json err{{"error", "bop-domain"}, {"detail", e.what()}};
    std::cout << err.dump(2) << std::endl;
    return 1;
  } catch (const csys::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 2;
}
