#pragma once

#include <optional>
#include <string>

#include "csys/checks.hpp"
#include "csys/crrlm.hpp"
#include "csys/signature.hpp"

namespace csys {

// A fully constructed test subject: the monad instance, its C-system, and,
// for extension selectors, the module and extension system.
struct Bundle {
  std::string desc;
  MonadPtr rr;
  CrrPtr crr;
  std::optional<CrrLm> lm;
  SystemPtr sys;

  bool is_ext() const { return lm.has_value(); }
};

// vars | unit | exc | free:<sigfile>
MonadPtr parse_instance(const std::string& selector);

// crr:<inst> | crrlm:<inst>:rrmod | crrlm:free:<sigfile> (two-sorted when the
// file declares a "ty" section and no explicit :rrmod is appended)
Bundle parse_system(const std::string& selector);

Report run_laws(const MonadInstance& inst, int max_n, int samples, std::uint64_t seed);

// c0 axioms, pullback universal property (or an explicit skip), base-change
// uniqueness, and for extension systems the presheaf laws and the projection
// and splitting homomorphisms
Report run_axioms(const Bundle& b, const Budget& budget);

// the swap of the two context variables, realized through the face/theta
// operators, against the renaming oracle
Report run_demo_perm(const MonadInstance& inst, int samples, std::uint64_t seed);

enum class BopMode { Explicit, Definitional, Both };

// evaluate one B-set operation from JSON arguments; in Both mode the result
// carries both values and an agreement verdict
nlohmann::json run_bop(const Bundle& b, const std::string& op, const nlohmann::json& args,
                       BopMode mode);

// explicit and definitional operations agree on their shared domain
Report run_th1_equivalence(const CrrPtr& crr, const Budget& budget);
Report run_th2_equivalence(const CrrLm& c, const Budget& budget);

}  // namespace csys
