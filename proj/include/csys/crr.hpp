#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "csys/csystem.hpp"
#include "csys/kleisli.hpp"
#include "csys/monad.hpp"

namespace csys {

// The l-bijective C-system on the opposite of the Kleisli category: objects
// are natural numbers n^, a morphism m^ -> n^ is a Kleisli morphism n -> m.
// Morphisms are stored once, as their Kleisli data; the wrapper carries the
// reversed orientation.
class CrrSystem : public CSystem {
 public:
  explicit CrrSystem(MonadPtr inst);

  std::string name() const override;
  Obj pt() const override;
  int length(const Obj&) const override;
  Obj ft(const Obj&) const override;
  Mor p(const Obj&) const override;
  Obj dom(const Mor&) const override;
  Obj cod(const Mor&) const override;
  Mor identity(const Obj&) const override;
  Mor compose(const Mor&, const Mor&) const override;
  Obj star(const Mor&, const Obj&) const override;
  Mor q(const Mor&, const Obj&) const override;
  Mor section_of_impl(const Mor&) const override;
  Mor star_mor_impl(const Mor&, const Mor&) const override;
  bool obj_eq(const Obj&, const Obj&) const override;
  bool mor_eq(const Mor&, const Mor&) const override;
  std::string show_obj(const Obj&) const override;
  std::string show_mor(const Mor&) const override;
  bool objects_enumerable() const override { return true; }
  bool homs_enumerable() const override;
  std::vector<Obj> objects_up_to(int max_len) const override;
  std::vector<Mor> hom(const Obj&, const Obj&) const override;
  Obj sample_obj(int len, int size_bound, std::uint64_t seed) const override;
  Mor sample_mor(const Obj&, const Obj&, int size_bound, std::uint64_t seed) const override;

  const MonadInstance& inst() const { return *inst_; }
  MonadPtr inst_ptr() const { return inst_; }

  Obj obj(int n) const;
  // the morphism ft(k.dom)^ ... i.e. k.cod^ -> k.dom^ carried by k
  Mor mor(KMor k) const;
  int obj_n(const Obj&) const;
  const KMor& mor_k(const Mor&) const;

 private:
  const std::vector<KMor>& kmors_between(int dom, int cod) const;

  MonadPtr inst_;
  std::vector<Obj> small_objs_;  // preallocated handles for the common lengths
  mutable std::mutex hom_mu_;    // guards the enumeration memo only
  mutable std::map<std::pair<int, int>, std::vector<KMor>> hom_memo_;
};

using CrrPtr = std::shared_ptr<const CrrSystem>;

CrrPtr crr_build(MonadPtr inst);

// An element of the transported section set: the top component of a section
// n^ -> (n+1)^ together with its context size.
struct BTildeRR {
  int n = 0;
  Term r;

  friend bool operator==(const BTildeRR&, const BTildeRR&) = default;
};

BTildeRR mb(const CrrSystem& cc, const SectionWitness& s);
BTildeRR mb(const CrrSystem& cc, const Mor& s);  // validates the section property
SectionWitness mb_inv(const CrrSystem& cc, const BTildeRR& b);

// f^*(s) for f : m^ -> n^ and a section s : (n+i)^ -> (n+i+1)^, in closed
// form: generators below the top, extension of the top component along the
// lifted morphism.
SectionWitness pullback_section(const CrrSystem& cc, const Mor& f, const Mor& s);

// The swap of the two context variables of RR(2), realized through face maps
// and top-variable substitution only.
Term psi(const MonadInstance& inst, const Term& t);

// --- B-set operations: formula-based ----------------------------------------

int bop_T_explicit(int m, int n);
BTildeRR bop_Tt_explicit(const MonadInstance& inst, int m, const BTildeRR& b);
int bop_S_explicit(const BTildeRR& b, int n);
BTildeRR bop_St_explicit(const MonadInstance& inst, const BTildeRR& r, const BTildeRR& s);
BTildeRR bop_delta_explicit(const MonadInstance& inst, int n);

// --- B-set operations: through the C-system structure ------------------------

int bop_T_definitional(const CrrSystem& cc, int m, int n);
BTildeRR bop_Tt_definitional(const CrrSystem& cc, int m, const BTildeRR& b);
int bop_S_definitional(const CrrSystem& cc, const BTildeRR& b, int n);
BTildeRR bop_St_definitional(const CrrSystem& cc, const BTildeRR& r, const BTildeRR& s);
BTildeRR bop_delta_definitional(const CrrSystem& cc, int n);

}  // namespace csys
