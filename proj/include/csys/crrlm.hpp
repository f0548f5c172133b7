#pragma once

#include <functional>
#include <memory>

#include "csys/crr.hpp"
#include "csys/presheaf.hpp"
#include "csys/val.hpp"

namespace csys {

// A left module over a monad instance: value sets LM(n) with a substitution
// action along Kleisli morphisms, contravariant over the C-system and
// covariant over the Kleisli category.
struct LmInstance {
  std::string name;
  MonadPtr rr;

  std::function<Val(const KMor& f, const Val& e)> act_fn;  // LM(f.dom) -> LM(f.cod)
  std::function<bool(int n, const Val& e)> valid_fn;
  std::function<int(const Val& e)> ctx_fn;
  std::function<std::vector<Val>(int n)> enumerate_fn;  // null when infinite
  std::function<Val(int n, int size_bound, std::uint64_t seed)> sample_fn;
  std::function<Val(int n, const nlohmann::json& j)> parse_fn;

  bool enumerable() const { return static_cast<bool>(enumerate_fn); }
};

using LmPtr = std::shared_ptr<const LmInstance>;

// the action, with context checks
Val lm_act(const LmInstance& lm, const KMor& f, const Val& e);

// the module carried by the monad itself: LM(n) = RR(n), action by extension
LmPtr lm_of_rr(MonadPtr inst);

// --- two-sorted syntax: type expressions over element terms -----------------

struct TyArgDecl {
  bool is_el = true;  // element sort or type sort
  int binders = 0;    // element variables bound in this argument
};

struct TyOpDecl {
  std::string sym;
  std::vector<TyArgDecl> args;
};

struct TwoSortedSignature {
  BindingSignature el;
  std::vector<TyOpDecl> ty_ops;

  int ty_index_of(const std::string& sym) const;
  const TyOpDecl& ty_op(int sym) const;
};

TwoSortedSignature make_two_sorted(BindingSignature el, std::vector<TyOpDecl> ty_ops);

// A type expression; arguments are stored per sort, in declaration order
// within each sort (the signature fixes which positions are which).
struct TyTree {
  int sym = 0;
  std::vector<TermTree> el_args;
  std::vector<TyTree> ty_args;

  friend bool operator==(const TyTree&, const TyTree&) = default;
};

bool ty_wellscoped(const TwoSortedSignature& sig, const TyTree& t, int ctx);
std::string ty_show(const TwoSortedSignature& sig, const TyTree& t);
nlohmann::json ty_to_json(const TwoSortedSignature& sig, const TyTree& t);
TyTree ty_from_json(const TwoSortedSignature& sig, const nlohmann::json& j);
int min_ty_size(const TwoSortedSignature& sig, int ctx);
TyTree sample_ty(const TwoSortedSignature& sig, int ctx, int size_bound, std::uint64_t seed);

// element terms substituted throughout a type expression, lifting under binders
LmPtr two_sorted_module(std::shared_ptr<const TwoSortedSignature> sig, MonadPtr el_inst);

// --- value wrappers ----------------------------------------------------------

Val term_val(MonadPtr inst, Term t);
const Term* val_term(const Val& v);  // nullptr when not a term value
Val ty_val(std::shared_ptr<const TwoSortedSignature> sig, MonadPtr el_inst, int ctx, TyTree t);

// the presheaf on the base system carried by a module
PresheafPtr lm_presheaf(CrrPtr base, LmPtr lm);

// --- the extension system and its B-sets -------------------------------------

struct CrrLm {
  MonadPtr rr;
  LmPtr lm;
  CrrPtr crr;
  ExtPtr sys;
};

CrrLm crrlm_build(MonadPtr inst, LmPtr lm);

// an object (n, (T_0,...,T_{n-1})) with T_i in LM(i)
struct ExtObjLM {
  int n = 0;
  std::vector<Val> tele;

  friend bool operator==(const ExtObjLM&, const ExtObjLM&) = default;
};

// an element of the transported section set: context data plus top component
struct BTildeLM {
  int n = 0;
  std::vector<Val> gamma;  // telescope of length n+1
  Term r;                  // in RR(n)

  friend bool operator==(const BTildeLM&, const BTildeLM&) = default;
};

Obj ext_obj(const CrrLm& c, const ExtObjLM& x);
ExtObjLM ext_obj_of(const CrrLm& c, const Obj& o);

BTildeLM mb_lm(const CrrLm& c, const SectionWitness& s);
BTildeLM mb_lm(const CrrLm& c, const Mor& s);
SectionWitness mb_lm_inv(const CrrLm& c, const BTildeLM& b);

// substitution of r for variable m in a module value over a larger context
Val theta_lm(const LmInstance& lm, const Term& r, const Val& e);

// weakening p_Y^*(X) in closed form: insert Y's top entry, shift the tail
ExtObjLM p_star_weakening(const CrrLm& c, const ExtObjLM& x, const ExtObjLM& y);

// canonical section in closed form (generators plus the top component of f)
SectionWitness section_of_lm(const CrrLm& c, const Mor& f);

// base change of a section in closed form, for targets i >= 1 steps up
SectionWitness pullback_section_lm(const CrrLm& c, const Mor& f, const Mor& s);

// --- B-set operations: formula-based -----------------------------------------

ExtObjLM bop_lm_T_explicit(const CrrLm& c, const ExtObjLM& a, const ExtObjLM& b);
BTildeLM bop_lm_Tt_explicit(const CrrLm& c, const ExtObjLM& a, const BTildeLM& b);
ExtObjLM bop_lm_S_explicit(const CrrLm& c, const BTildeLM& b, const ExtObjLM& y);
BTildeLM bop_lm_St_explicit(const CrrLm& c, const BTildeLM& r, const BTildeLM& s);
BTildeLM bop_lm_delta_explicit(const CrrLm& c, const ExtObjLM& a);

// --- B-set operations: through the extension structure only ------------------

ExtObjLM bop_lm_T_definitional(const CrrLm& c, const ExtObjLM& a, const ExtObjLM& b);
BTildeLM bop_lm_Tt_definitional(const CrrLm& c, const ExtObjLM& a, const BTildeLM& b);
ExtObjLM bop_lm_S_definitional(const CrrLm& c, const BTildeLM& b, const ExtObjLM& y);
BTildeLM bop_lm_St_definitional(const CrrLm& c, const BTildeLM& r, const BTildeLM& s);
BTildeLM bop_lm_delta_definitional(const CrrLm& c, const ExtObjLM& a);

// --- JSON views (CLI) ---------------------------------------------------------

nlohmann::json extobj_to_json(const CrrLm& c, const ExtObjLM& x);
ExtObjLM extobj_from_json(const CrrLm& c, const nlohmann::json& j);
nlohmann::json btilde_lm_to_json(const CrrLm& c, const BTildeLM& b);
BTildeLM btilde_lm_from_json(const CrrLm& c, const nlohmann::json& j);

}  // namespace csys
