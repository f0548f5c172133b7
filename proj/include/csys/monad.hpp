#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csys/finfun.hpp"
#include "csys/kleisli.hpp"
#include "csys/report.hpp"
#include "csys/term.hpp"

namespace csys {

// A relative monad on the inclusion of standard finite sets into sets:
// carriers RR(n), unit eta, and Kleisli extension bind. Immutable after
// construction; the three laws are tested, not assumed.
struct MonadInstance {
  std::string name;
  std::shared_ptr<const BindingSignature> sig;  // constructor table (printing, scoping)

  std::function<Term(int n, int i)> eta_fn;
  std::function<Term(const KMor& f, const Term& t)> bind_fn;
  // null when the carrier is infinite
  std::function<std::vector<Term>(int n)> enumerate_fn;
  std::function<Term(int n, int size_bound, std::uint64_t seed)> sample_fn;

  bool enumerable() const { return static_cast<bool>(enumerate_fn); }
};

using MonadPtr = std::shared_ptr<const MonadInstance>;

// The generator x_i in RR(n); requires i < n.
Term eta(const MonadInstance& inst, int n, int i);

// The Kleisli extension rho(f) applied to t; requires t.ctx == f.dom.
Term bind(const MonadInstance& inst, const KMor& f, const Term& t);

// Functorial renaming along a map of finite sets (the coercion through which
// delta/sigma/iota act on terms); requires t.ctx == ff.dom.
Term rr_of_finfun(const MonadInstance& inst, const FinFun& ff, const Term& t);

// Validating constructor for terms built from raw trees.
Term make_term(const MonadInstance& inst, int ctx, TermTree tree);

std::string term_show(const MonadInstance& inst, const Term& t);
nlohmann::json term_to_json(const MonadInstance& inst, const Term& t);
Term term_from_json(const MonadInstance& inst, int ctx, const nlohmann::json& j);

// A monad on sets, presented on enumerated carriers. Elements of R(S) for a
// set S of size k are trees whose Var leaves index S; fmap is leaf renaming.
struct SetMonad {
  std::string name;
  std::shared_ptr<const BindingSignature> sig;                  // non-variable constructors
  std::function<std::vector<TermTree>(int k)> elements;         // R(S), |S| = k
  std::function<TermTree(int k, int i)> unit;                   // eta at S
  std::function<TermTree(int k, const TermTree&)> mult;         // mu at S; leaves index elements(k)
};

// The relative monad induced by a set monad: bind is R(f) followed by mu.
MonadPtr from_set_monad(const SetMonad& m);

MonadPtr variables_monad();   // identity monad: RR(n) = stn(n)
MonadPtr unit_monad();        // terminal monad: RR(n) a one-point set
MonadPtr exception_monad();   // RR(n) = stn(n) + {Bot}

// Free monad over a binding signature: de Bruijn trees, bind is simultaneous
// substitution with lifting under binders. The carrier is infinite, so there
// is no enumerator.
MonadPtr free_monad(const BindingSignature& sig);

// Checks the three relative-monad laws, exhaustively when the carrier is
// enumerable and small enough, on seeded samples otherwise.
Report check_monad_laws(const MonadInstance& inst, int max_n, int samples, std::uint64_t seed);

}  // namespace csys
