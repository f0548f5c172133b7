#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csys/finfun.hpp"
#include "csys/term.hpp"

namespace csys {

struct MonadInstance;

// A Kleisli morphism m -> n: a function stn(m) -> RR(n), stored as its
// component sequence. dom and cod are carried explicitly: component
// sequences alone cannot recover the codomain.
struct KMor {
  int dom = 0;
  int cod = 0;
  std::vector<Term> comps;  // length dom, each with ctx == cod

  friend bool operator==(const KMor&, const KMor&) = default;
};

// Validating constructor.
KMor km_make(const MonadInstance& inst, int dom, int cod, std::vector<Term> comps);

// Identity of the Kleisli category: the tuple of generators (x_0,...,x_{n-1}).
KMor t_identity(const MonadInstance& inst, int n);

// Diagrammatic Kleisli composition: component-wise extension of g along f.
KMor t_compose(const MonadInstance& inst, const KMor& f, const KMor& g);

// The functor from finite sets: component i is the generator picked out by ff.
KMor L(const MonadInstance& inst, const FinFun& ff);

// Weakening-and-fresh-variable lift: every component embedded along the
// initial-segment inclusion, plus the new top generator.
KMor qq(const MonadInstance& inst, const KMor& f);

// i-fold qq, computed in closed form.
KMor qq_iter(const MonadInstance& inst, const KMor& f, int i);

// Substitute r (in context m) for variable m in s (in context n > m) and
// shift the higher variables down.
Term theta_rr(const MonadInstance& inst, const Term& r, const Term& s);

std::string km_show(const MonadInstance& inst, const KMor& f);

// All Kleisli morphisms dom -> cod; requires an enumerable carrier unless dom == 0.
std::vector<KMor> km_enumerate(const MonadInstance& inst, int dom, int cod);

KMor km_sample(const MonadInstance& inst, int dom, int cod, int size_bound, std::uint64_t seed);

}  // namespace csys
