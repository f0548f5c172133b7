#include "csys/kleisli.hpp"

#include <sstream>

#include "csys/errors.hpp"
#include "csys/monad.hpp"
#include "csys/rng.hpp"

namespace csys {

KMor km_make(const MonadInstance& inst, int dom, int cod, std::vector<Term> comps) {
  if (dom < 0 || cod < 0) throw ArityError("negative arity");
  if (static_cast<int>(comps.size()) != dom)
    throw ArityError("component count does not match the domain");
  for (const Term& c : comps) {
    if (c.inst != inst.name) throw ArityError("component from instance " + c.inst);
    if (c.ctx != cod) throw ArityError("component context does not match the codomain");
  }
  return KMor{dom, cod, std::move(comps)};
}

KMor t_identity(const MonadInstance& inst, int n) {
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) comps.push_back(eta(inst, n, i));
  return KMor{n, n, std::move(comps)};
}

KMor t_compose(const MonadInstance& inst, const KMor& f, const KMor& g) {
  if (f.cod != g.dom)
    throw ComposeError("cannot compose Kleisli morphisms: " + std::to_string(f.cod) +
                       " != " + std::to_string(g.dom));
  std::vector<Term> comps;
  comps.reserve(f.comps.size());
  for (const Term& c : f.comps) comps.push_back(bind(inst, g, c));
  return KMor{f.dom, g.cod, std::move(comps)};
}

KMor L(const MonadInstance& inst, const FinFun& ff) {
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(ff.dom));
  for (int i = 0; i < ff.dom; ++i) comps.push_back(eta(inst, ff.cod, ff_apply(ff, i)));
  return KMor{ff.dom, ff.cod, std::move(comps)};
}

KMor qq(const MonadInstance& inst, const KMor& f) { return qq_iter(inst, f, 1); }

KMor qq_iter(const MonadInstance& inst, const KMor& f, int i) {
  if (i < 0) throw IndexError("iteration count must be non-negative");
  if (i == 0) return f;
  const int m = f.cod;
  FinFun emb = iota(m, i);
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(f.dom + i));
  for (const Term& c : f.comps) comps.push_back(rr_of_finfun(inst, emb, c));
  for (int k = 0; k < i; ++k) comps.push_back(eta(inst, m + i, m + k));
  return KMor{f.dom + i, m + i, std::move(comps)};
}

Term theta_rr(const MonadInstance& inst, const Term& r, const Term& s) {
  const int m = r.ctx;
  const int n = s.ctx;
  if (n <= m)
    throw ArityError("theta requires the second argument to live in a strictly larger context");
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(m) + 1);
  for (int i = 0; i < m; ++i) comps.push_back(eta(inst, m, i));
  comps.push_back(r);
  KMor tuple{m + 1, m, std::move(comps)};
  return bind(inst, qq_iter(inst, tuple, n - m - 1), s);
}

std::string km_show(const MonadInstance& inst, const KMor& f) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < f.comps.size(); ++i) {
    if (i) os << ", ";
    os << term_show(inst, f.comps[i]);
  }
  os << "):" << f.dom << "->" << f.cod;
  return os.str();
}

std::vector<KMor> km_enumerate(const MonadInstance& inst, int dom, int cod) {
  std::vector<KMor> out;
  if (dom == 0) {
    out.push_back(KMor{0, cod, {}});
    return out;
  }
  if (!inst.enumerable())
    throw StructureError("carrier of " + inst.name + " is not enumerable");
  std::vector<Term> pool = inst.enumerate_fn(cod);
  if (pool.empty()) return out;
  std::vector<size_t> idx(static_cast<size_t>(dom), 0);
  while (true) {
    std::vector<Term> comps;
    comps.reserve(static_cast<size_t>(dom));
    for (int i = 0; i < dom; ++i) comps.push_back(pool[idx[static_cast<size_t>(i)]]);
    out.push_back(KMor{dom, cod, std::move(comps)});
    int k = dom - 1;
    while (k >= 0) {
      if (++idx[static_cast<size_t>(k)] < pool.size()) break;
      idx[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

KMor km_sample(const MonadInstance& inst, int dom, int cod, int size_bound, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(dom));
  for (int i = 0; i < dom; ++i) comps.push_back(inst.sample_fn(cod, size_bound, rng.fork_seed()));
  return KMor{dom, cod, std::move(comps)};
}

}  // namespace csys
