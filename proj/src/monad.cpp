#include "csys/monad.hpp"

#include <algorithm>
#include <sstream>

#include "csys/errors.hpp"
#include "csys/rng.hpp"

namespace csys {

Term eta(const MonadInstance& inst, int n, int i) {
  if (n < 0) throw IndexError("context size must be non-negative");
  if (i < 0 || i >= n)
    throw IndexError("generator index " + std::to_string(i) + " outside context of size " +
                     std::to_string(n));
  return inst.eta_fn(n, i);
}

Term bind(const MonadInstance& inst, const KMor& f, const Term& t) {
  if (t.inst != inst.name) throw ArityError("term belongs to instance " + t.inst);
  if (t.ctx != f.dom)
    throw ArityError("cannot extend along " + std::to_string(f.dom) + "->" +
                     std::to_string(f.cod) + ": term lives in context " + std::to_string(t.ctx));
  return inst.bind_fn(f, t);
}

Term rr_of_finfun(const MonadInstance& inst, const FinFun& ff, const Term& t) {
  if (t.ctx != ff.dom) throw ArityError("renaming domain does not match the term context");
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(ff.dom));
  for (int i = 0; i < ff.dom; ++i) comps.push_back(eta(inst, ff.cod, ff_apply(ff, i)));
  return inst.bind_fn(KMor{ff.dom, ff.cod, std::move(comps)}, t);
}

Term make_term(const MonadInstance& inst, int ctx, TermTree tree) {
  if (!inst.sig || !tree_wellscoped(*inst.sig, tree, ctx))
    throw SignatureError("tree is not a valid element of " + inst.name + "(" +
                         std::to_string(ctx) + ")");
  return Term{inst.name, ctx, std::move(tree)};
}

std::string term_show(const MonadInstance& inst, const Term& t) {
  return tree_show(*inst.sig, t.tree);
}

nlohmann::json term_to_json(const MonadInstance& inst, const Term& t) {
  return tree_to_json(*inst.sig, t.tree);
}

Term term_from_json(const MonadInstance& inst, int ctx, const nlohmann::json& j) {
  return make_term(inst, ctx, tree_from_json(*inst.sig, j));
}

// ---------------------------------------------------------------------------
// Relative monad from a set monad

namespace {

int element_index(const std::vector<TermTree>& elems, const TermTree& t) {
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == t) return static_cast<int>(i);
  throw StructureError("value is not an element of the enumerated carrier");
}

// leaf renaming = the functorial action on position trees
TermTree relabel(const TermTree& t, const std::vector<int>& map) {
  if (t.sym == TermTree::kVar) {
    if (t.var < 0 || t.var >= static_cast<int>(map.size()))
      throw StructureError("position outside the carrier set");
    return tvar(map[static_cast<size_t>(t.var)]);
  }
  TermTree out = t;
  for (TermTree& k : out.kids) k = relabel(k, map);
  return out;
}

}  // namespace

MonadPtr from_set_monad(const SetMonad& m) {
  auto inst = std::make_shared<MonadInstance>();
  inst->name = m.name;
  inst->sig = m.sig;
  const std::string name = m.name;
  auto unit = m.unit;
  auto mult = m.mult;
  // carrier tables for the context sizes the suites actually touch
  constexpr int kTableMax = 16;
  auto table = std::make_shared<std::vector<std::vector<TermTree>>>();
  for (int k = 0; k <= kTableMax; ++k) table->push_back(m.elements(k));
  auto elements = [table, raw = m.elements](int k) -> const std::vector<TermTree>& {
    if (k >= 0 && k <= kTableMax) return (*table)[static_cast<size_t>(k)];
    thread_local std::vector<TermTree> big;
    big = raw(k);
    return big;
  };

  inst->eta_fn = [name, unit](int n, int i) { return Term{name, n, unit(n, i)}; };

  // rho(f) = R(f) . mu: relabel each position through f, then multiply
  inst->bind_fn = [name, elements, mult](const KMor& f, const Term& t) {
    const std::vector<TermTree>& carrier = elements(f.cod);
    std::vector<int> map(static_cast<size_t>(f.dom));
    for (int i = 0; i < f.dom; ++i)
      map[static_cast<size_t>(i)] = element_index(carrier, f.comps[static_cast<size_t>(i)].tree);
    return Term{name, f.cod, mult(f.cod, relabel(t.tree, map))};
  };

  inst->enumerate_fn = [name, elements](int n) {
    std::vector<Term> out;
    for (const TermTree& t : elements(n)) out.push_back(Term{name, n, t});
    return out;
  };

  inst->sample_fn = [name, elements](int n, int, std::uint64_t seed) {
    const std::vector<TermTree>& c = elements(n);
    if (c.empty()) throw StructureError(name + "(" + std::to_string(n) + ") is empty");
    Rng rng(seed);
    return Term{name, n, c[static_cast<size_t>(rng.below_int(static_cast<int>(c.size())))]};
  };

  return inst;
}

MonadPtr variables_monad() {
  SetMonad m;
  m.name = "vars";
  m.sig = std::make_shared<BindingSignature>(make_signature({}));
  m.elements = [](int k) {
    std::vector<TermTree> out;
    for (int i = 0; i < k; ++i) out.push_back(tvar(i));
    return out;
  };
  m.unit = [](int, int i) { return tvar(i); };
  // mu of the identity monad: position j names the element x_j itself
  m.mult = [](int k, const TermTree& t) {
    if (t.sym != TermTree::kVar || t.var < 0 || t.var >= k)
      throw StructureError("not an element of the doubled carrier");
    return t;
  };
  return from_set_monad(m);
}

MonadPtr unit_monad() {
  SetMonad m;
  m.name = "unit";
  m.sig = std::make_shared<BindingSignature>(make_signature({OpDecl{"Pt", {}}}));
  const TermTree pt = tnode(0);
  m.elements = [pt](int) { return std::vector<TermTree>{pt}; };
  m.unit = [pt](int, int) { return pt; };
  m.mult = [pt](int, const TermTree&) { return pt; };
  return from_set_monad(m);
}

MonadPtr exception_monad() {
  SetMonad m;
  m.name = "exc";
  m.sig = std::make_shared<BindingSignature>(make_signature({OpDecl{"Bot", {}}}));
  const TermTree bot = tnode(0);
  m.elements = [bot](int k) {
    std::vector<TermTree> out;
    for (int i = 0; i < k; ++i) out.push_back(tvar(i));
    out.push_back(bot);
    return out;
  };
  m.unit = [](int, int i) { return tvar(i); };
  // mu of the exception monad: the added point is absorbing; position k in
  // the doubled carrier names it, lower positions name the variables
  m.mult = [bot](int k, const TermTree& t) {
    if (t == bot) return bot;
    if (t.sym != TermTree::kVar || t.var < 0 || t.var > k)
      throw StructureError("not an element of the doubled carrier");
    return t.var == k ? bot : t;
  };
  return from_set_monad(m);
}

MonadPtr free_monad(const BindingSignature& sig) {
  auto inst = std::make_shared<MonadInstance>();
  auto sp = std::make_shared<BindingSignature>(sig);
  std::string name = "free[";
  for (size_t i = 0; i < sig.ops.size(); ++i) {
    if (i) name += ",";
    name += sig.ops[i].sym;
  }
  name += "]";
  inst->name = name;
  inst->sig = sp;

  inst->eta_fn = [name](int n, int i) { return Term{name, n, tvar(i)}; };

  inst->bind_fn = [name, sp](const KMor& f, const Term& t) {
    std::vector<TermTree> comps;
    comps.reserve(f.comps.size());
    for (const Term& c : f.comps) comps.push_back(c.tree);
    return Term{name, f.cod, tree_subst(*sp, t.tree, comps, f.cod)};
  };

  inst->enumerate_fn = nullptr;

  inst->sample_fn = [name, sp](int n, int size_bound, std::uint64_t seed) {
    return Term{name, n, sample_tree(*sp, n, size_bound, seed)};
  };

  return inst;
}

// ---------------------------------------------------------------------------
// Law checking

namespace {

struct LawData {
  std::vector<std::vector<Term>> terms;              // terms[n]
  std::vector<std::vector<std::vector<KMor>>> mors;  // mors[m][n]: morphisms m -> n
};

constexpr long long kTupleCap = 4096;

std::vector<KMor> all_tuples(int dom, int cod, const std::vector<Term>& pool) {
  std::vector<KMor> out;
  if (dom == 0) {
    out.push_back(KMor{0, cod, {}});
    return out;
  }
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

LawData gather(const MonadInstance& inst, int max_n, int samples, int size_bound, Rng& rng) {
  LawData d;
  d.terms.resize(static_cast<size_t>(max_n) + 1);
  for (int n = 0; n <= max_n; ++n) {
    if (inst.enumerable()) {
      d.terms[static_cast<size_t>(n)] = inst.enumerate_fn(n);
    } else {
      int count = std::max(4, samples / (max_n + 1));
      for (int k = 0; k < count; ++k)
        d.terms[static_cast<size_t>(n)].push_back(inst.sample_fn(n, size_bound, rng.fork_seed()));
    }
  }
  d.mors.resize(static_cast<size_t>(max_n) + 1);
  for (int m = 0; m <= max_n; ++m) {
    d.mors[static_cast<size_t>(m)].resize(static_cast<size_t>(max_n) + 1);
    for (int n = 0; n <= max_n; ++n) {
      const std::vector<Term>& pool = d.terms[static_cast<size_t>(n)];
      long long total = 1;
      for (int i = 0; i < m; ++i) {
        total *= std::max<long long>(1, static_cast<long long>(pool.size()));
        if (total > kTupleCap) break;
      }
      if (inst.enumerable() && total <= kTupleCap) {
        d.mors[static_cast<size_t>(m)][static_cast<size_t>(n)] = all_tuples(m, n, pool);
      } else {
        int count = std::max(2, samples / ((max_n + 1) * (max_n + 1)));
        for (int k = 0; k < count && !pool.empty(); ++k) {
          std::vector<Term> comps;
          for (int i = 0; i < m; ++i)
            comps.push_back(pool[static_cast<size_t>(rng.below_int(static_cast<int>(pool.size())))]);
          d.mors[static_cast<size_t>(m)][static_cast<size_t>(n)].push_back(KMor{m, n, std::move(comps)});
        }
        if (m == 0)
          d.mors[static_cast<size_t>(m)][static_cast<size_t>(n)].push_back(KMor{0, n, {}});
      }
    }
  }
  return d;
}

KMor identity_tuple(const MonadInstance& inst, int n) {
  std::vector<Term> comps;
  for (int i = 0; i < n; ++i) comps.push_back(eta(inst, n, i));
  return KMor{n, n, std::move(comps)};
}

KMor compose_tuple(const MonadInstance& inst, const KMor& f, const KMor& g) {
  std::vector<Term> comps;
  comps.reserve(f.comps.size());
  for (const Term& c : f.comps) comps.push_back(bind(inst, g, c));
  return KMor{f.dom, g.cod, std::move(comps)};
}

std::string show_kmor_raw(const MonadInstance& inst, const KMor& f) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < f.comps.size(); ++i) {
    if (i) os << ", ";
    os << term_show(inst, f.comps[i]);
  }
  os << "):" << f.dom << "->" << f.cod;
  return os.str();
}

}  // namespace

Report check_monad_laws(const MonadInstance& inst, int max_n, int samples, std::uint64_t seed) {
  Report rep;
  rep.suite = "monad-laws:" + inst.name;
  rep.seed = seed;
  rep.budgets = {{"max_n", max_n}, {"samples", samples}};
  Rng rng(seed);
  const int size_bound = 8;
  LawData d = gather(inst, max_n, samples, size_bound, rng);

  // right identity: extending along the identity tuple changes nothing
  {
    long long cases = 0;
    bool failed = false;
    for (int n = 0; n <= max_n && !failed; ++n) {
      KMor id = identity_tuple(inst, n);
      for (const Term& t : d.terms[static_cast<size_t>(n)]) {
        ++cases;
        Term got = bind(inst, id, t);
        if (!(got == t)) {
          rep.fail("right-identity", cases,
                   "n=" + std::to_string(n) + " t=" + term_show(inst, t) +
                       " bind(id,t)=" + term_show(inst, got));
          failed = true;
          break;
        }
      }
    }
    if (!failed) rep.pass("right-identity", cases);
  }

  // left identity: extension restricted to generators recovers the components
  {
    long long cases = 0;
    bool failed = false;
    for (int m = 0; m <= max_n && !failed; ++m)
      for (int n = 0; n <= max_n && !failed; ++n)
        for (const KMor& f : d.mors[static_cast<size_t>(m)][static_cast<size_t>(n)]) {
          for (int i = 0; i < m; ++i) {
            ++cases;
            Term got = bind(inst, f, eta(inst, m, i));
            if (!(got == f.comps[static_cast<size_t>(i)])) {
              rep.fail("left-identity", cases,
                       "f=" + show_kmor_raw(inst, f) + " i=" + std::to_string(i) +
                           " bind(f,x_i)=" + term_show(inst, got));
              failed = true;
              break;
            }
          }
          if (failed) break;
        }
    if (!failed) rep.pass("left-identity", cases);
  }

  // associativity: bind(g, bind(f, t)) == bind(f .T g, t)
  {
    long long cases = 0;
    bool failed = false;
    std::string witness;
    if (inst.enumerable()) {
      for (int l = 0; l <= max_n && !failed; ++l)
        for (int m = 0; m <= max_n && !failed; ++m)
          for (int n = 0; n <= max_n && !failed; ++n)
            for (const KMor& f : d.mors[static_cast<size_t>(l)][static_cast<size_t>(m)]) {
              for (const KMor& g : d.mors[static_cast<size_t>(m)][static_cast<size_t>(n)])
                for (const Term& t : d.terms[static_cast<size_t>(l)]) {
                  ++cases;
                  Term lhs = bind(inst, g, bind(inst, f, t));
                  Term rhs = bind(inst, compose_tuple(inst, f, g), t);
                  if (!(lhs == rhs)) {
                    witness = "f=" + show_kmor_raw(inst, f) + " g=" + show_kmor_raw(inst, g) +
                              " t=" + term_show(inst, t) + " lhs=" + term_show(inst, lhs) +
                              " rhs=" + term_show(inst, rhs);
                    failed = true;
                    break;
                  }
                }
              if (failed) break;
            }
    } else {
      for (int k = 0; k < samples && !failed; ++k) {
        int l = rng.below_int(max_n + 1);
        int m = rng.below_int(max_n + 1);
        int n = rng.below_int(max_n + 1);
        const auto& fs = d.mors[static_cast<size_t>(l)][static_cast<size_t>(m)];
        const auto& gs = d.mors[static_cast<size_t>(m)][static_cast<size_t>(n)];
        const auto& ts = d.terms[static_cast<size_t>(l)];
        if (fs.empty() || gs.empty() || ts.empty()) continue;
        const KMor& f = fs[static_cast<size_t>(rng.below_int(static_cast<int>(fs.size())))];
        const KMor& g = gs[static_cast<size_t>(rng.below_int(static_cast<int>(gs.size())))];
        const Term& t = ts[static_cast<size_t>(rng.below_int(static_cast<int>(ts.size())))];
        ++cases;
        Term lhs = bind(inst, g, bind(inst, f, t));
        Term rhs = bind(inst, compose_tuple(inst, f, g), t);
        if (!(lhs == rhs)) {
          witness = "f=" + show_kmor_raw(inst, f) + " g=" + show_kmor_raw(inst, g) +
                    " t=" + term_show(inst, t) + " lhs=" + term_show(inst, lhs) +
                    " rhs=" + term_show(inst, rhs);
          failed = true;
        }
      }
    }
    if (failed)
      rep.fail("associativity", cases, witness);
    else
      rep.pass("associativity", cases);
  }

  return rep;
}

}  // namespace csys
