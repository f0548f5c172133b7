#include "csys/crrlm.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "csys/rng.hpp"

namespace csys {

Val lm_act(const LmInstance& lm, const KMor& f, const Val& e) {
  if (!lm.valid_fn(f.dom, e))
    throw ArityError("value is not an element of " + lm.name + "(" + std::to_string(f.dom) + ")");
  return lm.act_fn(f, e);
}

// ---------------------------------------------------------------------------
// Value wrappers

namespace {

struct TermValData : ValData {
  TermValData(MonadPtr inst, Term t) : inst(std::move(inst)), t(std::move(t)) {}
  MonadPtr inst;
  Term t;

  bool eq(const ValData& other) const override {
    const auto* o = dynamic_cast<const TermValData*>(&other);
    return o && t == o->t;
  }
  std::string show() const override { return term_show(*inst, t); }
  nlohmann::json to_json() const override { return term_to_json(*inst, t); }
};

struct TyValData : ValData {
  TyValData(std::shared_ptr<const TwoSortedSignature> sig, MonadPtr el, int ctx, TyTree t)
      : sig(std::move(sig)), el(std::move(el)), ctx(ctx), t(std::move(t)) {}
  std::shared_ptr<const TwoSortedSignature> sig;
  MonadPtr el;
  int ctx;
  TyTree t;

  bool eq(const ValData& other) const override {
    const auto* o = dynamic_cast<const TyValData*>(&other);
    return o && ctx == o->ctx && t == o->t;
  }
  std::string show() const override { return ty_show(*sig, t); }
  nlohmann::json to_json() const override { return ty_to_json(*sig, t); }
};

}  // namespace

Val term_val(MonadPtr inst, Term t) {
  return Val(std::make_shared<TermValData>(std::move(inst), std::move(t)));
}

const Term* val_term(const Val& v) {
  const auto* d = v.has_value() ? v.as<TermValData>() : nullptr;
  return d ? &d->t : nullptr;
}

Val ty_val(std::shared_ptr<const TwoSortedSignature> sig, MonadPtr el_inst, int ctx, TyTree t) {
  return Val(std::make_shared<TyValData>(std::move(sig), std::move(el_inst), ctx, std::move(t)));
}

// ---------------------------------------------------------------------------
// The module carried by the monad itself

LmPtr lm_of_rr(MonadPtr inst) {
  auto lm = std::make_shared<LmInstance>();
  lm->name = "rrmod";
  lm->rr = inst;

  lm->act_fn = [inst](const KMor& f, const Val& e) {
    const Term* t = val_term(e);
    if (!t) throw ArityError("expected a term value");
    return term_val(inst, bind(*inst, f, *t));
  };
  lm->valid_fn = [inst](int n, const Val& e) {
    const Term* t = val_term(e);
    return t && t->inst == inst->name && t->ctx == n &&
           tree_wellscoped(*inst->sig, t->tree, n);
  };
  lm->ctx_fn = [](const Val& e) {
    const Term* t = val_term(e);
    if (!t) throw ArityError("expected a term value");
    return t->ctx;
  };
  if (inst->enumerable()) {
    lm->enumerate_fn = [inst](int n) {
      std::vector<Val> out;
      for (Term& t : inst->enumerate_fn(n)) out.push_back(term_val(inst, std::move(t)));
      return out;
    };
  }
  lm->sample_fn = [inst](int n, int size_bound, std::uint64_t seed) {
    return term_val(inst, inst->sample_fn(n, size_bound, seed));
  };
  lm->parse_fn = [inst](int n, const nlohmann::json& j) {
    return term_val(inst, term_from_json(*inst, n, j));
  };
  return lm;
}

// ---------------------------------------------------------------------------
// Two-sorted syntax

int TwoSortedSignature::ty_index_of(const std::string& sym) const {
  for (size_t i = 0; i < ty_ops.size(); ++i)
    if (ty_ops[i].sym == sym) return static_cast<int>(i);
  return -1;
}

const TyOpDecl& TwoSortedSignature::ty_op(int sym) const {
  if (sym < 0 || sym >= static_cast<int>(ty_ops.size()))
    throw SignatureError("type constructor index outside the signature");
  return ty_ops[static_cast<size_t>(sym)];
}

TwoSortedSignature make_two_sorted(BindingSignature el, std::vector<TyOpDecl> ty_ops) {
  for (size_t i = 0; i < ty_ops.size(); ++i) {
    if (ty_ops[i].sym.empty()) throw SignatureError("empty type constructor symbol");
    for (const TyArgDecl& a : ty_ops[i].args)
      if (a.binders < 0) throw SignatureError("binder counts must be non-negative");
    for (size_t j = i + 1; j < ty_ops.size(); ++j)
      if (ty_ops[i].sym == ty_ops[j].sym)
        throw SignatureError("duplicate type constructor symbol " + ty_ops[i].sym);
  }
  return TwoSortedSignature{std::move(el), std::move(ty_ops)};
}

bool ty_wellscoped(const TwoSortedSignature& sig, const TyTree& t, int ctx) {
  if (t.sym < 0 || t.sym >= static_cast<int>(sig.ty_ops.size())) return false;
  const TyOpDecl& d = sig.ty_op(t.sym);
  size_t ei = 0, ti = 0;
  for (const TyArgDecl& a : d.args) {
    if (a.is_el) {
      if (ei >= t.el_args.size()) return false;
      if (!tree_wellscoped(sig.el, t.el_args[ei], ctx + a.binders)) return false;
      ++ei;
    } else {
      if (ti >= t.ty_args.size()) return false;
      if (!ty_wellscoped(sig, t.ty_args[ti], ctx + a.binders)) return false;
      ++ti;
    }
  }
  return ei == t.el_args.size() && ti == t.ty_args.size();
}

std::string ty_show(const TwoSortedSignature& sig, const TyTree& t) {
  const TyOpDecl& d = sig.ty_op(t.sym);
  std::ostringstream os;
  os << d.sym;
  if (!d.args.empty()) {
    os << '(';
    size_t ei = 0, ti = 0;
    for (size_t k = 0; k < d.args.size(); ++k) {
      if (k) os << ", ";
      if (d.args[k].is_el)
        os << tree_show(sig.el, t.el_args[ei++]);
      else
        os << ty_show(sig, t.ty_args[ti++]);
    }
    os << ')';
  }
  return os.str();
}

nlohmann::json ty_to_json(const TwoSortedSignature& sig, const TyTree& t) {
  const TyOpDecl& d = sig.ty_op(t.sym);
  nlohmann::json j = nlohmann::json::array();
  j.push_back(d.sym);
  size_t ei = 0, ti = 0;
  for (const TyArgDecl& a : d.args) {
    if (a.is_el)
      j.push_back(tree_to_json(sig.el, t.el_args[ei++]));
    else
      j.push_back(ty_to_json(sig, t.ty_args[ti++]));
  }
  return j;
}

TyTree ty_from_json(const TwoSortedSignature& sig, const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw SignatureError("type expression must be an array headed by a constructor name");
  int sym = sig.ty_index_of(j[0].get<std::string>());
  if (sym < 0) throw SignatureError("unknown type constructor " + j[0].get<std::string>());
  const TyOpDecl& d = sig.ty_op(sym);
  if (j.size() != d.args.size() + 1)
    throw SignatureError(d.sym + " takes " + std::to_string(d.args.size()) + " arguments");
  TyTree out;
  out.sym = sym;
  for (size_t k = 0; k < d.args.size(); ++k) {
    if (d.args[k].is_el)
      out.el_args.push_back(tree_from_json(sig.el, j[k + 1]));
    else
      out.ty_args.push_back(ty_from_json(sig, j[k + 1]));
  }
  return out;
}

namespace {
constexpr int kBig = std::numeric_limits<int>::max() / 4;
constexpr int kCtxCap = 64;
}  // namespace

int min_ty_size(const TwoSortedSignature& sig, int ctx) {
  std::vector<int> best(kCtxCap + 1, kBig);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 0; c <= kCtxCap; ++c) {
      for (const TyOpDecl& d : sig.ty_ops) {
        long long s = 1;
        for (const TyArgDecl& a : d.args) {
          int cc = std::min(c + a.binders, kCtxCap);
          int sub = a.is_el ? min_tree_size(sig.el, cc) : best[static_cast<size_t>(cc)];
          if (sub < 0 || sub >= kBig) {
            s = kBig;
            break;
          }
          s += sub;
        }
        if (s < best[static_cast<size_t>(c)]) {
          best[static_cast<size_t>(c)] = static_cast<int>(s);
          changed = true;
        }
      }
    }
  }
  int c = std::min(std::max(ctx, 0), kCtxCap);
  return best[static_cast<size_t>(c)] >= kBig ? -1 : best[static_cast<size_t>(c)];
}

namespace {

TyTree sample_ty_rec(const TwoSortedSignature& sig, int ctx, int budget, Rng& rng) {
  std::vector<std::pair<int, int>> viable;  // (sym, min size)
  for (size_t o = 0; o < sig.ty_ops.size(); ++o) {
    long long s = 1;
    for (const TyArgDecl& a : sig.ty_ops[o].args) {
      int sub = a.is_el ? min_tree_size(sig.el, ctx + a.binders)
                        : min_ty_size(sig, ctx + a.binders);
      if (sub < 0) {
        s = kBig;
        break;
      }
      s += sub;
    }
    if (s <= budget) viable.push_back({static_cast<int>(o), static_cast<int>(s)});
  }
  if (viable.empty()) {
    // fall back to a minimal expression
    int total = min_ty_size(sig, ctx);
    if (total < 0) throw StructureError("no type expression exists in this context");
    int pick = -1;
    long long pick_size = kBig;
    for (size_t o = 0; o < sig.ty_ops.size(); ++o) {
      long long s = 1;
      for (const TyArgDecl& a : sig.ty_ops[o].args) {
        int sub = a.is_el ? min_tree_size(sig.el, ctx + a.binders)
                          : min_ty_size(sig, ctx + a.binders);
        if (sub < 0) {
          s = kBig;
          break;
        }
        s += sub;
      }
      if (s < pick_size) {
        pick_size = s;
        pick = static_cast<int>(o);
      }
    }
    viable.push_back({pick, static_cast<int>(pick_size)});
  }
  auto [sym, min_size] = viable[static_cast<size_t>(rng.below_int(static_cast<int>(viable.size())))];
  const TyOpDecl& d = sig.ty_op(sym);
  int slack = std::max(0, budget - min_size);
  TyTree out;
  out.sym = sym;
  for (size_t k = 0; k < d.args.size(); ++k) {
    const TyArgDecl& a = d.args[k];
    int extra = (k + 1 == d.args.size()) ? slack : rng.below_int(slack + 1);
    slack -= extra;
    int cc = ctx + a.binders;
    if (a.is_el) {
      int sub_budget = std::max(min_tree_size(sig.el, cc), min_tree_size(sig.el, cc) + extra);
      out.el_args.push_back(sample_tree(sig.el, cc, sub_budget, rng.fork_seed()));
    } else {
      out.ty_args.push_back(sample_ty_rec(sig, cc, min_ty_size(sig, cc) + extra, rng));
    }
  }
  return out;
}

}  // namespace

TyTree sample_ty(const TwoSortedSignature& sig, int ctx, int size_bound, std::uint64_t seed) {
  if (min_ty_size(sig, ctx) < 0)
    throw StructureError("no type expression exists in context " + std::to_string(ctx));
  Rng rng(seed);
  return sample_ty_rec(sig, ctx, std::max(size_bound, min_ty_size(sig, ctx)), rng);
}

namespace {

// embed a Kleisli morphism under b fresh bound variables at the front
KMor lift_front(const MonadInstance& inst, const KMor& f, int b) {
  if (b == 0) return f;
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(f.dom + b));
  for (int i = 0; i < b; ++i) comps.push_back(eta(inst, f.cod + b, i));
  std::vector<int> shift(static_cast<size_t>(f.cod));
  for (int k = 0; k < f.cod; ++k) shift[static_cast<size_t>(k)] = k + b;
  FinFun emb{f.cod, f.cod + b, std::move(shift)};
  for (const Term& c : f.comps) comps.push_back(rr_of_finfun(inst, emb, c));
  return KMor{f.dom + b, f.cod + b, std::move(comps)};
}

TyTree ty_act_rec(const TwoSortedSignature& sig, const MonadInstance& inst, const KMor& f,
                  const TyTree& t) {
  const TyOpDecl& d = sig.ty_op(t.sym);
  TyTree out;
  out.sym = t.sym;
  size_t ei = 0, ti = 0;
  for (const TyArgDecl& a : d.args) {
    KMor lifted = lift_front(inst, f, a.binders);
    if (a.is_el) {
      Term arg{inst.name, f.dom + a.binders, t.el_args[ei++]};
      out.el_args.push_back(bind(inst, lifted, arg).tree);
    } else {
      out.ty_args.push_back(ty_act_rec(sig, inst, lifted, t.ty_args[ti++]));
    }
  }
  return out;
}

}  // namespace

LmPtr two_sorted_module(std::shared_ptr<const TwoSortedSignature> sig, MonadPtr el_inst) {
  auto lm = std::make_shared<LmInstance>();
  std::string name = "ty[";
  for (size_t i = 0; i < sig->ty_ops.size(); ++i) {
    if (i) name += ",";
    name += sig->ty_ops[i].sym;
  }
  name += "]";
  lm->name = name;
  lm->rr = el_inst;

  lm->act_fn = [sig, el_inst](const KMor& f, const Val& e) {
    const auto* d = e.as<TyValData>();
    if (!d) throw ArityError("expected a type expression value");
    return ty_val(sig, el_inst, f.cod, ty_act_rec(*sig, *el_inst, f, d->t));
  };
  lm->valid_fn = [sig](int n, const Val& e) {
    const auto* d = e.as<TyValData>();
    return d && d->ctx == n && ty_wellscoped(*sig, d->t, n);
  };
  lm->ctx_fn = [](const Val& e) {
    const auto* d = e.as<TyValData>();
    if (!d) throw ArityError("expected a type expression value");
    return d->ctx;
  };
  lm->enumerate_fn = nullptr;
  lm->sample_fn = [sig, el_inst](int n, int size_bound, std::uint64_t seed) {
    return ty_val(sig, el_inst, n, sample_ty(*sig, n, size_bound, seed));
  };
  lm->parse_fn = [sig, el_inst](int n, const nlohmann::json& j) {
    TyTree t = ty_from_json(*sig, j);
    if (!ty_wellscoped(*sig, t, n))
      throw SignatureError("type expression is not well-scoped in context " + std::to_string(n));
    return ty_val(sig, el_inst, n, std::move(t));
  };
  return lm;
}

// ---------------------------------------------------------------------------
// The presheaf on C(RR) carried by a module

namespace {

class LmPresheaf : public Presheaf {
 public:
  LmPresheaf(CrrPtr base, LmPtr lm) : base_(std::move(base)), lm_(std::move(lm)) {}

  std::string name() const override { return lm_->name; }

  Val act(const Mor& f, const Val& e) const override {
    return lm_act(*lm_, base_->mor_k(f), e);
  }
  bool valid_at(const Obj& x, const Val& e) const override {
    return lm_->valid_fn(base_->obj_n(x), e);
  }
  bool enumerable() const override { return lm_->enumerable(); }
  std::vector<Val> at(const Obj& x) const override {
    if (!lm_->enumerable()) throw StructureError(lm_->name + " is not enumerable");
    return lm_->enumerate_fn(base_->obj_n(x));
  }
  Val sample(const Obj& x, int size_bound, std::uint64_t seed) const override {
    return lm_->sample_fn(base_->obj_n(x), size_bound, seed);
  }

 private:
  CrrPtr base_;
  LmPtr lm_;
};

}  // namespace

PresheafPtr lm_presheaf(CrrPtr base, LmPtr lm) {
  return std::make_shared<LmPresheaf>(std::move(base), std::move(lm));
}

CrrLm crrlm_build(MonadPtr inst, LmPtr lm) {
  CrrLm c;
  c.rr = std::move(inst);
  c.lm = std::move(lm);
  c.crr = crr_build(c.rr);
  c.sys = ext_build(c.crr, lm_presheaf(c.crr, c.lm));
  return c;
}

Obj ext_obj(const CrrLm& c, const ExtObjLM& x) {
  return c.sys->make_obj(c.crr->obj(x.n), x.tele);
}

ExtObjLM ext_obj_of(const CrrLm& c, const Obj& o) {
  return ExtObjLM{c.crr->obj_n(c.sys->base_obj(o)), c.sys->telescope(o)};
}

BTildeLM mb_lm(const CrrLm& c, const SectionWitness& s) {
  const Obj x = c.sys->cod(s.mor);
  const int n = c.sys->length(x) - 1;
  const KMor& k = c.crr->mor_k(c.sys->base_mor(s.mor));
  return BTildeLM{n, c.sys->telescope(x), k.comps[static_cast<size_t>(n)]};
}

BTildeLM mb_lm(const CrrLm& c, const Mor& s) { return mb_lm(c, make_section(*c.sys, s)); }

SectionWitness mb_lm_inv(const CrrLm& c, const BTildeLM& b) {
  if (b.r.ctx != b.n) throw SectionError("component context does not match the context size");
  Obj x = ext_obj(c, ExtObjLM{b.n + 1, b.gamma});
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(b.n) + 1);
  for (int i = 0; i < b.n; ++i) comps.push_back(eta(*c.rr, b.n, i));
  comps.push_back(b.r);
  Mor base = c.crr->mor(KMor{b.n + 1, b.n, std::move(comps)});
  return make_section(*c.sys, c.sys->make_mor(c.sys->ft(x), x, base));
}

Val theta_lm(const LmInstance& lm, const Term& r, const Val& e) {
  const MonadInstance& inst = *lm.rr;
  const int m = r.ctx;
  const int n = lm.ctx_fn(e);
  if (n <= m)
    throw ArityError("theta requires the module value to live in a strictly larger context");
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(m) + 1);
  for (int i = 0; i < m; ++i) comps.push_back(eta(inst, m, i));
  comps.push_back(r);
  KMor tuple{m + 1, m, std::move(comps)};
  return lm_act(lm, qq_iter(inst, tuple, n - m - 1), e);
}

namespace {

// the face action on module values: LM(k) -> LM(k+1) skipping variable i
Val lm_delta(const CrrLm& c, int i, int k, const Val& e) {
  return lm_act(*c.lm, L(*c.rr, delta(i, k)), e);
}

void require_dom(bool cond, const char* ineq) {
  if (!cond) throw BopDomainError(std::string("operation domain requires ") + ineq);
}

void require_prefix(const std::vector<Val>& a, const std::vector<Val>& b, int upto) {
  for (int i = 0; i < upto; ++i) {
    if (i >= static_cast<int>(a.size()) || i >= static_cast<int>(b.size()) ||
        !(a[static_cast<size_t>(i)] == b[static_cast<size_t>(i)]))
      throw BopDomainError("telescope prefix mismatch at entry " + std::to_string(i));
  }
}

}  // namespace

ExtObjLM p_star_weakening(const CrrLm& c, const ExtObjLM& x, const ExtObjLM& y) {
  const int m = x.n;
  const int n = y.n;
  if (n < 1) throw StructureError("weakening target must have positive length");
  if (m <= n - 1) throw StructureError("weakening requires the object to reach above ft of the target");
  for (int i = 0; i < n - 1; ++i)
    if (!(x.tele[static_cast<size_t>(i)] == y.tele[static_cast<size_t>(i)]))
      throw TelescopeError("telescope prefix mismatch at entry " + std::to_string(i));
  std::vector<Val> tele(y.tele.begin(), y.tele.end());
  for (int k = n - 1; k < m; ++k)
    tele.push_back(lm_delta(c, n - 1, k, x.tele[static_cast<size_t>(k)]));
  return ExtObjLM{m + 1, std::move(tele)};
}

SectionWitness section_of_lm(const CrrLm& c, const Mor& f) {
  const ExtSystem& sys = *c.sys;
  const Obj y = sys.cod(f);
  const int n = sys.length(y);
  if (n == 0) throw SectionError("no canonical section into an object of length 0");
  const KMor& kf = c.crr->mor_k(sys.base_mor(f));
  const int m = sys.length(sys.dom(f));
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(m) + 1);
  for (int i = 0; i < m; ++i) comps.push_back(eta(*c.rr, m, i));
  comps.push_back(kf.comps[static_cast<size_t>(n - 1)]);
  Mor ftf = sys.compose(f, sys.p(y));
  Obj dst = sys.star(ftf, y);
  Mor s = sys.make_mor(sys.dom(f), dst, c.crr->mor(KMor{m + 1, m, std::move(comps)}));
  return make_section(sys, s);
}

SectionWitness pullback_section_lm(const CrrLm& c, const Mor& f, const Mor& s) {
  const ExtSystem& sys = *c.sys;
  if (!is_section(sys, s)) throw SectionError("second argument must be a section");
  const Obj y = sys.cod(s);
  const int i = sys.length(y) - sys.length(sys.cod(f));
  if (i < 1) throw StructureError("section must sit at least one step above the codomain");
  if (!sys.obj_eq(sys.cod(f), ft_iter(sys, y, i)))
    throw StructureError("codomain is not an iterated father of the section target");
  const KMor& kf = c.crr->mor_k(sys.base_mor(f));
  const KMor& ks = c.crr->mor_k(sys.base_mor(s));
  const int m = kf.cod;
  const int top = ks.dom - 1;  // context of the top component
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(m + i));
  for (int k = 0; k < m + i - 1; ++k) comps.push_back(eta(*c.rr, m + i - 1, k));
  comps.push_back(bind(*c.rr, qq_iter(*c.rr, kf, i - 1), ks.comps[static_cast<size_t>(top)]));
  Obj src = star_of(sys, f, sys.dom(s));
  Obj dst = star_of(sys, f, y);
  Mor out = sys.make_mor(src, dst, c.crr->mor(KMor{m + i, m + i - 1, std::move(comps)}));
  return make_section(sys, out);
}

// ---------------------------------------------------------------------------
// B-set operations, formula-based

ExtObjLM bop_lm_T_explicit(const CrrLm& c, const ExtObjLM& a, const ExtObjLM& b) {
  const int m = a.n;
  const int n = b.n;
  require_dom(m > 0, "m > 0");
  require_dom(n > m - 1, "n > m-1");
  require_prefix(a.tele, b.tele, m - 1);
  std::vector<Val> tele(b.tele.begin(), b.tele.begin() + (m - 1));
  tele.push_back(a.tele[static_cast<size_t>(m - 1)]);
  for (int k = m - 1; k < n; ++k)
    tele.push_back(lm_delta(c, m - 1, k, b.tele[static_cast<size_t>(k)]));
  return ExtObjLM{n + 1, std::move(tele)};
}

BTildeLM bop_lm_Tt_explicit(const CrrLm& c, const ExtObjLM& a, const BTildeLM& b) {
  const int m = a.n;
  const int n = b.n;
  require_dom(m > 0, "m > 0");
  require_dom(n + 1 > m - 1, "n+1 > m-1");
  require_prefix(a.tele, b.gamma, m - 1);
  ExtObjLM weakened = bop_lm_T_explicit(c, a, ExtObjLM{n + 1, b.gamma});
  Term shifted = rr_of_finfun(*c.rr, delta(m - 1, n), b.r);
  return BTildeLM{n + 1, std::move(weakened.tele), std::move(shifted)};
}

ExtObjLM bop_lm_S_explicit(const CrrLm& c, const BTildeLM& b, const ExtObjLM& y) {
  const int m = b.n;
  const int n = y.n;
  require_dom(n > m + 1, "n > m+1");
  require_prefix(b.gamma, y.tele, m + 1);
  std::vector<Val> tele(y.tele.begin(), y.tele.begin() + m);
  for (int k = m + 1; k < n; ++k)
    tele.push_back(theta_lm(*c.lm, b.r, y.tele[static_cast<size_t>(k)]));
  return ExtObjLM{n - 1, std::move(tele)};
}

BTildeLM bop_lm_St_explicit(const CrrLm& c, const BTildeLM& r, const BTildeLM& s) {
  const int m = r.n;
  const int n = s.n;
  require_dom(n > m, "n > m");
  require_prefix(r.gamma, s.gamma, m + 1);
  ExtObjLM reduced = bop_lm_S_explicit(c, r, ExtObjLM{n + 1, s.gamma});
  Term top = theta_rr(*c.rr, r.r, s.r);
  return BTildeLM{n - 1, std::move(reduced.tele), std::move(top)};
}

BTildeLM bop_lm_delta_explicit(const CrrLm& c, const ExtObjLM& a) {
  require_dom(a.n > 0, "m > 0");
  ExtObjLM weakened = bop_lm_T_explicit(c, a, a);
  return BTildeLM{a.n, std::move(weakened.tele), eta(*c.rr, a.n, a.n - 1)};
}

// ---------------------------------------------------------------------------
// B-set operations, through the extension structure

ExtObjLM bop_lm_T_definitional(const CrrLm& c, const ExtObjLM& a, const ExtObjLM& b) {
  require_dom(a.n > 0, "m > 0");
  require_dom(b.n > a.n - 1, "n > m-1");
  require_prefix(a.tele, b.tele, a.n - 1);
  Obj x = ext_obj(c, a);
  Obj y = ext_obj(c, b);
  return ext_obj_of(c, star_of(*c.sys, c.sys->p(x), y));
}

BTildeLM bop_lm_Tt_definitional(const CrrLm& c, const ExtObjLM& a, const BTildeLM& b) {
  require_dom(a.n > 0, "m > 0");
  require_dom(b.n + 1 > a.n - 1, "n+1 > m-1");
  require_prefix(a.tele, b.gamma, a.n - 1);
  Obj x = ext_obj(c, a);
  Mor s = mb_lm_inv(c, b).mor;
  return mb_lm(c, star_mor(*c.sys, c.sys->p(x), s));
}

ExtObjLM bop_lm_S_definitional(const CrrLm& c, const BTildeLM& b, const ExtObjLM& y) {
  require_dom(y.n > b.n + 1, "n > m+1");
  require_prefix(b.gamma, y.tele, b.n + 1);
  Mor r = mb_lm_inv(c, b).mor;
  return ext_obj_of(c, star_of(*c.sys, r, ext_obj(c, y)));
}

BTildeLM bop_lm_St_definitional(const CrrLm& c, const BTildeLM& r, const BTildeLM& s) {
  require_dom(s.n > r.n, "n > m");
  require_prefix(r.gamma, s.gamma, r.n + 1);
  Mor rm = mb_lm_inv(c, r).mor;
  Mor sm = mb_lm_inv(c, s).mor;
  return mb_lm(c, star_mor(*c.sys, rm, sm));
}

BTildeLM bop_lm_delta_definitional(const CrrLm& c, const ExtObjLM& a) {
  require_dom(a.n > 0, "m > 0");
  return mb_lm(c, delta_section(*c.sys, ext_obj(c, a)).mor);
}

// ---------------------------------------------------------------------------
// JSON views

nlohmann::json extobj_to_json(const CrrLm& c, const ExtObjLM& x) {
  (void)c;
  nlohmann::json tele = nlohmann::json::array();
  for (const Val& v : x.tele) tele.push_back(v.to_json());
  return nlohmann::json{{"n", x.n}, {"tele", tele}};
}

ExtObjLM extobj_from_json(const CrrLm& c, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("tele"))
    throw UsageError("object argument must be {\"n\":..., \"tele\":[...]}");
  ExtObjLM out;
  out.n = j["n"].get<int>();
  const nlohmann::json& tele = j["tele"];
  if (!tele.is_array() || static_cast<int>(tele.size()) != out.n)
    throw UsageError("telescope must list exactly n entries");
  for (int i = 0; i < out.n; ++i) out.tele.push_back(c.lm->parse_fn(i, tele[static_cast<size_t>(i)]));
  return out;
}

nlohmann::json btilde_lm_to_json(const CrrLm& c, const BTildeLM& b) {
  nlohmann::json gamma = nlohmann::json::array();
  for (const Val& v : b.gamma) gamma.push_back(v.to_json());
  return nlohmann::json{{"n", b.n}, {"gamma", gamma}, {"r", term_to_json(*c.rr, b.r)}};
}

BTildeLM btilde_lm_from_json(const CrrLm& c, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("gamma") || !j.contains("r"))
    throw UsageError("section argument must be {\"n\":..., \"gamma\":[...], \"r\":...}");
  BTildeLM out;
  out.n = j["n"].get<int>();
  const nlohmann::json& gamma = j["gamma"];
  if (!gamma.is_array() || static_cast<int>(gamma.size()) != out.n + 1)
    throw UsageError("gamma must list exactly n+1 entries");
  for (int i = 0; i <= out.n; ++i)
    out.gamma.push_back(c.lm->parse_fn(i, gamma[static_cast<size_t>(i)]));
  out.r = term_from_json(*c.rr, out.n, j["r"]);
  return out;
}

}  // namespace csys
