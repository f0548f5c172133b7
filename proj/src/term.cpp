#include "csys/term.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "csys/errors.hpp"
#include "csys/finfun.hpp"
#include "csys/rng.hpp"

namespace csys {

TermTree tvar(int i) {
  TermTree t;
  t.sym = TermTree::kVar;
  t.var = i;
  return t;
}

TermTree tnode(int sym, std::vector<TermTree> kids) {
  TermTree t;
  t.sym = sym;
  t.kids = std::move(kids);
  return t;
}

int tree_size(const TermTree& t) {
  int s = 1;
  for (const TermTree& k : t.kids) s += tree_size(k);
  return s;
}

int BindingSignature::index_of(const std::string& sym) const {
  for (size_t i = 0; i < ops.size(); ++i)
    if (ops[i].sym == sym) return static_cast<int>(i);
  return -1;
}

const OpDecl& BindingSignature::op(int sym) const {
  if (sym < 0 || sym >= static_cast<int>(ops.size()))
    throw SignatureError("constructor index " + std::to_string(sym) + " outside the signature");
  return ops[static_cast<size_t>(sym)];
}

BindingSignature make_signature(std::vector<OpDecl> ops) {
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].sym.empty() || ops[i].sym == "Var")
      throw SignatureError("constructor symbol may not be empty or the reserved name Var");
    for (int b : ops[i].binders)
      if (b < 0) throw SignatureError("binder counts must be non-negative");
    for (size_t j = i + 1; j < ops.size(); ++j)
      if (ops[i].sym == ops[j].sym)
        throw SignatureError("duplicate constructor symbol " + ops[i].sym);
  }
  return BindingSignature{std::move(ops)};
}

bool tree_wellscoped(const BindingSignature& sig, const TermTree& t, int ctx) {
  if (t.sym == TermTree::kVar) return t.kids.empty() && t.var >= 0 && t.var < ctx;
  if (t.sym < 0 || t.sym >= static_cast<int>(sig.ops.size())) return false;
  const OpDecl& d = sig.op(t.sym);
  if (t.kids.size() != d.binders.size()) return false;
  for (size_t a = 0; a < t.kids.size(); ++a)
    if (!tree_wellscoped(sig, t.kids[a], ctx + d.binders[a])) return false;
  return true;
}

namespace {

TermTree rename_rec(const BindingSignature& sig, const TermTree& t, const FinFun& ff, int cut) {
  if (t.sym == TermTree::kVar) {
    if (t.var < cut) return t;  // bound inside
    return tvar(ff_apply(ff, t.var - cut) + cut);
  }
  const OpDecl& d = sig.op(t.sym);
  std::vector<TermTree> kids;
  kids.reserve(t.kids.size());
  for (size_t a = 0; a < t.kids.size(); ++a)
    kids.push_back(rename_rec(sig, t.kids[a], ff, cut + d.binders[a]));
  return tnode(t.sym, std::move(kids));
}

// shift free variables up by `by` (embedding into a context extended at the front)
TermTree shift_tree(const BindingSignature& sig, const TermTree& t, int by, int cod) {
  if (by == 0) return t;
  std::vector<int> v(static_cast<size_t>(cod));
  for (int k = 0; k < cod; ++k) v[static_cast<size_t>(k)] = k + by;
  return rename_rec(sig, t, FinFun{cod, cod + by, std::move(v)}, 0);
}

TermTree subst_rec(const BindingSignature& sig, const TermTree& t,
                   const std::vector<TermTree>& comps, int cod, int cut) {
  if (t.sym == TermTree::kVar) {
    if (t.var < cut) return t;
    size_t idx = static_cast<size_t>(t.var - cut);
    if (idx >= comps.size()) throw ArityError("free variable outside the substitution");
    return shift_tree(sig, comps[idx], cut, cod);
  }
  const OpDecl& d = sig.op(t.sym);
  std::vector<TermTree> kids;
  kids.reserve(t.kids.size());
  for (size_t a = 0; a < t.kids.size(); ++a)
    kids.push_back(subst_rec(sig, t.kids[a], comps, cod, cut + d.binders[a]));
  return tnode(t.sym, std::move(kids));
}

}  // namespace

TermTree tree_rename(const BindingSignature& sig, const TermTree& t, const FinFun& ff) {
  return rename_rec(sig, t, ff, 0);
}

TermTree tree_subst(const BindingSignature& sig, const TermTree& t,
                    const std::vector<TermTree>& comps, int cod) {
  return subst_rec(sig, t, comps, cod, 0);
}

std::string tree_show(const BindingSignature& sig, const TermTree& t) {
  if (t.sym == TermTree::kVar) return "x" + std::to_string(t.var);
  std::ostringstream os;
  os << sig.op(t.sym).sym;
  if (!t.kids.empty()) {
    os << '(';
    for (size_t a = 0; a < t.kids.size(); ++a) {
      if (a) os << ", ";
      os << tree_show(sig, t.kids[a]);
    }
    os << ')';
  }
  return os.str();
}

nlohmann::json tree_to_json(const BindingSignature& sig, const TermTree& t) {
  nlohmann::json j = nlohmann::json::array();
  if (t.sym == TermTree::kVar) {
    j.push_back("Var");
    j.push_back(t.var);
    return j;
  }
  j.push_back(sig.op(t.sym).sym);
  for (const TermTree& k : t.kids) j.push_back(tree_to_json(sig, k));
  return j;
}

TermTree tree_from_json(const BindingSignature& sig, const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw SignatureError("term must be a non-empty array headed by a constructor name");
  std::string head = j[0].get<std::string>();
  if (head == "Var") {
    if (j.size() != 2 || !j[1].is_number_integer())
      throw SignatureError("Var takes a single integer index");
    return tvar(j[1].get<int>());
  }
  int sym = sig.index_of(head);
  if (sym < 0) throw SignatureError("unknown constructor " + head);
  const OpDecl& d = sig.op(sym);
  if (j.size() != d.binders.size() + 1)
    throw SignatureError(head + " takes " + std::to_string(d.binders.size()) + " arguments");
  std::vector<TermTree> kids;
  for (size_t a = 1; a < j.size(); ++a) kids.push_back(tree_from_json(sig, j[a]));
  return tnode(sym, std::move(kids));
}

namespace {
constexpr int kBig = std::numeric_limits<int>::max() / 4;
constexpr int kCtxCap = 64;
}  // namespace

int min_tree_size(const BindingSignature& sig, int ctx) {
  // relaxation over contexts 0..cap; binder counts only increase the context
  std::vector<int> best(kCtxCap + 1, kBig);
  for (int c = 1; c <= kCtxCap; ++c) best[static_cast<size_t>(c)] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 0; c <= kCtxCap; ++c) {
      for (const OpDecl& d : sig.ops) {
        long long s = 1;
        for (int b : d.binders) {
          int cc = std::min(c + b, kCtxCap);
          s += best[static_cast<size_t>(cc)];
          if (s >= kBig) break;
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

TermTree minimal_tree(const BindingSignature& sig, int ctx) {
  int total = min_tree_size(sig, ctx);
  if (total < 0) throw StructureError("no term exists in context " + std::to_string(ctx));
  if (ctx > 0 && total == 1) return tvar(0);
  int pick = -1;
  long long pick_size = kBig;
  for (size_t o = 0; o < sig.ops.size(); ++o) {
    long long s = 1;
    for (int b : sig.ops[o].binders) {
      int m = min_tree_size(sig, ctx + b);
      if (m < 0) { s = kBig; break; }
      s += m;
    }
    if (s < pick_size) { pick_size = s; pick = static_cast<int>(o); }
  }
  if (pick < 0) throw StructureError("no term exists in context " + std::to_string(ctx));
  std::vector<TermTree> kids;
  for (int b : sig.ops[static_cast<size_t>(pick)].binders) kids.push_back(minimal_tree(sig, ctx + b));
  return tnode(pick, std::move(kids));
}

namespace {

TermTree sample_rec(const BindingSignature& sig, int ctx, int budget, Rng& rng) {
  struct Choice { int sym; int min_size; };
  std::vector<Choice> viable;
  if (ctx > 0 && budget >= 1) viable.push_back({TermTree::kVar, 1});
  for (size_t o = 0; o < sig.ops.size(); ++o) {
    long long s = 1;
    for (int b : sig.ops[o].binders) {
      int m = min_tree_size(sig, ctx + b);
      if (m < 0) { s = kBig; break; }
      s += m;
    }
    if (s <= budget) viable.push_back({static_cast<int>(o), static_cast<int>(s)});
  }
  if (viable.empty()) return minimal_tree(sig, ctx);  // budget too small: fall back
  const Choice c = viable[static_cast<size_t>(rng.below_int(static_cast<int>(viable.size())))];
  if (c.sym == TermTree::kVar) return tvar(rng.below_int(ctx));
  const OpDecl& d = sig.op(c.sym);
  int slack = budget - c.min_size;
  std::vector<TermTree> kids;
  for (size_t a = 0; a < d.binders.size(); ++a) {
    int extra = (a + 1 == d.binders.size()) ? slack : rng.below_int(slack + 1);
    slack -= extra;
    int kid_ctx = ctx + d.binders[a];
    kids.push_back(sample_rec(sig, kid_ctx, min_tree_size(sig, kid_ctx) + extra, rng));
  }
  return tnode(c.sym, std::move(kids));
}

}  // namespace

TermTree sample_tree(const BindingSignature& sig, int ctx, int size_bound, std::uint64_t seed) {
  if (min_tree_size(sig, ctx) < 0)
    throw StructureError("carrier is empty in context " + std::to_string(ctx));
  Rng rng(seed);
  return sample_rec(sig, ctx, std::max(size_bound, min_tree_size(sig, ctx)), rng);
}

}  // namespace csys
