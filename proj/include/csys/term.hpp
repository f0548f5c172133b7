#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace csys {

// A de Bruijn syntax tree. At the top level of a term in context n, Var(i)
// denotes the i-th context variable x_i, 0 <= i < n. A constructor argument
// with binder count b extends the context by b fresh variables which occupy
// the low indices inside that argument (index 0 = innermost binder); free
// variables are shifted up past them.
struct TermTree {
  static constexpr int kVar = -1;
  int sym = kVar;               // kVar, or an index into the signature's ops
  int var = 0;                  // meaningful when sym == kVar
  std::vector<TermTree> kids;

  friend bool operator==(const TermTree&, const TermTree&) = default;
};

TermTree tvar(int i);
TermTree tnode(int sym, std::vector<TermTree> kids = {});
int tree_size(const TermTree& t);

// One constructor: a symbol plus one binder count per argument.
struct OpDecl {
  std::string sym;
  std::vector<int> binders;
};

struct BindingSignature {
  std::vector<OpDecl> ops;

  int index_of(const std::string& sym) const;  // -1 when absent
  const OpDecl& op(int sym) const;
};

// Validates symbol uniqueness and binder counts.
BindingSignature make_signature(std::vector<OpDecl> ops);

bool tree_wellscoped(const BindingSignature& sig, const TermTree& t, int ctx);

struct FinFun;

// Rename free variables through ff; ff.dom must be the ambient context.
TermTree tree_rename(const BindingSignature& sig, const TermTree& t, const FinFun& ff);

// Simultaneous substitution: comps[i] replaces free variable i; every
// component lives in a context of size cod. Substituted components are
// shifted past the binders they are carried under.
TermTree tree_subst(const BindingSignature& sig, const TermTree& t,
                    const std::vector<TermTree>& comps, int cod);

std::string tree_show(const BindingSignature& sig, const TermTree& t);
nlohmann::json tree_to_json(const BindingSignature& sig, const TermTree& t);
TermTree tree_from_json(const BindingSignature& sig, const nlohmann::json& j);

// Smallest tree size realizable in the given context, or -1 when the carrier
// is empty there.
int min_tree_size(const BindingSignature& sig, int ctx);
TermTree minimal_tree(const BindingSignature& sig, int ctx);
TermTree sample_tree(const BindingSignature& sig, int ctx, int size_bound, std::uint64_t seed);

// An element of RR(ctx) for the named monad instance.
struct Term {
  std::string inst;
  int ctx = 0;
  TermTree tree;

  // cheap fields first; the instance name rarely discriminates
  friend bool operator==(const Term& a, const Term& b) {
    return a.ctx == b.ctx && a.tree == b.tree && a.inst == b.inst;
  }
};

}  // namespace csys
