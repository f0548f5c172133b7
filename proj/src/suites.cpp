#include "csys/suites.hpp"

#include <algorithm>

#include "csys/rng.hpp"

namespace csys {

MonadPtr parse_instance(const std::string& selector) {
  if (selector == "vars") return variables_monad();
  if (selector == "unit") return unit_monad();
  if (selector == "exc") return exception_monad();
  if (selector.rfind("free:", 0) == 0) {
    LoadedSignature sig = load_signature_file(selector.substr(5));
    return free_monad(*sig.el);
  }
  throw UsageError("unknown instance selector \"" + selector +
                   "\" (expected vars | unit | exc | free:<file>)");
}

Bundle parse_system(const std::string& selector) {
  Bundle b;
  b.desc = selector;
  if (selector.rfind("crr:", 0) == 0) {
    b.rr = parse_instance(selector.substr(4));
    b.crr = crr_build(b.rr);
    b.sys = b.crr;
    return b;
  }
  if (selector.rfind("crrlm:", 0) == 0) {
    std::string rest = selector.substr(6);
    bool explicit_rrmod = false;
    const std::string suffix = ":rrmod";
    if (rest.size() > suffix.size() &&
        rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0) {
      explicit_rrmod = true;
      rest = rest.substr(0, rest.size() - suffix.size());
    }
    LmPtr lm;
    if (!explicit_rrmod && rest.rfind("free:", 0) == 0) {
      LoadedSignature sig = load_signature_file(rest.substr(5));
      b.rr = free_monad(*sig.el);
      lm = sig.two ? two_sorted_module(sig.two, b.rr) : lm_of_rr(b.rr);
    } else {
      b.rr = parse_instance(rest);
      lm = lm_of_rr(b.rr);
    }
    b.lm = crrlm_build(b.rr, lm);
    b.crr = b.lm->crr;
    b.sys = b.lm->sys;
    return b;
  }
  throw UsageError("unknown system selector \"" + selector +
                   "\" (expected crr:<inst> | crrlm:<inst>[:rrmod])");
}

Report run_laws(const MonadInstance& inst, int max_n, int samples, std::uint64_t seed) {
  return check_monad_laws(inst, max_n, samples, seed);
}

Report run_axioms(const Bundle& b, const Budget& budget) {
  Report rep;
  rep.suite = "axioms:" + b.desc;
  rep.seed = budget.seed;
  rep.budgets = {{"max_len", budget.max_len},
                 {"samples", budget.samples},
                 {"term_size", budget.term_size}};
  rep.merge(check_c0_axioms(*b.sys, budget));
  rep.merge(check_pullbacks(*b.sys, budget));
  rep.merge(check_star_mor_unique(*b.sys, budget));
  if (b.is_ext()) {
    const CrrLm& c = *b.lm;
    rep.merge(check_presheaf_laws(*c.crr, c.sys->presheaf(), budget));
    rep.merge(check_homomorphism(tr(c.sys), budget));
    // the splitting needs an element over pt
    std::optional<Val> y;
    try {
      if (c.lm->enumerable()) {
        std::vector<Val> vals = c.lm->enumerate_fn(0);
        if (!vals.empty()) y = vals.front();
      } else {
        y = c.lm->sample_fn(0, budget.term_size, budget.seed);
      }
    } catch (const Error&) {
    }
    if (y.has_value()) {
      rep.merge(check_homomorphism(tr_bang(c.sys, *y), budget));
    } else {
      Report sk;
      sk.suite = "homomorphism:tr_bang";
      sk.skip("preserves-structure", "no presheaf value over pt; the extension is trivial");
      rep.merge(sk);
    }
  }
  return rep;
}

Report run_demo_perm(const MonadInstance& inst, int samples, std::uint64_t seed) {
  Report rep;
  rep.suite = "demo-perm:" + inst.name;
  rep.seed = seed;
  rep.budgets = {{"samples", samples}};
  FinFun swap = ff_make(2, 2, {1, 0});
  long long cases = 0;
  bool bad = false;
  std::vector<Term> pool;
  if (inst.enumerable()) {
    pool = inst.enumerate_fn(2);
  } else {
    Rng rng(seed);
    for (int k = 0; k < samples; ++k) pool.push_back(inst.sample_fn(2, 8, rng.fork_seed()));
  }
  for (const Term& t : pool) {
    ++cases;
    Term lhs = psi(inst, t);
    Term rhs = rr_of_finfun(inst, swap, t);
    if (!(lhs == rhs)) {
      rep.fail("psi-equals-swap", cases,
               "t=" + term_show(inst, t) + " psi=" + term_show(inst, lhs) +
                   " swap=" + term_show(inst, rhs));
      bad = true;
      break;
    }
  }
  if (!bad) rep.pass("psi-equals-swap", cases);
  return rep;
}

// ---------------------------------------------------------------------------
// B-operation evaluation from JSON

namespace {

BTildeRR btilde_rr_from_json(const MonadInstance& inst, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("r"))
    throw UsageError("section argument must be {\"n\":..., \"r\":...}");
  int n = j["n"].get<int>();
  return BTildeRR{n, term_from_json(inst, n, j["r"])};
}

nlohmann::json btilde_rr_to_json(const MonadInstance& inst, const BTildeRR& b) {
  return nlohmann::json{{"n", b.n}, {"r", term_to_json(inst, b.r)}};
}

nlohmann::json ob_to_json(int n) { return nlohmann::json{{"n", n}}; }

template <typename T, typename Show>
nlohmann::json mode_result(BopMode mode, const std::function<T()>& ex,
                           const std::function<T()>& de, Show&& show) {
  nlohmann::json out;
  switch (mode) {
    case BopMode::Explicit:
      out["result"] = show(ex());
      break;
    case BopMode::Definitional:
      out["result"] = show(de());
      break;
    case BopMode::Both: {
      T a = ex();
      T b = de();
      out["explicit"] = show(a);
      out["definitional"] = show(b);
      out["agree"] = (a == b);
      break;
    }
  }
  return out;
}

nlohmann::json run_bop_crr(const Bundle& bd, const std::string& op, const nlohmann::json& args,
                           BopMode mode) {
  const MonadInstance& inst = *bd.rr;
  const CrrSystem& cc = *bd.crr;
  auto show_ob = [](int n) { return ob_to_json(n); };
  auto show_bt = [&inst](const BTildeRR& b) { return btilde_rr_to_json(inst, b); };
  if (op == "T") {
    int m = args.at("m").get<int>();
    int n = args.at("n").get<int>();
    return mode_result<int>(mode, [&] { return bop_T_explicit(m, n); },
                            [&] { return bop_T_definitional(cc, m, n); }, show_ob);
  }
  if (op == "Tt") {
    int m = args.at("m").get<int>();
    BTildeRR b = btilde_rr_from_json(inst, args.at("b"));
    return mode_result<BTildeRR>(mode, [&] { return bop_Tt_explicit(inst, m, b); },
                                 [&] { return bop_Tt_definitional(cc, m, b); }, show_bt);
  }
  if (op == "S") {
    BTildeRR b = btilde_rr_from_json(inst, args.at("b"));
    int n = args.at("n").get<int>();
    return mode_result<int>(mode, [&] { return bop_S_explicit(b, n); },
                            [&] { return bop_S_definitional(cc, b, n); }, show_ob);
  }
  if (op == "St") {
    BTildeRR b1 = btilde_rr_from_json(inst, args.at("b1"));
    BTildeRR b2 = btilde_rr_from_json(inst, args.at("b2"));
    return mode_result<BTildeRR>(mode, [&] { return bop_St_explicit(inst, b1, b2); },
                                 [&] { return bop_St_definitional(cc, b1, b2); }, show_bt);
  }
  if (op == "delta") {
    int n = args.at("n").get<int>();
    return mode_result<BTildeRR>(mode, [&] { return bop_delta_explicit(inst, n); },
                                 [&] { return bop_delta_definitional(cc, n); }, show_bt);
  }
  throw UsageError("unknown operation \"" + op + "\" (expected T | Tt | S | St | delta)");
}

nlohmann::json run_bop_crrlm(const Bundle& bd, const std::string& op, const nlohmann::json& args,
                             BopMode mode) {
  const CrrLm& c = *bd.lm;
  auto show_ob = [&c](const ExtObjLM& x) { return extobj_to_json(c, x); };
  auto show_bt = [&c](const BTildeLM& b) { return btilde_lm_to_json(c, b); };
  if (op == "T") {
    ExtObjLM a = extobj_from_json(c, args.at("a"));
    ExtObjLM b = extobj_from_json(c, args.at("b"));
    return mode_result<ExtObjLM>(mode, [&] { return bop_lm_T_explicit(c, a, b); },
                                 [&] { return bop_lm_T_definitional(c, a, b); }, show_ob);
  }
  if (op == "Tt") {
    ExtObjLM a = extobj_from_json(c, args.at("a"));
    BTildeLM b = btilde_lm_from_json(c, args.at("b"));
    return mode_result<BTildeLM>(mode, [&] { return bop_lm_Tt_explicit(c, a, b); },
                                 [&] { return bop_lm_Tt_definitional(c, a, b); }, show_bt);
  }
  if (op == "S") {
    BTildeLM b = btilde_lm_from_json(c, args.at("b"));
    ExtObjLM y = extobj_from_json(c, args.at("y"));
    return mode_result<ExtObjLM>(mode, [&] { return bop_lm_S_explicit(c, b, y); },
                                 [&] { return bop_lm_S_definitional(c, b, y); }, show_ob);
  }
  if (op == "St") {
    BTildeLM b1 = btilde_lm_from_json(c, args.at("b1"));
    BTildeLM b2 = btilde_lm_from_json(c, args.at("b2"));
    return mode_result<BTildeLM>(mode, [&] { return bop_lm_St_explicit(c, b1, b2); },
                                 [&] { return bop_lm_St_definitional(c, b1, b2); }, show_bt);
  }
  if (op == "delta") {
    ExtObjLM a = extobj_from_json(c, args.at("a"));
    return mode_result<BTildeLM>(mode, [&] { return bop_lm_delta_explicit(c, a); },
                                 [&] { return bop_lm_delta_definitional(c, a); }, show_bt);
  }
  throw UsageError("unknown operation \"" + op + "\" (expected T | Tt | S | St | delta)");
}

}  // namespace

nlohmann::json run_bop(const Bundle& b, const std::string& op, const nlohmann::json& args,
                       BopMode mode) {
  return b.is_ext() ? run_bop_crrlm(b, op, args, mode) : run_bop_crr(b, op, args, mode);
}

// ---------------------------------------------------------------------------
// Executable equivalence of the explicit and definitional operations

namespace {

using CheckBody = std::function<void(long long& cases)>;

void run_guarded(Report& rep, const std::string& name, const CheckBody& body) {
  long long cases = 0;
  try {
    body(cases);
    rep.pass(name, cases);
  } catch (const Error& e) {
    rep.fail(name, cases, e.what());
  }
}

void expect(bool cond, const std::string& witness) {
  if (!cond) throw ConsistencyError(witness);
}

}  // namespace

Report run_th1_equivalence(const CrrPtr& crr, const Budget& budget) {
  const MonadInstance& inst = crr->inst();
  Report rep;
  rep.suite = "th1:" + crr->name();
  rep.seed = budget.seed;
  rep.budgets = {{"max_len", budget.max_len}, {"samples", budget.samples}};
  const int max_n = budget.max_len;
  const bool ex = inst.enumerable();
  Rng rng(budget.seed);

  auto terms_at = [&](int n) {
    if (ex) return inst.enumerate_fn(n);
    std::vector<Term> out;
    int count = std::max(2, budget.samples / 24);
    for (int k = 0; k < count; ++k)
      out.push_back(inst.sample_fn(n, budget.term_size, rng.fork_seed()));
    return out;
  };

  run_guarded(rep, "T", [&](long long& cases) {
    for (int m = 1; m <= max_n; ++m)
      for (int n = m; n <= max_n; ++n) {
        ++cases;
        int lhs = bop_T_explicit(m, n);
        int rhs = bop_T_definitional(*crr, m, n);
        expect(lhs == rhs, "T(" + std::to_string(m) + "," + std::to_string(n) + "): " +
                               std::to_string(lhs) + " vs " + std::to_string(rhs));
      }
  });

  run_guarded(rep, "Tt", [&](long long& cases) {
    for (int m = 1; m <= max_n; ++m)
      for (int n = std::max(0, m - 1); n <= max_n; ++n)
        for (const Term& s : terms_at(n)) {
          ++cases;
          BTildeRR b{n, s};
          BTildeRR lhs = bop_Tt_explicit(inst, m, b);
          BTildeRR rhs = bop_Tt_definitional(*crr, m, b);
          expect(lhs == rhs, "Tt(m=" + std::to_string(m) + ", (" + std::to_string(n) + "," +
                                 term_show(inst, s) + ")): " + term_show(inst, lhs.r) +
                                 " vs " + term_show(inst, rhs.r));
        }
  });

  run_guarded(rep, "S", [&](long long& cases) {
    for (int m = 0; m + 2 <= max_n; ++m)
      for (const Term& r : terms_at(m))
        for (int n = m + 2; n <= max_n; ++n) {
          ++cases;
          BTildeRR b{m, r};
          int lhs = bop_S_explicit(b, n);
          int rhs = bop_S_definitional(*crr, b, n);
          expect(lhs == rhs, "S((" + std::to_string(m) + "," + term_show(inst, r) + ")," +
                                 std::to_string(n) + ")");
        }
  });

  run_guarded(rep, "St", [&](long long& cases) {
    for (int m = 0; m + 1 <= max_n; ++m)
      for (const Term& r : terms_at(m))
        for (int n = m + 1; n <= max_n; ++n)
          for (const Term& s : terms_at(n)) {
            ++cases;
            BTildeRR b1{m, r};
            BTildeRR b2{n, s};
            BTildeRR lhs = bop_St_explicit(inst, b1, b2);
            BTildeRR rhs = bop_St_definitional(*crr, b1, b2);
            expect(lhs == rhs, "St((" + std::to_string(m) + "," + term_show(inst, r) + "),(" +
                                   std::to_string(n) + "," + term_show(inst, s) + ")): " +
                                   term_show(inst, lhs.r) + " vs " + term_show(inst, rhs.r));
          }
  });

  run_guarded(rep, "delta", [&](long long& cases) {
    for (int n = 1; n <= max_n + 1; ++n) {
      ++cases;
      BTildeRR lhs = bop_delta_explicit(inst, n);
      BTildeRR rhs = bop_delta_definitional(*crr, n);
      expect(lhs == rhs, "delta(" + std::to_string(n) + ")");
    }
  });

  return rep;
}

Report run_th2_equivalence(const CrrLm& c, const Budget& budget) {
  const MonadInstance& inst = *c.rr;
  const LmInstance& lm = *c.lm;
  Report rep;
  rep.suite = "th2:" + c.sys->name();
  rep.seed = budget.seed;
  rep.budgets = {{"max_len", budget.max_len}, {"samples", budget.samples}};
  const int max_n = budget.max_len;
  const bool ex = inst.enumerable() && lm.enumerable();
  Rng rng(budget.seed);

  // telescopes of a given length; exhaustive when the module is enumerable,
  // otherwise sampled
  std::function<std::vector<std::vector<Val>>(int)> teles_at = [&](int len) {
    std::vector<std::vector<Val>> out;
    if (ex) {
      std::vector<std::vector<Val>> pools;
      for (int i = 0; i < len; ++i) {
        pools.push_back(lm.enumerate_fn(i));
        if (pools.back().empty()) return out;
      }
      std::vector<size_t> idx(static_cast<size_t>(len), 0);
      while (true) {
        std::vector<Val> tele;
        for (int i = 0; i < len; ++i) tele.push_back(pools[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]);
        out.push_back(std::move(tele));
        int k = len - 1;
        while (k >= 0) {
          if (++idx[static_cast<size_t>(k)] < pools[static_cast<size_t>(k)].size()) break;
          idx[static_cast<size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }
    } else {
      int count = std::max(2, budget.samples / 60);
      for (int k = 0; k < count; ++k) {
        std::vector<Val> tele;
        for (int i = 0; i < len; ++i)
          tele.push_back(lm.sample_fn(i, budget.term_size, rng.fork_seed()));
        out.push_back(std::move(tele));
      }
    }
    return out;
  };

  auto terms_at = [&](int n) {
    if (inst.enumerable()) return inst.enumerate_fn(n);
    std::vector<Term> out;
    int count = std::max(2, budget.samples / 60);
    for (int k = 0; k < count; ++k)
      out.push_back(inst.sample_fn(n, budget.term_size, rng.fork_seed()));
    return out;
  };

  // build a telescope agreeing with the given one up to `shared` entries
  auto with_prefix = [&](const std::vector<Val>& base, int shared, int len) {
    std::vector<std::vector<Val>> out;
    std::vector<std::vector<Val>> tails = teles_at(len);
    for (std::vector<Val>& t : tails) {
      for (int i = 0; i < shared && i < len; ++i) t[static_cast<size_t>(i)] = base[static_cast<size_t>(i)];
      out.push_back(std::move(t));
    }
    // deduplicate for enumerable instances (prefix overwriting creates repeats)
    if (ex) {
      std::vector<std::vector<Val>> uniq;
      for (std::vector<Val>& t : out) {
        bool seen = false;
        for (const std::vector<Val>& u : uniq)
          if (u == t) {
            seen = true;
            break;
          }
        if (!seen) uniq.push_back(std::move(t));
      }
      out = std::move(uniq);
    }
    return out;
  };

  run_guarded(rep, "T", [&](long long& cases) {
    for (int m = 1; m <= max_n; ++m)
      for (const std::vector<Val>& ta : teles_at(m))
        for (int n = m; n <= max_n; ++n)
          for (const std::vector<Val>& tb : with_prefix(ta, m - 1, n)) {
            ++cases;
            ExtObjLM a{m, ta}, b{n, tb};
            expect(bop_lm_T_explicit(c, a, b) == bop_lm_T_definitional(c, a, b),
                   "T disagreement at m=" + std::to_string(m) + " n=" + std::to_string(n));
          }
  });

  run_guarded(rep, "Tt", [&](long long& cases) {
    for (int m = 1; m <= max_n; ++m)
      for (const std::vector<Val>& ta : teles_at(m))
        for (int n = std::max(0, m - 1); n <= max_n; ++n)
          for (const std::vector<Val>& g : with_prefix(ta, m - 1, n + 1))
            for (const Term& s : terms_at(n)) {
              ++cases;
              ExtObjLM a{m, ta};
              BTildeLM b{n, g, s};
              expect(bop_lm_Tt_explicit(c, a, b) == bop_lm_Tt_definitional(c, a, b),
                     "Tt disagreement at m=" + std::to_string(m) + " n=" + std::to_string(n));
            }
  });

  run_guarded(rep, "S", [&](long long& cases) {
    for (int m = 0; m + 2 <= max_n; ++m)
      for (const std::vector<Val>& g : teles_at(m + 1))
        for (const Term& r : terms_at(m))
          for (int n = m + 2; n <= max_n; ++n)
            for (const std::vector<Val>& ty : with_prefix(g, m + 1, n)) {
              ++cases;
              BTildeLM b{m, g, r};
              ExtObjLM y{n, ty};
              expect(bop_lm_S_explicit(c, b, y) == bop_lm_S_definitional(c, b, y),
                     "S disagreement at m=" + std::to_string(m) + " n=" + std::to_string(n));
            }
  });

  run_guarded(rep, "St", [&](long long& cases) {
    for (int m = 0; m + 1 <= max_n; ++m)
      for (const std::vector<Val>& g : teles_at(m + 1))
        for (const Term& r : terms_at(m))
          for (int n = m + 1; n <= max_n; ++n)
            for (const std::vector<Val>& g2 : with_prefix(g, m + 1, n + 1))
              for (const Term& s : terms_at(n)) {
                ++cases;
                BTildeLM b1{m, g, r};
                BTildeLM b2{n, g2, s};
                expect(bop_lm_St_explicit(c, b1, b2) == bop_lm_St_definitional(c, b1, b2),
                       "St disagreement at m=" + std::to_string(m) + " n=" + std::to_string(n));
              }
  });

  run_guarded(rep, "delta", [&](long long& cases) {
    for (int m = 1; m <= max_n; ++m)
      for (const std::vector<Val>& ta : teles_at(m)) {
        ++cases;
        ExtObjLM a{m, ta};
        expect(bop_lm_delta_explicit(c, a) == bop_lm_delta_definitional(c, a),
               "delta disagreement at m=" + std::to_string(m));
      }
  });

  return rep;
}

}  // namespace csys
