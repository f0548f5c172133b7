#include "csys/checks.hpp"

#include <algorithm>

#include "csys/rng.hpp"

namespace csys {

namespace {

std::vector<Obj> gather_objects(const CSystem& cc, const Budget& b, Rng& rng) {
  if (cc.objects_enumerable()) return cc.objects_up_to(b.max_len);
  std::vector<Obj> out;
  out.push_back(cc.pt());
  const int per_len = std::max(2, b.samples / (8 * std::max(1, b.max_len)));
  for (int l = 1; l <= b.max_len; ++l)
    for (int k = 0; k < per_len; ++k) {
      Obj o = cc.sample_obj(l, b.term_size, rng.fork_seed());
      bool dup = false;
      for (const Obj& seen : out)
        if (cc.obj_eq(seen, o)) { dup = true; break; }
      if (!dup) out.push_back(std::move(o));
    }
  return out;
}

std::vector<Mor> gather_hom(const CSystem& cc, const Obj& x, const Obj& y, const Budget& b,
                            Rng& rng, int cap) {
  if (cc.homs_enumerable()) {
    std::vector<Mor> all = cc.hom(x, y);
    if (static_cast<int>(all.size()) > cap) all.resize(static_cast<size_t>(cap));
    return all;
  }
  std::vector<Mor> out;
  const int count = std::min(cap, 3);
  for (int k = 0; k < count; ++k)
    out.push_back(cc.sample_mor(x, y, b.term_size, rng.fork_seed()));
  return out;
}

constexpr int kHomCap = 1 << 14;

}  // namespace

Report check_c0_axioms(const CSystem& cc, const Budget& budget) {
  Report rep;
  rep.suite = "c0-axioms:" + cc.name();
  rep.seed = budget.seed;
  rep.budgets = {{"max_len", budget.max_len},
                 {"samples", budget.samples},
                 {"term_size", budget.term_size}};
  Rng rng(budget.seed);
  std::vector<Obj> objs = gather_objects(cc, budget, rng);
  const Obj pt = cc.pt();

  {  // a unique object of length 0
    long long cases = 0;
    bool bad = false;
    for (const Obj& o : objs) {
      ++cases;
      if (cc.length(o) == 0 && !cc.obj_eq(o, pt)) {
        rep.fail("unique-length-0", cases, "second length-0 object " + cc.show_obj(o));
        bad = true;
        break;
      }
    }
    if (cc.length(pt) != 0) {
      rep.fail("unique-length-0", cases, "pt has nonzero length");
      bad = true;
    }
    if (!bad) rep.pass("unique-length-0", cases);
  }

  {  // ft drops length by one and p projects onto it
    long long cases = 0;
    bool bad = false;
    for (const Obj& o : objs) {
      if (cc.length(o) == 0) continue;
      ++cases;
      Obj f = cc.ft(o);
      Mor po = cc.p(o);
      if (cc.length(f) != cc.length(o) - 1 || !cc.obj_eq(cc.dom(po), o) ||
          !cc.obj_eq(cc.cod(po), f)) {
        rep.fail("ft-length", cases, "at " + cc.show_obj(o));
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("ft-length", cases);
  }

  if (!cc.obj_eq(cc.ft(pt), pt))
    rep.fail("ft-pt", 1, "ft(pt) differs from pt");
  else
    rep.pass("ft-pt", 1);

  {  // pt is final
    long long cases = 0;
    bool bad = false;
    for (const Obj& o : objs) {
      ++cases;
      std::vector<Mor> into_pt = cc.hom(o, pt);
      if (into_pt.size() != 1) {
        rep.fail("pt-final", cases,
                 cc.show_obj(o) + " has " + std::to_string(into_pt.size()) +
                     " morphisms into pt");
        bad = true;
        break;
      }
      if (!cc.mor_eq(into_pt[0], p_iter(cc, o, cc.length(o)))) {
        rep.fail("pt-final", cases, "terminal morphism differs from the canonical projection");
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("pt-final", cases);
  }

  {  // q(f,Y) . p_Y = p_{f*(Y)} . f, and ft(f*(Y)) = dom(f)
    long long cases = 0;
    bool bad = false;
    for (const Obj& y : objs) {
      if (bad || cc.length(y) == 0) continue;
      Obj fty = cc.ft(y);
      for (const Obj& x : objs) {
        if (bad) break;
        for (const Mor& f : gather_hom(cc, x, fty, budget, rng, kHomCap)) {
          ++cases;
          Obj a = cc.star(f, y);
          Mor qf = cc.q(f, y);
          if (!cc.obj_eq(cc.ft(a), x) || !cc.obj_eq(cc.dom(qf), a) ||
              !cc.obj_eq(cc.cod(qf), y) ||
              !cc.mor_eq(cc.compose(qf, cc.p(y)), cc.compose(cc.p(a), f))) {
            rep.fail("q-p-square", cases,
                     "f=" + cc.show_mor(f) + " Y=" + cc.show_obj(y));
            bad = true;
            break;
          }
        }
      }
    }
    if (!bad) rep.pass("q-p-square", cases);
  }

  {  // identity compatibility
    long long cases = 0;
    bool bad = false;
    for (const Obj& y : objs) {
      if (cc.length(y) == 0) continue;
      ++cases;
      Mor id = cc.identity(cc.ft(y));
      if (!cc.obj_eq(cc.star(id, y), y) || !cc.mor_eq(cc.q(id, y), cc.identity(y))) {
        rep.fail("star-identity", cases, "at " + cc.show_obj(y));
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("star-identity", cases);
  }

  {  // composition compatibility
    long long cases = 0;
    bool bad = false;
    for (const Obj& y : objs) {
      if (bad || cc.length(y) == 0) continue;
      Obj fty = cc.ft(y);
      for (const Obj& x : objs) {
        if (bad) break;
        for (const Mor& f : gather_hom(cc, x, fty, budget, rng, 64)) {
          if (bad) break;
          for (const Obj& w : objs) {
            if (bad) break;
            for (const Mor& g : gather_hom(cc, w, x, budget, rng, 64)) {
              ++cases;
              Mor gf = cc.compose(g, f);
              Obj lhs_o = cc.star(gf, y);
              Obj rhs_o = cc.star(g, cc.star(f, y));
              Mor lhs_q = cc.q(gf, y);
              Mor rhs_q = cc.compose(cc.q(g, cc.star(f, y)), cc.q(f, y));
              if (!cc.obj_eq(lhs_o, rhs_o) || !cc.mor_eq(lhs_q, rhs_q)) {
                rep.fail("star-composition", cases,
                         "g=" + cc.show_mor(g) + " f=" + cc.show_mor(f) +
                             " Y=" + cc.show_obj(y));
                bad = true;
                break;
              }
            }
          }
        }
      }
    }
    if (!bad) rep.pass("star-composition", cases);
  }

  return rep;
}

Report check_pullbacks(const CSystem& cc, const Budget& budget) {
  Report rep;
  rep.suite = "pullbacks:" + cc.name();
  rep.seed = budget.seed;
  rep.budgets = {{"max_len", budget.max_len}};
  if (!cc.objects_enumerable() || !cc.homs_enumerable()) {
    rep.skip("universal-property", "hom-sets are not enumerable");
    return rep;
  }
  std::vector<Obj> objs = cc.objects_up_to(budget.max_len);
  const size_t nobj = objs.size();
  // hom tables are reused across squares; index morphisms once
  std::vector<std::vector<std::vector<Mor>>> homs(nobj, std::vector<std::vector<Mor>>(nobj));
  auto obj_index = [&](const Obj& o) {
    for (size_t i = 0; i < nobj; ++i)
      if (cc.obj_eq(objs[i], o)) return static_cast<int>(i);
    return -1;
  };
  for (size_t i = 0; i < nobj; ++i)
    for (size_t j = 0; j < nobj; ++j) homs[i][j] = cc.hom(objs[i], objs[j]);

  long long cases = 0;
  for (size_t yi = 0; yi < nobj; ++yi) {
    const Obj& y = objs[yi];
    if (cc.length(y) == 0) continue;
    Obj fty = cc.ft(y);
    int fty_i = obj_index(fty);
    if (fty_i < 0) continue;
    Mor py = cc.p(y);
    for (size_t xi = 0; xi < nobj; ++xi) {
      const Obj& x = objs[xi];
      for (const Mor& f : homs[xi][static_cast<size_t>(fty_i)]) {
        Obj a = cc.star(f, y);
        int ai = obj_index(a);
        Mor qf = cc.q(f, y);
        Mor pa = cc.p(a);
        for (size_t zi = 0; zi < nobj; ++zi) {
          const Obj& z = objs[zi];
          const std::vector<Mor>& zy = homs[zi][yi];
          const std::vector<Mor>& zx = homs[zi][xi];
          // candidate factorizations and their legs, composed once
          std::vector<Mor> za;
          if (ai >= 0) {
            za = homs[zi][static_cast<size_t>(ai)];
          } else {
            za = cc.hom(z, a);
          }
          std::vector<Mor> hq, hp;
          hq.reserve(za.size());
          hp.reserve(za.size());
          for (const Mor& h : za) {
            hq.push_back(cc.compose(h, qf));
            hp.push_back(cc.compose(h, pa));
          }
          std::vector<Mor> af;
          af.reserve(zx.size());
          for (const Mor& alpha : zx) af.push_back(cc.compose(alpha, f));
          for (const Mor& beta : zy) {
            Mor beta_p = cc.compose(beta, py);
            for (size_t k = 0; k < zx.size(); ++k) {
              if (!cc.mor_eq(beta_p, af[k])) continue;
              ++cases;
              int found = 0;
              for (size_t hk = 0; hk < za.size(); ++hk)
                if (cc.mor_eq(hq[hk], beta) && cc.mor_eq(hp[hk], zx[k]))
                  ++found;
              if (found != 1) {
                rep.fail("universal-property", cases,
                         "square f=" + cc.show_mor(f) + " Y=" + cc.show_obj(y) +
                             ": cone from " + cc.show_obj(z) + " factors " +
                             std::to_string(found) + " times");
                return rep;
              }
            }
          }
        }
      }
    }
  }
  rep.pass("universal-property", cases);
  return rep;
}

Report check_star_mor_unique(const CSystem& cc, const Budget& budget) {
  Report rep;
  rep.suite = "star-mor-unique:" + cc.name();
  rep.seed = budget.seed;
  rep.budgets = {{"max_len", budget.max_len}};
  if (!cc.objects_enumerable() || !cc.homs_enumerable()) {
    rep.skip("uniqueness", "hom-sets are not enumerable");
    return rep;
  }
  std::vector<Obj> objs = cc.objects_up_to(budget.max_len);
  long long cases = 0;
  for (const Obj& d : objs) {
    for (const Obj& ga : objs) {
      if (!leq(cc, d, ga)) continue;
      for (const Obj& gb : objs) {
        if (!leq(cc, d, gb)) continue;
        std::vector<Mor> overs;
        for (const Mor& a : cc.hom(ga, gb))
          if (is_over(cc, a, d)) overs.push_back(a);
        if (overs.empty()) continue;
        for (const Obj& g : objs) {
          // keep the candidate hom-sets small enough to enumerate
          if (cc.length(g) + cc.length(ga) - cc.length(d) > budget.max_len + 1) continue;
          if (cc.length(g) + cc.length(gb) - cc.length(d) > budget.max_len + 1) continue;
          for (const Mor& f : cc.hom(g, d)) {
            Obj src = star_of(cc, f, ga);
            Obj dst = star_of(cc, f, gb);
            Mor qga = q_of(cc, f, ga);
            Mor qgb = q_of(cc, f, gb);
            // solutions are sought among morphisms over g; compose their
            // square leg once
            std::vector<Mor> lhs;
            for (const Mor& cand : cc.hom(src, dst))
              if (is_over(cc, cand, g)) lhs.push_back(cc.compose(cand, qgb));
            for (const Mor& a : overs) {
              ++cases;
              Mor fa = star_mor(cc, f, a);
              Mor rhs = cc.compose(qga, a);
              int found = 0;
              for (const Mor& l : lhs)
                if (cc.mor_eq(l, rhs)) ++found;
              if (found != 1) {
                rep.fail("uniqueness", cases,
                         std::to_string(found) + " solutions for f=" + cc.show_mor(f) +
                             " a=" + cc.show_mor(a));
                return rep;
              }
              (void)fa;
            }
          }
        }
      }
    }
  }
  rep.pass("uniqueness", cases);
  return rep;
}

namespace {

// morphisms over a given base object, harvested from canonical data
struct OverDatum {
  Mor a;
  Obj base;
};

std::vector<OverDatum> gather_over(const CSystem& cc, const std::vector<Obj>& objs,
                                   const Budget& budget, Rng& rng) {
  std::vector<OverDatum> out;
  for (const Obj& d : objs) {
    for (const Obj& ga : objs) {
      if (!leq(cc, d, ga)) continue;
      out.push_back({cc.identity(ga), d});
      for (const Obj& gb : objs) {
        if (!leq(cc, d, gb) || !leq(cc, gb, ga)) continue;
        out.push_back({p_to(cc, ga, gb), d});
      }
      // canonical sections of sampled/enumerated morphisms out of ga
      bool have_section = false;
      for (const Obj& y : objs) {
        if (have_section || cc.length(y) == 0) continue;
        for (const Mor& g : gather_hom(cc, ga, y, budget, rng, 4)) {
          out.push_back({section_of(cc, g).mor, d});
          have_section = true;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace

Report check_homomorphism(const CHom& h, const Budget& budget) {
  Report rep;
  rep.suite = "homomorphism:" + h.name;
  rep.seed = budget.seed;
  rep.budgets = {{"max_len", budget.max_len}, {"samples", budget.samples}};
  Rng rng(budget.seed);
  const CSystem& S = *h.src;
  const CSystem& D = *h.dst;
  std::vector<Obj> objs = gather_objects(S, budget, rng);

  {  // candidate data: pt, lengths, ft, p, one-step star and q, functor laws
    long long cases = 0;
    bool bad = false;
    if (!D.obj_eq(h.on_obj(S.pt()), D.pt())) {
      rep.fail("preserves-structure", 0, "pt is not preserved");
      bad = true;
    }
    for (const Obj& o : objs) {
      if (bad) break;
      ++cases;
      Obj fo = h.on_obj(o);
      if (S.length(o) != D.length(fo) || !D.obj_eq(h.on_obj(S.ft(o)), D.ft(fo))) {
        rep.fail("preserves-structure", cases, "length/ft at " + S.show_obj(o));
        bad = true;
        break;
      }
      if (S.length(o) > 0 && !D.mor_eq(h.on_mor(S.p(o)), D.p(fo))) {
        rep.fail("preserves-structure", cases, "p at " + S.show_obj(o));
        bad = true;
        break;
      }
      if (!D.mor_eq(h.on_mor(S.identity(o)), D.identity(fo))) {
        rep.fail("preserves-structure", cases, "identity at " + S.show_obj(o));
        bad = true;
        break;
      }
    }
    for (const Obj& y : objs) {
      if (bad || S.length(y) == 0) continue;
      for (const Obj& x : objs) {
        if (bad) break;
        for (const Mor& f : gather_hom(S, x, S.ft(y), budget, rng, 16)) {
          ++cases;
          if (!D.obj_eq(h.on_obj(S.star(f, y)), D.star(h.on_mor(f), h.on_obj(y))) ||
              !D.mor_eq(h.on_mor(S.q(f, y)), D.q(h.on_mor(f), h.on_obj(y)))) {
            rep.fail("preserves-structure", cases, "star/q at f=" + S.show_mor(f));
            bad = true;
            break;
          }
        }
      }
    }
    for (const Obj& x : objs) {
      if (bad) break;
      for (const Obj& y : objs) {
        if (bad) break;
        for (const Mor& f : gather_hom(S, x, y, budget, rng, 8)) {
          if (bad) break;
          for (const Obj& z : objs) {
            if (bad) break;
            for (const Mor& g : gather_hom(S, y, z, budget, rng, 8)) {
              ++cases;
              if (!D.mor_eq(h.on_mor(S.compose(f, g)),
                            D.compose(h.on_mor(f), h.on_mor(g)))) {
                rep.fail("preserves-structure", cases, "composition at f=" + S.show_mor(f));
                bad = true;
                break;
              }
            }
          }
        }
      }
    }
    if (!bad) rep.pass("preserves-structure", cases);
  }

  {  // iterated canonical projections
    long long cases = 0;
    bool bad = false;
    for (const Obj& o : objs) {
      if (bad) break;
      for (int i = 0; i <= S.length(o); ++i) {
        ++cases;
        if (!D.mor_eq(h.on_mor(p_iter(S, o, i)), p_iter(D, h.on_obj(o), i))) {
          rep.fail("p-iter", cases, "at " + S.show_obj(o) + " depth " + std::to_string(i));
          bad = true;
          break;
        }
      }
    }
    if (!bad) rep.pass("p-iter", cases);
  }

  {  // monotonicity of the father order
    long long cases = 0;
    bool bad = false;
    for (const Obj& a : objs) {
      if (bad) break;
      for (const Obj& b : objs) {
        ++cases;
        if (leq(S, a, b) && !leq(D, h.on_obj(a), h.on_obj(b))) {
          rep.fail("order", cases, S.show_obj(a) + " <= " + S.show_obj(b) + " not preserved");
          bad = true;
          break;
        }
        if (lt(S, a, b) && !lt(D, h.on_obj(a), h.on_obj(b))) {
          rep.fail("order", cases, "strict order not preserved");
          bad = true;
          break;
        }
      }
    }
    if (!bad) rep.pass("order", cases);
  }

  {  // iterated base change of objects
    long long cases = 0;
    bool bad = false;
    for (const Obj& d : objs) {
      if (bad) break;
      for (const Obj& gp : objs) {
        if (bad) break;
        if (!leq(S, d, gp)) continue;
        for (const Obj& g : objs) {
          if (bad) break;
          for (const Mor& f : gather_hom(S, g, d, budget, rng, 8)) {
            ++cases;
            if (!D.obj_eq(h.on_obj(star_of(S, f, gp)), star_of(D, h.on_mor(f), h.on_obj(gp)))) {
              rep.fail("star-objects", cases,
                       "f=" + S.show_mor(f) + " target " + S.show_obj(gp));
              bad = true;
              break;
            }
          }
        }
      }
    }
    if (!bad) rep.pass("star-objects", cases);
  }

  {  // base change of morphisms lying over an object
    long long cases = 0;
    bool bad = false;
    std::vector<OverDatum> overs = gather_over(S, objs, budget, rng);
    for (const OverDatum& od : overs) {
      if (bad) break;
      for (const Obj& g : objs) {
        if (bad) break;
        for (const Mor& f : gather_hom(S, g, od.base, budget, rng, 6)) {
          ++cases;
          Mor lhs = h.on_mor(star_mor(S, f, od.a));
          Mor rhs = star_mor(D, h.on_mor(f), h.on_mor(od.a));
          if (!D.mor_eq(lhs, rhs)) {
            rep.fail("star-morphisms", cases,
                     "f=" + S.show_mor(f) + " a=" + S.show_mor(od.a));
            bad = true;
            break;
          }
        }
      }
    }
    if (!bad) rep.pass("star-morphisms", cases);
  }

  {  // diagonals
    long long cases = 0;
    bool bad = false;
    for (const Obj& o : objs) {
      if (S.length(o) == 0) continue;
      ++cases;
      if (!D.mor_eq(h.on_mor(delta_section(S, o).mor), delta_section(D, h.on_obj(o)).mor)) {
        rep.fail("delta", cases, "at " + S.show_obj(o));
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("delta", cases);
  }

  return rep;
}

Report check_presheaf_laws(const CSystem& cc, const Presheaf& f, const Budget& budget) {
  Report rep;
  rep.suite = "presheaf-laws:" + f.name() + "@" + cc.name();
  rep.seed = budget.seed;
  rep.budgets = {{"max_len", budget.max_len}, {"samples", budget.samples}};
  Rng rng(budget.seed);
  std::vector<Obj> objs = gather_objects(cc, budget, rng);

  auto values_at = [&](const Obj& x) {
    if (f.enumerable()) return f.at(x);
    std::vector<Val> out;
    for (int k = 0; k < 4; ++k) out.push_back(f.sample(x, budget.term_size, rng.fork_seed()));
    return out;
  };

  {  // identity law
    long long cases = 0;
    bool bad = false;
    for (const Obj& x : objs) {
      if (bad) break;
      for (const Val& e : values_at(x)) {
        ++cases;
        if (!(f.act(cc.identity(x), e) == e)) {
          rep.fail("identity", cases, "at " + cc.show_obj(x) + " value " + e.show());
          bad = true;
          break;
        }
      }
    }
    if (!bad) rep.pass("identity", cases);
  }

  {  // composition law (contravariant)
    long long cases = 0;
    bool bad = false;
    for (const Obj& x : objs) {
      if (bad) break;
      for (const Obj& y : objs) {
        if (bad) break;
        for (const Mor& g : gather_hom(cc, x, y, budget, rng, 8)) {
          if (bad) break;
          for (const Obj& z : objs) {
            if (bad) break;
            for (const Mor& k : gather_hom(cc, y, z, budget, rng, 8)) {
              if (bad) break;
              for (const Val& e : values_at(z)) {
                ++cases;
                Val lhs = f.act(cc.compose(g, k), e);
                Val rhs = f.act(g, f.act(k, e));
                if (!(lhs == rhs)) {
                  rep.fail("composition", cases,
                           "g=" + cc.show_mor(g) + " k=" + cc.show_mor(k) +
                               " value " + e.show());
                  bad = true;
                  break;
                }
              }
            }
          }
        }
      }
    }
    if (!bad) rep.pass("composition", cases);
  }

  return rep;
}

}  // namespace csys
