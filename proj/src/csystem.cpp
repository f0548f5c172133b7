#include "csys/csystem.hpp"

namespace csys {

Obj ft_iter(const CSystem& cc, Obj x, int i) {
  if (i < 0) throw StructureError("negative father iteration");
  for (int k = 0; k < i; ++k) x = cc.ft(x);
  return x;
}

Mor p_iter(const CSystem& cc, const Obj& x, int i) {
  if (i < 0 || i > cc.length(x))
    throw StructureError("projection depth " + std::to_string(i) + " exceeds length " +
                         std::to_string(cc.length(x)));
  if (i == 0) return cc.identity(x);
  return cc.compose(cc.p(x), p_iter(cc, cc.ft(x), i - 1));
}

bool leq(const CSystem& cc, const Obj& x, const Obj& y) {
  int lx = cc.length(x), ly = cc.length(y);
  if (lx > ly) return false;
  return cc.obj_eq(x, ft_iter(cc, y, ly - lx));
}

bool lt(const CSystem& cc, const Obj& x, const Obj& y) {
  return cc.length(x) < cc.length(y) && leq(cc, x, y);
}

Mor p_to(const CSystem& cc, const Obj& from, const Obj& to) {
  if (!leq(cc, to, from))
    throw StructureError("no canonical projection: target is not an iterated father");
  return p_iter(cc, from, cc.length(from) - cc.length(to));
}

bool is_over(const CSystem& cc, const Mor& f, const Obj& base) {
  const Obj d = cc.dom(f), c = cc.cod(f);
  if (!leq(cc, base, d) || !leq(cc, base, c))
    throw StructureError("base is not below both endpoints");
  return cc.mor_eq(cc.compose(f, p_to(cc, c, base)), p_to(cc, d, base));
}

std::pair<Obj, Mor> star_q_iter(const CSystem& cc, const Mor& f, const Obj& y, int i) {
  if (i < 0 || i > cc.length(y)) throw StructureError("pullback depth exceeds length");
  if (i == 0) {
    if (!cc.obj_eq(cc.cod(f), y))
      throw StructureError("codomain does not match the pullback target");
    return {cc.dom(f), f};
  }
  auto [o1, q1] = star_q_iter(cc, f, cc.ft(y), i - 1);
  (void)o1;
  return {cc.star(q1, y), cc.q(q1, y)};
}

Obj star_iter(const CSystem& cc, const Mor& f, const Obj& y, int i) {
  return star_q_iter(cc, f, y, i).first;
}

Mor q_iter(const CSystem& cc, const Mor& f, const Obj& y, int i) {
  return star_q_iter(cc, f, y, i).second;
}

namespace {
int inferred_depth(const CSystem& cc, const Mor& f, const Obj& y) {
  const Obj d = cc.cod(f);
  if (!leq(cc, d, y))
    throw StructureError("target is not over the codomain of the base-change morphism");
  return cc.length(y) - cc.length(d);
}
}  // namespace

Obj star_of(const CSystem& cc, const Mor& f, const Obj& y) {
  return star_iter(cc, f, y, inferred_depth(cc, f, y));
}

Mor q_of(const CSystem& cc, const Mor& f, const Obj& y) {
  return q_iter(cc, f, y, inferred_depth(cc, f, y));
}

Mor star_mor(const CSystem& cc, const Mor& f, const Mor& a) {
  const Obj base = cc.cod(f);
  const Obj ga = cc.dom(a), gb = cc.cod(a);
  if (!leq(cc, base, ga) || !leq(cc, base, gb))
    throw StructureError("morphism endpoints are not over the base-change target");
  if (!is_over(cc, a, base)) throw StructureError("morphism does not lie over the target");

  Mor g = cc.star_mor_impl(f, a);

  const Obj want_dom = star_of(cc, f, ga);
  const Obj want_cod = star_of(cc, f, gb);
  if (!cc.obj_eq(cc.dom(g), want_dom) || !cc.obj_eq(cc.cod(g), want_cod))
    throw ConsistencyError("base change produced wrong endpoints: " + cc.show_mor(g));
  // the square with the chosen q-morphisms commutes
  Mor lhs = cc.compose(g, q_of(cc, f, gb));
  Mor rhs = cc.compose(q_of(cc, f, ga), a);
  if (!cc.mor_eq(lhs, rhs))
    throw ConsistencyError("base change violates the pullback square: f=" + cc.show_mor(f) +
                           " a=" + cc.show_mor(a));
  // and the result lies over dom(f)
  if (!is_over(cc, g, cc.dom(f)))
    throw ConsistencyError("base change does not lie over the new base: " + cc.show_mor(g));
  return g;
}

bool is_section(const CSystem& cc, const Mor& s) {
  const Obj c = cc.cod(s);
  if (cc.length(c) == 0) return false;
  if (!cc.obj_eq(cc.dom(s), cc.ft(c))) return false;
  return cc.mor_eq(cc.compose(s, cc.p(c)), cc.identity(cc.dom(s)));
}

SectionWitness make_section(const CSystem& cc, Mor s) {
  if (!is_section(cc, s))
    throw SectionError("not a section of a canonical projection: " + cc.show_mor(s));
  return SectionWitness{std::move(s)};
}

SectionWitness section_of(const CSystem& cc, const Mor& f) {
  const Obj y = cc.cod(f);
  if (cc.length(y) == 0) throw SectionError("no canonical section into an object of length 0");
  Mor s = cc.section_of_impl(f);
  Mor ftf = cc.compose(f, cc.p(y));
  if (!cc.obj_eq(cc.dom(s), cc.dom(f)) || !cc.obj_eq(cc.cod(s), cc.star(ftf, y)))
    throw ConsistencyError("canonical section has wrong endpoints: " + cc.show_mor(s));
  if (!cc.mor_eq(cc.compose(s, cc.p(cc.cod(s))), cc.identity(cc.dom(s))))
    throw ConsistencyError("canonical section fails s . p = id: " + cc.show_mor(s));
  if (!cc.mor_eq(cc.compose(s, cc.q(ftf, y)), f))
    throw ConsistencyError("canonical section fails s . q = f: " + cc.show_mor(s));
  return SectionWitness{std::move(s)};
}

SectionWitness delta_section(const CSystem& cc, const Obj& x) {
  if (cc.length(x) == 0)
    throw BopDomainError("delta requires length > 0");
  return section_of(cc, cc.identity(x));
}

}  // namespace csys
