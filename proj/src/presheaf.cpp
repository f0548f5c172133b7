#include "csys/presheaf.hpp"

#include <sstream>

#include "csys/rng.hpp"

namespace csys {

namespace {

struct UnitPresheaf : Presheaf {
  std::string name() const override { return "unit"; }
  Val act(const Mor&, const Val&) const override { return unit_val(); }
  bool valid_at(const Obj&, const Val& e) const override { return e == unit_val(); }
  bool enumerable() const override { return true; }
  std::vector<Val> at(const Obj&) const override { return {unit_val()}; }
  Val sample(const Obj&, int, std::uint64_t) const override { return unit_val(); }
};

struct ExtObjData : ObjData {
  ExtObjData(const CSystem* owner, Obj base, std::vector<Val> tele)
      : ObjData(owner), base(std::move(base)), tele(std::move(tele)) {}
  Obj base;
  std::vector<Val> tele;
};

struct ExtMorData : MorData {
  ExtMorData(const CSystem* owner, Obj src, Obj dst, Mor base)
      : MorData(owner), src(std::move(src)), dst(std::move(dst)), base(std::move(base)) {}
  Obj src, dst;
  Mor base;
};

}  // namespace

PresheafPtr unit_presheaf() { return std::make_shared<UnitPresheaf>(); }

ExtSystem::ExtSystem(SystemPtr base, PresheafPtr f) : base_(std::move(base)), f_(std::move(f)) {
  if (!base_ || !f_) throw StructureError("extension needs a base system and a presheaf");
}

ExtPtr ext_build(SystemPtr base, PresheafPtr f) {
  return std::make_shared<ExtSystem>(std::move(base), std::move(f));
}

Obj ExtSystem::make_obj(const Obj& base_obj, std::vector<Val> tele) const {
  const int l = base_->length(base_obj);
  if (static_cast<int>(tele.size()) != l)
    throw TelescopeError("telescope length " + std::to_string(tele.size()) +
                         " does not match object length " + std::to_string(l));
  for (int i = 0; i < l; ++i) {
    Obj level = ft_iter(*base_, base_obj, l - i);
    if (!f_->valid_at(level, tele[static_cast<size_t>(i)]))
      throw TelescopeError("telescope entry " + std::to_string(i) +
                           " is not a presheaf value at " + base_->show_obj(level));
  }
  return std::make_shared<ExtObjData>(this, base_obj, std::move(tele));
}

Mor ExtSystem::make_mor(const Obj& src, const Obj& dst, const Mor& base_mor) const {
  const ExtObjData& s = cast_obj<ExtObjData>(src);
  const ExtObjData& d = cast_obj<ExtObjData>(dst);
  if (!base_->obj_eq(base_->dom(base_mor), s.base) ||
      !base_->obj_eq(base_->cod(base_mor), d.base))
    throw StructureError("base morphism endpoints do not match the decorated endpoints");
  return std::make_shared<ExtMorData>(this, src, dst, base_mor);
}

Obj ExtSystem::base_obj(const Obj& o) const { return cast_obj<ExtObjData>(o).base; }

const std::vector<Val>& ExtSystem::telescope(const Obj& o) const {
  return cast_obj<ExtObjData>(o).tele;
}

Mor ExtSystem::base_mor(const Mor& m) const { return cast_mor<ExtMorData>(m).base; }

std::string ExtSystem::name() const { return base_->name() + "[" + f_->name() + "]"; }

Obj ExtSystem::pt() const {
  return std::make_shared<ExtObjData>(this, base_->pt(), std::vector<Val>{});
}

int ExtSystem::length(const Obj& x) const { return base_->length(base_obj(x)); }

Obj ExtSystem::ft(const Obj& x) const {
  const ExtObjData& d = cast_obj<ExtObjData>(x);
  if (d.tele.empty()) return x;
  std::vector<Val> tele(d.tele.begin(), d.tele.end() - 1);
  return std::make_shared<ExtObjData>(this, base_->ft(d.base), std::move(tele));
}

Mor ExtSystem::p(const Obj& x) const {
  return make_mor(x, ft(x), base_->p(base_obj(x)));
}

Obj ExtSystem::dom(const Mor& f) const { return cast_mor<ExtMorData>(f).src; }

Obj ExtSystem::cod(const Mor& f) const { return cast_mor<ExtMorData>(f).dst; }

Mor ExtSystem::identity(const Obj& x) const {
  return make_mor(x, x, base_->identity(base_obj(x)));
}

Mor ExtSystem::compose(const Mor& f, const Mor& g) const {
  if (!obj_eq(cod(f), dom(g)))
    throw ComposeError("cannot compose extension morphisms: endpoints differ");
  return make_mor(dom(f), cod(g), base_->compose(base_mor(f), base_mor(g)));
}

Obj ExtSystem::star(const Mor& f, const Obj& y) const {
  if (length(y) == 0) throw StructureError("pullback target must have positive length");
  if (!obj_eq(cod(f), ft(y)))
    throw StructureError("codomain must be the father of the target");
  const Mor fb = base_mor(f);
  const std::vector<Val>& ty = telescope(y);
  std::vector<Val> tele = telescope(dom(f));
  // the new top entry is the old top acted on by the base morphism itself
  tele.push_back(f_->act(fb, ty.back()));
  return make_obj(base_->star(fb, base_obj(y)), std::move(tele));
}

Mor ExtSystem::q(const Mor& f, const Obj& y) const {
  if (length(y) == 0) throw StructureError("pullback target must have positive length");
  if (!obj_eq(cod(f), ft(y)))
    throw StructureError("codomain must be the father of the target");
  return make_mor(star(f, y), y, base_->q(base_mor(f), base_obj(y)));
}

Mor ExtSystem::section_of_impl(const Mor& f) const {
  const Obj y = cod(f);
  if (length(y) == 0) throw SectionError("no canonical section into an object of length 0");
  Mor ftf = compose(f, p(y));
  return make_mor(dom(f), star(ftf, y), base_->section_of_impl(base_mor(f)));
}

Mor ExtSystem::star_mor_impl(const Mor& f, const Mor& a) const {
  Obj src = star_of(*this, f, dom(a));
  Obj dst = star_of(*this, f, cod(a));
  return make_mor(src, dst, base_->star_mor_impl(base_mor(f), base_mor(a)));
}

bool ExtSystem::obj_eq(const Obj& a, const Obj& b) const {
  if (a.get() == b.get()) return true;
  const ExtObjData& da = cast_obj<ExtObjData>(a);
  const ExtObjData& db = cast_obj<ExtObjData>(b);
  if (!base_->obj_eq(da.base, db.base)) return false;
  if (da.tele.size() != db.tele.size()) return false;
  for (size_t i = 0; i < da.tele.size(); ++i)
    if (!(da.tele[i] == db.tele[i])) return false;
  return true;
}

bool ExtSystem::mor_eq(const Mor& a, const Mor& b) const {
  if (a.get() == b.get()) return true;
  const ExtMorData& da = cast_mor<ExtMorData>(a);
  const ExtMorData& db = cast_mor<ExtMorData>(b);
  return base_->mor_eq(da.base, db.base) && obj_eq(da.src, db.src) &&
         obj_eq(da.dst, db.dst);
}

std::string ExtSystem::show_obj(const Obj& x) const {
  const ExtObjData& d = cast_obj<ExtObjData>(x);
  std::ostringstream os;
  os << "(" << base_->show_obj(d.base) << ", [";
  for (size_t i = 0; i < d.tele.size(); ++i) {
    if (i) os << ", ";
    os << d.tele[i].show();
  }
  os << "])";
  return os.str();
}

std::string ExtSystem::show_mor(const Mor& m) const {
  const ExtMorData& d = cast_mor<ExtMorData>(m);
  return show_obj(d.src) + " -> " + show_obj(d.dst) + " via " + base_->show_mor(d.base);
}

bool ExtSystem::objects_enumerable() const {
  return base_->objects_enumerable() && f_->enumerable();
}

bool ExtSystem::homs_enumerable() const { return base_->homs_enumerable(); }

std::vector<Obj> ExtSystem::objects_up_to(int max_len) const {
  std::vector<Obj> out;
  for (const Obj& xb : base_->objects_up_to(max_len)) {
    const int l = base_->length(xb);
    std::vector<std::vector<Val>> pools;
    pools.reserve(static_cast<size_t>(l));
    bool possible = true;
    for (int i = 0; i < l && possible; ++i) {
      pools.push_back(f_->at(ft_iter(*base_, xb, l - i)));
      if (pools.back().empty()) possible = false;
    }
    if (!possible) continue;
    std::vector<size_t> idx(static_cast<size_t>(l), 0);
    while (true) {
      std::vector<Val> tele;
      tele.reserve(static_cast<size_t>(l));
      for (int i = 0; i < l; ++i) tele.push_back(pools[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]);
      out.push_back(make_obj(xb, std::move(tele)));
      int k = l - 1;
      while (k >= 0) {
        if (++idx[static_cast<size_t>(k)] < pools[static_cast<size_t>(k)].size()) break;
        idx[static_cast<size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  return out;
}

std::vector<Mor> ExtSystem::hom(const Obj& x, const Obj& y) const {
  std::vector<Mor> out;
  for (const Mor& fb : base_->hom(base_obj(x), base_obj(y)))
    out.push_back(make_mor(x, y, fb));
  return out;
}

Obj ExtSystem::sample_obj(int len, int size_bound, std::uint64_t seed) const {
  Rng rng(seed);
  Obj xb = base_->sample_obj(len, size_bound, rng.fork_seed());
  const int l = base_->length(xb);
  std::vector<Val> tele;
  tele.reserve(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i)
    tele.push_back(f_->sample(ft_iter(*base_, xb, l - i), size_bound, rng.fork_seed()));
  return make_obj(xb, std::move(tele));
}

Mor ExtSystem::sample_mor(const Obj& x, const Obj& y, int size_bound, std::uint64_t seed) const {
  return make_mor(x, y, base_->sample_mor(base_obj(x), base_obj(y), size_bound, seed));
}

// ---------------------------------------------------------------------------

CHom tr(const ExtPtr& ext) {
  CHom h;
  h.name = "tr";
  h.src = ext;
  h.dst = ext->base_ptr();
  h.on_obj = [ext](const Obj& o) { return ext->base_obj(o); };
  h.on_mor = [ext](const Mor& m) { return ext->base_mor(m); };
  return h;
}

Obj tr_ob(const ExtSystem& ext, const Obj& o) { return ext.base_obj(o); }

std::vector<Val> distinguished_telescope(const ExtSystem& ext, const Obj& base_obj,
                                         const Val& y) {
  const CSystem& b = ext.base();
  const int l = b.length(base_obj);
  std::vector<Val> tele;
  tele.reserve(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i) {
    Obj level = ft_iter(b, base_obj, l - i);
    tele.push_back(ext.presheaf().act(p_iter(b, level, b.length(level)), y));
  }
  return tele;
}

CHom tr_bang(const ExtPtr& ext, const Val& y) {
  if (!ext->presheaf().valid_at(ext->base().pt(), y))
    throw StructureError("splitting element must be a presheaf value at pt");
  CHom h;
  h.name = "tr_bang";
  h.src = ext->base_ptr();
  h.dst = ext;
  h.on_obj = [ext, y](const Obj& xb) {
    return ext->make_obj(xb, distinguished_telescope(*ext, xb, y));
  };
  h.on_mor = [ext, y](const Mor& fb) {
    const CSystem& b = ext->base();
    Obj s = ext->make_obj(b.dom(fb), distinguished_telescope(*ext, b.dom(fb), y));
    Obj d = ext->make_obj(b.cod(fb), distinguished_telescope(*ext, b.cod(fb), y));
    return ext->make_mor(s, d, fb);
  };
  return h;
}

Mor can_iso(const ExtSystem& ext, const Obj& base_obj, std::vector<Val> g1,
            std::vector<Val> g2) {
  Obj a = ext.make_obj(base_obj, std::move(g1));
  Obj b = ext.make_obj(base_obj, std::move(g2));
  return ext.make_mor(a, b, ext.base().identity(base_obj));
}

Obj star_iter_ext_closed(const ExtSystem& ext, const Mor& f, const Obj& y, int i) {
  const CSystem& b = ext.base();
  if (i < 0 || i > ext.length(y)) throw StructureError("pullback depth exceeds length");
  if (!ext.obj_eq(ext.cod(f), ft_iter(ext, y, i)))
    throw StructureError("codomain does not match the pullback target at this depth");
  const Mor fb = ext.base_mor(f);
  const Obj yb = ext.base_obj(y);
  const std::vector<Val>& ty = ext.telescope(y);
  const int ly = static_cast<int>(ty.size());
  std::vector<Val> tele = ext.telescope(ext.dom(f));
  for (int c = 0; c < i; ++c) {
    Mor qc = q_iter(b, fb, ft_iter(b, yb, i - c), c);
    tele.push_back(ext.presheaf().act(qc, ty[static_cast<size_t>(ly - i + c)]));
  }
  return ext.make_obj(star_iter(b, fb, yb, i), std::move(tele));
}

}  // namespace csys
