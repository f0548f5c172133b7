#include "csys/crr.hpp"

#include <sstream>

#include "csys/rng.hpp"

namespace csys {

namespace {

struct CrrObj : ObjData {
  CrrObj(const CSystem* owner, int n) : ObjData(owner), n(n) {}
  int n;
};

struct CrrMor : MorData {
  CrrMor(const CSystem* owner, KMor k) : MorData(owner), k(std::move(k)) {}
  KMor k;  // a morphism k.cod^ -> k.dom^ of the C-system
};

}  // namespace

CrrSystem::CrrSystem(MonadPtr inst) : inst_(std::move(inst)) {
  if (!inst_) throw StructureError("missing monad instance");
  for (int n = 0; n < 32; ++n) small_objs_.push_back(std::make_shared<CrrObj>(this, n));
}

CrrPtr crr_build(MonadPtr inst) { return std::make_shared<CrrSystem>(std::move(inst)); }

Obj CrrSystem::obj(int n) const {
  if (n < 0) throw StructureError("objects are indexed by naturals");
  if (n < static_cast<int>(small_objs_.size())) return small_objs_[static_cast<size_t>(n)];
  return std::make_shared<CrrObj>(this, n);
}

Mor CrrSystem::mor(KMor k) const { return std::make_shared<CrrMor>(this, std::move(k)); }

int CrrSystem::obj_n(const Obj& o) const { return cast_obj<CrrObj>(o).n; }

const KMor& CrrSystem::mor_k(const Mor& m) const { return cast_mor<CrrMor>(m).k; }

std::string CrrSystem::name() const { return "C(" + inst_->name + ")"; }

Obj CrrSystem::pt() const { return obj(0); }

int CrrSystem::length(const Obj& x) const { return obj_n(x); }

Obj CrrSystem::ft(const Obj& x) const {
  int n = obj_n(x);
  return obj(n > 0 ? n - 1 : 0);
}

Mor CrrSystem::p(const Obj& x) const {
  int n = obj_n(x);
  if (n == 0) return identity(x);
  return mor(L(*inst_, iota(n - 1, 1)));
}

Obj CrrSystem::dom(const Mor& f) const { return obj(mor_k(f).cod); }

Obj CrrSystem::cod(const Mor& f) const { return obj(mor_k(f).dom); }

Mor CrrSystem::identity(const Obj& x) const { return mor(t_identity(*inst_, obj_n(x))); }

Mor CrrSystem::compose(const Mor& f, const Mor& g) const {
  const KMor& kf = mor_k(f);
  const KMor& kg = mor_k(g);
  if (kf.dom != kg.cod)
    throw ComposeError("cannot compose " + show_mor(f) + " with " + show_mor(g));
  return mor(t_compose(*inst_, kg, kf));
}

Obj CrrSystem::star(const Mor& f, const Obj& y) const {
  int n = obj_n(y);
  if (n == 0) throw StructureError("pullback target must have positive length");
  const KMor& kf = mor_k(f);
  if (kf.dom != n - 1) throw StructureError("codomain must be the father of the target");
  return obj(kf.cod + 1);
}

Mor CrrSystem::q(const Mor& f, const Obj& y) const {
  int n = obj_n(y);
  if (n == 0) throw StructureError("pullback target must have positive length");
  const KMor& kf = mor_k(f);
  if (kf.dom != n - 1) throw StructureError("codomain must be the father of the target");
  return mor(qq(*inst_, kf));
}

Mor CrrSystem::section_of_impl(const Mor& f) const {
  const KMor& kf = mor_k(f);
  const int n = kf.dom;
  const int m = kf.cod;
  if (n == 0) throw SectionError("no canonical section into an object of length 0");
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(m) + 1);
  for (int i = 0; i < m; ++i) comps.push_back(eta(*inst_, m, i));
  comps.push_back(kf.comps[static_cast<size_t>(n - 1)]);
  return mor(KMor{m + 1, m, std::move(comps)});
}

Mor CrrSystem::star_mor_impl(const Mor& f, const Mor& a) const {
  const KMor& kf = mor_k(f);  // f : m^ -> n^, i.e. kf : n -> m
  const KMor& ka = mor_k(a);  // a : (n+i)^ -> (n+j)^, i.e. ka : n+j -> n+i
  const int n = kf.dom;
  const int m = kf.cod;
  const int i = ka.cod - n;
  const int j = ka.dom - n;
  if (i < 0 || j < 0) throw StructureError("morphism endpoints are not over the target");
  KMor lifted = qq_iter(*inst_, kf, i);
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(m + j));
  for (int k = 0; k < m; ++k) comps.push_back(eta(*inst_, m + i, k));
  for (int c = 0; c < j; ++c)
    comps.push_back(bind(*inst_, lifted, ka.comps[static_cast<size_t>(n + c)]));
  return mor(KMor{m + j, m + i, std::move(comps)});
}

bool CrrSystem::obj_eq(const Obj& a, const Obj& b) const {
  return a.get() == b.get() || obj_n(a) == obj_n(b);
}

bool CrrSystem::mor_eq(const Mor& a, const Mor& b) const {
  return a.get() == b.get() || mor_k(a) == mor_k(b);
}

std::string CrrSystem::show_obj(const Obj& x) const { return std::to_string(obj_n(x)) + "^"; }

std::string CrrSystem::show_mor(const Mor& f) const {
  const KMor& k = mor_k(f);
  std::ostringstream os;
  os << k.cod << "^->" << k.dom << "^ " << km_show(*inst_, k);
  return os.str();
}

bool CrrSystem::homs_enumerable() const { return inst_->enumerable(); }

std::vector<Obj> CrrSystem::objects_up_to(int max_len) const {
  std::vector<Obj> out;
  for (int n = 0; n <= max_len; ++n) out.push_back(obj(n));
  return out;
}

const std::vector<KMor>& CrrSystem::kmors_between(int dom, int cod) const {
  std::scoped_lock lock(hom_mu_);
  auto key = std::make_pair(dom, cod);
  auto it = hom_memo_.find(key);
  if (it == hom_memo_.end())
    it = hom_memo_.emplace(key, km_enumerate(*inst_, dom, cod)).first;
  return it->second;
}

std::vector<Mor> CrrSystem::hom(const Obj& x, const Obj& y) const {
  const int m = obj_n(x);
  const int n = obj_n(y);
  std::vector<Mor> out;
  for (const KMor& k : kmors_between(n, m)) out.push_back(mor(k));
  return out;
}

Obj CrrSystem::sample_obj(int len, int, std::uint64_t) const { return obj(len); }

Mor CrrSystem::sample_mor(const Obj& x, const Obj& y, int size_bound, std::uint64_t seed) const {
  return mor(km_sample(*inst_, obj_n(y), obj_n(x), size_bound, seed));
}

// ---------------------------------------------------------------------------
// Sections and the transported section set

BTildeRR mb(const CrrSystem& cc, const SectionWitness& s) {
  const KMor& k = cc.mor_k(s.mor);
  const int n = k.dom - 1;
  return BTildeRR{n, k.comps[static_cast<size_t>(n)]};
}

BTildeRR mb(const CrrSystem& cc, const Mor& s) { return mb(cc, make_section(cc, s)); }

SectionWitness mb_inv(const CrrSystem& cc, const BTildeRR& b) {
  if (b.r.ctx != b.n) throw SectionError("component context does not match the context size");
  const MonadInstance& inst = cc.inst();
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(b.n) + 1);
  for (int i = 0; i < b.n; ++i) comps.push_back(eta(inst, b.n, i));
  comps.push_back(b.r);
  return make_section(cc, cc.mor(KMor{b.n + 1, b.n, std::move(comps)}));
}

SectionWitness pullback_section(const CrrSystem& cc, const Mor& f, const Mor& s) {
  if (!is_section(cc, s)) throw SectionError("second argument must be a section");
  const KMor& kf = cc.mor_k(f);
  const KMor& ks = cc.mor_k(s);
  const int n = kf.dom;
  const int m = kf.cod;
  const int i = (ks.dom - 1) - n;
  if (i < 0) throw StructureError("section does not sit over the codomain");
  const MonadInstance& inst = cc.inst();
  std::vector<Term> comps;
  comps.reserve(static_cast<size_t>(m + i) + 1);
  for (int k = 0; k < m + i; ++k) comps.push_back(eta(inst, m + i, k));
  comps.push_back(bind(inst, qq_iter(inst, kf, i), ks.comps[static_cast<size_t>(n + i)]));
  return make_section(cc, cc.mor(KMor{m + i + 1, m + i, std::move(comps)}));
}

Term psi(const MonadInstance& inst, const Term& t) {
  if (t.ctx != 2) throw ArityError("psi acts on terms in context 2");
  Term a = rr_of_finfun(inst, delta(0, 2), t);
  Term b = rr_of_finfun(inst, delta(0, 3), a);
  Term c = theta_rr(inst, eta(inst, 3, 0), b);
  return theta_rr(inst, eta(inst, 2, 1), c);
}

// ---------------------------------------------------------------------------
// B-set operations

namespace {
void require(bool cond, const char* ineq) {
  if (!cond) throw BopDomainError(std::string("operation domain requires ") + ineq);
}
}  // namespace

int bop_T_explicit(int m, int n) {
  require(m > 0, "m > 0");
  require(n > m - 1, "n > m-1");
  return n + 1;
}

BTildeRR bop_Tt_explicit(const MonadInstance& inst, int m, const BTildeRR& b) {
  require(m > 0, "m > 0");
  require(b.n + 1 > m - 1, "n+1 > m-1");
  return BTildeRR{b.n + 1, rr_of_finfun(inst, delta(m - 1, b.n), b.r)};
}

int bop_S_explicit(const BTildeRR& b, int n) {
  require(n > b.n + 1, "n > m+1");
  return n - 1;
}

BTildeRR bop_St_explicit(const MonadInstance& inst, const BTildeRR& r, const BTildeRR& s) {
  require(s.n > r.n, "n > m");
  return BTildeRR{s.n - 1, theta_rr(inst, r.r, s.r)};
}

BTildeRR bop_delta_explicit(const MonadInstance& inst, int n) {
  require(n > 0, "n > 0");
  return BTildeRR{n, eta(inst, n, n - 1)};
}

int bop_T_definitional(const CrrSystem& cc, int m, int n) {
  require(m > 0, "m > 0");
  require(n > m - 1, "n > m-1");
  Obj result = star_of(cc, cc.p(cc.obj(m)), cc.obj(n));
  return cc.obj_n(result);
}

BTildeRR bop_Tt_definitional(const CrrSystem& cc, int m, const BTildeRR& b) {
  require(m > 0, "m > 0");
  require(b.n + 1 > m - 1, "n+1 > m-1");
  Mor s = mb_inv(cc, b).mor;
  Mor g = star_mor(cc, cc.p(cc.obj(m)), s);
  return mb(cc, g);
}

int bop_S_definitional(const CrrSystem& cc, const BTildeRR& b, int n) {
  require(n > b.n + 1, "n > m+1");
  Mor r = mb_inv(cc, b).mor;
  Obj result = star_of(cc, r, cc.obj(n));
  return cc.obj_n(result);
}

BTildeRR bop_St_definitional(const CrrSystem& cc, const BTildeRR& r, const BTildeRR& s) {
  require(s.n > r.n, "n > m");
  Mor rm = mb_inv(cc, r).mor;
  Mor sm = mb_inv(cc, s).mor;
  Mor g = star_mor(cc, rm, sm);
  return mb(cc, g);
}

BTildeRR bop_delta_definitional(const CrrSystem& cc, int n) {
  require(n > 0, "n > 0");
  return mb(cc, delta_section(cc, cc.obj(n)));
}

}  // namespace csys
