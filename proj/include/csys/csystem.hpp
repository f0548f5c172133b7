#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "csys/errors.hpp"

namespace csys {

class CSystem;

// owner identifies the system a handle belongs to, so downcasts need no RTTI
struct ObjData {
  explicit ObjData(const CSystem* owner) : owner(owner) {}
  virtual ~ObjData() = default;
  const CSystem* owner;
};
struct MorData {
  explicit MorData(const CSystem* owner) : owner(owner) {}
  virtual ~MorData() = default;
  const CSystem* owner;
};

// Opaque handles; only the owning system interprets them.
using Obj = std::shared_ptr<const ObjData>;
using Mor = std::shared_ptr<const MorData>;

// A contextual category presented through its chosen structure: the length
// function, the final object pt, father maps ft, canonical projections p and
// chosen pullbacks (star, q). All operations are pure; handles are immutable.
class CSystem {
 protected:
  template <typename T>
  const T& cast_obj(const Obj& o) const {
    if (!o || o->owner != this) throw StructureError("foreign object handle");
    return *static_cast<const T*>(o.get());
  }
  template <typename T>
  const T& cast_mor(const Mor& m) const {
    if (!m || m->owner != this) throw StructureError("foreign morphism handle");
    return *static_cast<const T*>(m.get());
  }
 public:
  virtual ~CSystem() = default;
  virtual std::string name() const = 0;

  virtual Obj pt() const = 0;
  virtual int length(const Obj& x) const = 0;
  virtual Obj ft(const Obj& x) const = 0;
  // the canonical projection X -> ft(X); identity at length 0
  virtual Mor p(const Obj& x) const = 0;

  virtual Obj dom(const Mor& f) const = 0;
  virtual Obj cod(const Mor& f) const = 0;
  virtual Mor identity(const Obj& x) const = 0;
  // diagrammatic: first f, then g
  virtual Mor compose(const Mor& f, const Mor& g) const = 0;

  // one-step chosen pullback: f : X -> ft(Y), length(Y) > 0
  virtual Obj star(const Mor& f, const Obj& y) const = 0;
  virtual Mor q(const Mor& f, const Obj& y) const = 0;

  // canonical section s_f of f when length(cod(f)) > 0; use section_of below
  virtual Mor section_of_impl(const Mor& f) const = 0;
  // base change f^*(a) of a morphism a over cod(f); use star_mor below
  virtual Mor star_mor_impl(const Mor& f, const Mor& a) const = 0;

  virtual bool obj_eq(const Obj&, const Obj&) const = 0;
  virtual bool mor_eq(const Mor&, const Mor&) const = 0;
  virtual std::string show_obj(const Obj&) const = 0;
  virtual std::string show_mor(const Mor&) const = 0;

  virtual bool objects_enumerable() const = 0;
  virtual bool homs_enumerable() const = 0;
  // all objects of length <= max_len; requires objects_enumerable
  virtual std::vector<Obj> objects_up_to(int max_len) const = 0;
  // the full hom-set; requires homs_enumerable (systems may support special
  // cases such as morphisms into pt regardless)
  virtual std::vector<Mor> hom(const Obj& x, const Obj& y) const = 0;
  virtual Obj sample_obj(int len, int size_bound, std::uint64_t seed) const = 0;
  virtual Mor sample_mor(const Obj& x, const Obj& y, int size_bound, std::uint64_t seed) const = 0;
};

using SystemPtr = std::shared_ptr<const CSystem>;

// --- derived calculus -------------------------------------------------------

Obj ft_iter(const CSystem& cc, Obj x, int i);

// the canonical morphism X -> ft^i(X)
Mor p_iter(const CSystem& cc, const Obj& x, int i);

// X <= Y iff X is an iterated father of Y
bool leq(const CSystem& cc, const Obj& x, const Obj& y);
bool lt(const CSystem& cc, const Obj& x, const Obj& y);

// the canonical morphism from -> to, for to <= from
Mor p_to(const CSystem& cc, const Obj& from, const Obj& to);

// whether f commutes with the canonical projections to base
bool is_over(const CSystem& cc, const Mor& f, const Obj& base);

// i-step chosen pullback along f : X -> ft^i(Y)
std::pair<Obj, Mor> star_q_iter(const CSystem& cc, const Mor& f, const Obj& y, int i);
Obj star_iter(const CSystem& cc, const Mor& f, const Obj& y, int i);
Mor q_iter(const CSystem& cc, const Mor& f, const Obj& y, int i);

// depth inferred from lengths: f : X -> D with D <= Y
Obj star_of(const CSystem& cc, const Mor& f, const Obj& y);
Mor q_of(const CSystem& cc, const Mor& f, const Obj& y);

// f^*(a) for a : G' -> G'' over cod(f). Computed by the system, then checked
// against both defining equations (the pullback square with the q-morphisms,
// and lying over dom(f)); a ConsistencyError means the instance is broken.
Mor star_mor(const CSystem& cc, const Mor& f, const Mor& a);

bool is_section(const CSystem& cc, const Mor& s);

// A morphism s : ft(X) -> X with s . p = id, as data.
struct SectionWitness {
  Mor mor;
};

SectionWitness make_section(const CSystem& cc, Mor s);

// canonical section s_f through the chosen pullback of cod(f); checks both
// defining equations of the section
SectionWitness section_of(const CSystem& cc, const Mor& f);

// the diagonal section of X, s_{id_X}; requires length(X) > 0
SectionWitness delta_section(const CSystem& cc, const Obj& x);

}  // namespace csys
