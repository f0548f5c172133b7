#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "csys/csystem.hpp"
#include "csys/val.hpp"

namespace csys {

// A presheaf on the category underlying a C-system: a set of values over
// every object and a contravariant action along morphisms. Values need
// decidable equality only.
class Presheaf {
 public:
  virtual ~Presheaf() = default;
  virtual std::string name() const = 0;

  // f : X -> Y in the base; maps F(Y) to F(X)
  virtual Val act(const Mor& f, const Val& e) const = 0;
  virtual bool valid_at(const Obj& x, const Val& e) const = 0;

  virtual bool enumerable() const = 0;
  virtual std::vector<Val> at(const Obj& x) const = 0;
  virtual Val sample(const Obj& x, int size_bound, std::uint64_t seed) const = 0;
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

// the presheaf with a one-point value set everywhere
PresheafPtr unit_presheaf();

// The extension of a C-system by a presheaf: objects are base objects
// decorated with telescopes of presheaf elements, morphisms are base
// morphisms between decorated endpoints.
class ExtSystem : public CSystem, public std::enable_shared_from_this<ExtSystem> {
 public:
  ExtSystem(SystemPtr base, PresheafPtr f);

  std::string name() const override;
  Obj pt() const override;
  int length(const Obj&) const override;
  Obj ft(const Obj&) const override;
  Mor p(const Obj&) const override;
  Obj dom(const Mor&) const override;
  Obj cod(const Mor&) const override;
  Mor identity(const Obj&) const override;
  Mor compose(const Mor&, const Mor&) const override;
  Obj star(const Mor&, const Obj&) const override;
  Mor q(const Mor&, const Obj&) const override;
  Mor section_of_impl(const Mor&) const override;
  Mor star_mor_impl(const Mor&, const Mor&) const override;
  bool obj_eq(const Obj&, const Obj&) const override;
  bool mor_eq(const Mor&, const Mor&) const override;
  std::string show_obj(const Obj&) const override;
  std::string show_mor(const Mor&) const override;
  bool objects_enumerable() const override;
  bool homs_enumerable() const override;
  std::vector<Obj> objects_up_to(int max_len) const override;
  std::vector<Mor> hom(const Obj&, const Obj&) const override;
  Obj sample_obj(int len, int size_bound, std::uint64_t seed) const override;
  Mor sample_mor(const Obj&, const Obj&, int size_bound, std::uint64_t seed) const override;

  const CSystem& base() const { return *base_; }
  SystemPtr base_ptr() const { return base_; }
  const Presheaf& presheaf() const { return *f_; }

  // constructors and accessors for decorated data; telescopes are validated
  Obj make_obj(const Obj& base_obj, std::vector<Val> tele) const;
  Mor make_mor(const Obj& src, const Obj& dst, const Mor& base_mor) const;
  Obj base_obj(const Obj&) const;
  const std::vector<Val>& telescope(const Obj&) const;
  Mor base_mor(const Mor&) const;

 private:
  SystemPtr base_;
  PresheafPtr f_;
};

using ExtPtr = std::shared_ptr<const ExtSystem>;

ExtPtr ext_build(SystemPtr base, PresheafPtr f);

// A C-system homomorphism candidate, as plain functor data.
struct CHom {
  std::string name;
  SystemPtr src;
  SystemPtr dst;
  std::function<Obj(const Obj&)> on_obj;
  std::function<Mor(const Mor&)> on_mor;
};

// the projection that forgets telescopes; fully faithful
CHom tr(const ExtPtr& ext);
Obj tr_ob(const ExtSystem& ext, const Obj& o);

// the splitting determined by an element y of F(pt); undefined when F(pt) is
// empty, in which case the extension collapses to pt alone
CHom tr_bang(const ExtPtr& ext, const Val& y);

// the distinguished telescope over a base object, all entries pulled back from y
std::vector<Val> distinguished_telescope(const ExtSystem& ext, const Obj& base_obj, const Val& y);

// the canonical isomorphism (X, g1) -> (X, g2) over the identity of X
Mor can_iso(const ExtSystem& ext, const Obj& base_obj, std::vector<Val> g1, std::vector<Val> g2);

// i-step pullback in the extension, computed by the closed formula (base
// pullback plus a tail of acted telescope entries) rather than by recursion.
Obj star_iter_ext_closed(const ExtSystem& ext, const Mor& f, const Obj& y, int i);

}  // namespace csys
