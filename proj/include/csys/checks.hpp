#pragma once

#include <cstdint>

#include "csys/csystem.hpp"
#include "csys/presheaf.hpp"
#include "csys/report.hpp"

namespace csys {

struct Budget {
  int max_len = 3;
  int samples = 300;
  int term_size = 8;
  std::uint64_t seed = 0;
};

// The structural axioms of the chosen-pullback presentation: unique object of
// length 0, ft/length bookkeeping, finality of pt, the q/p square, and
// identity and composition compatibility of star and q. Enumerates data when
// the system supports it, samples otherwise.
Report check_c0_axioms(const CSystem& cc, const Budget& budget);

// Verifies that every canonical square is a pullback by enumerating all
// competing cones and checking unique factorization. Skips (without failing)
// systems whose hom-sets cannot be enumerated.
Report check_pullbacks(const CSystem& cc, const Budget& budget);

// For enumerable systems: the two defining equations of a base change
// determine it uniquely.
Report check_star_mor_unique(const CSystem& cc, const Budget& budget);

// Functor laws plus preservation of pt, lengths, ft, p, star, q, canonical
// projections, the order, base change of morphisms and diagonals.
Report check_homomorphism(const CHom& h, const Budget& budget);

// Contravariant functor laws of a presheaf over a C-system.
Report check_presheaf_laws(const CSystem& cc, const Presheaf& f, const Budget& budget);

}  // namespace csys
