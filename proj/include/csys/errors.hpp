#pragma once

#include <stdexcept>
#include <string>

namespace csys {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Out-of-range generator index (delta/sigma/eta arguments).
struct IndexError : Error { using Error::Error; };
// Context or arity mismatch on terms and Kleisli morphisms.
struct ArityError : Error { using Error::Error; };
// Domain/codomain mismatch in a composition.
struct ComposeError : Error { using Error::Error; };
// Malformed C-system data: wrong depth, codomain or handle kind.
struct StructureError : Error { using Error::Error; };
// A derived operation violated its own defining equations.
struct ConsistencyError : Error { using Error::Error; };
// Morphism fails the section property s . p = id.
struct SectionError : Error { using Error::Error; };
// Ill-formed telescope on an extension object.
struct TelescopeError : Error { using Error::Error; };
// Unknown symbol or malformed binding signature.
struct SignatureError : Error { using Error::Error; };
// Wrong sort supplied to a two-sorted constructor.
struct SortError : Error { using Error::Error; };
// B-operation applied outside its domain; message names the violated condition.
struct BopDomainError : Error { using Error::Error; };
// CLI misuse: bad selector, unreadable file.
struct UsageError : Error { using Error::Error; };

}  // namespace csys
