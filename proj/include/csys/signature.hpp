#pragma once

#include <memory>
#include <string>

#include "csys/crrlm.hpp"
#include "csys/term.hpp"

namespace csys {

// A parsed signature file: element constructors, plus type constructors when
// the file declares a second sort.
struct LoadedSignature {
  std::shared_ptr<const BindingSignature> el;
  std::shared_ptr<const TwoSortedSignature> two;  // null when no "ty" section
};

// Format:
//   {"el": [{"sym": "app", "args": [0, 0]}, {"sym": "lam", "args": [1]}],
//    "ty": [{"sym": "El", "args": [{"sort": "el", "bind": 0}]}]}
// "args" entries for element constructors are binder counts; for type
// constructors they are {"sort": "el"|"ty", "bind": k}.
LoadedSignature parse_signature(const nlohmann::json& j);
LoadedSignature load_signature_file(const std::string& path);

// the bundled desk-scale instances
BindingSignature lam_app_signature();
TwoSortedSignature el_pi_signature();

}  // namespace csys
