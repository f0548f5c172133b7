#include "csys/signature.hpp"

#include <fstream>

#include "csys/errors.hpp"

namespace csys {

namespace {

BindingSignature parse_el(const nlohmann::json& arr) {
  if (!arr.is_array()) throw UsageError("\"el\" must be an array of constructors");
  std::vector<OpDecl> ops;
  for (const nlohmann::json& e : arr) {
    if (!e.is_object() || !e.contains("sym") || !e.contains("args"))
      throw UsageError("element constructor needs \"sym\" and \"args\"");
    OpDecl d;
    d.sym = e["sym"].get<std::string>();
    for (const nlohmann::json& a : e["args"]) {
      if (!a.is_number_integer() || a.get<int>() < 0)
        throw UsageError("element constructor args are binder counts");
      d.binders.push_back(a.get<int>());
    }
    ops.push_back(std::move(d));
  }
  return make_signature(std::move(ops));
}

std::vector<TyOpDecl> parse_ty(const nlohmann::json& arr) {
  if (!arr.is_array()) throw UsageError("\"ty\" must be an array of constructors");
  std::vector<TyOpDecl> ops;
  for (const nlohmann::json& e : arr) {
    if (!e.is_object() || !e.contains("sym") || !e.contains("args"))
      throw UsageError("type constructor needs \"sym\" and \"args\"");
    TyOpDecl d;
    d.sym = e["sym"].get<std::string>();
    for (const nlohmann::json& a : e["args"]) {
      if (!a.is_object() || !a.contains("sort"))
        throw UsageError("type constructor args are {\"sort\":..., \"bind\":...}");
      TyArgDecl arg;
      std::string sort = a["sort"].get<std::string>();
      if (sort == "el")
        arg.is_el = true;
      else if (sort == "ty")
        arg.is_el = false;
      else
        throw UsageError("sort must be \"el\" or \"ty\"");
      arg.binders = a.contains("bind") ? a["bind"].get<int>() : 0;
      if (arg.binders < 0) throw UsageError("binder counts must be non-negative");
      d.args.push_back(arg);
    }
    ops.push_back(std::move(d));
  }
  return ops;
}

}  // namespace

LoadedSignature parse_signature(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("el"))
    throw UsageError("signature file must be an object with an \"el\" section");
  LoadedSignature out;
  BindingSignature el = parse_el(j["el"]);
  out.el = std::make_shared<BindingSignature>(el);
  if (j.contains("ty"))
    out.two = std::make_shared<TwoSortedSignature>(make_two_sorted(el, parse_ty(j["ty"])));
  return out;
}

LoadedSignature load_signature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read signature file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_signature(j);
}

BindingSignature lam_app_signature() {
  return make_signature({OpDecl{"app", {0, 0}}, OpDecl{"lam", {1}}});
}

TwoSortedSignature el_pi_signature() {
  return make_two_sorted(lam_app_signature(),
                         {TyOpDecl{"El", {TyArgDecl{true, 0}}},
                          TyOpDecl{"Pi", {TyArgDecl{false, 0}, TyArgDecl{false, 1}}}});
}

}  // namespace csys
