#include "csys/val.hpp"

namespace csys {

namespace {

struct UnitVal : ValData {
  bool eq(const ValData& other) const override {
    return dynamic_cast<const UnitVal*>(&other) != nullptr;
  }
  std::string show() const override { return "*"; }
  nlohmann::json to_json() const override { return nlohmann::json::array({"Unit"}); }
};

}  // namespace

Val unit_val() { return Val(std::make_shared<UnitVal>()); }

}  // namespace csys
