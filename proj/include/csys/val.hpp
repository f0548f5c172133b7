#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

namespace csys {

// A comparable, printable value with hidden representation; used for
// presheaf elements so that extension systems stay generic.
struct ValData {
  virtual ~ValData() = default;
  virtual bool eq(const ValData& other) const = 0;
  virtual std::string show() const = 0;
  virtual nlohmann::json to_json() const = 0;
};

class Val {
 public:
  Val() = default;
  explicit Val(std::shared_ptr<const ValData> p) : p_(std::move(p)) {}

  bool has_value() const { return static_cast<bool>(p_); }
  const ValData& data() const { return *p_; }
  template <typename T>
  const T* as() const {
    return dynamic_cast<const T*>(p_.get());
  }

  std::string show() const { return p_ ? p_->show() : "<null>"; }
  nlohmann::json to_json() const { return p_ ? p_->to_json() : nlohmann::json(); }

  friend bool operator==(const Val& a, const Val& b) {
    if (a.p_ == b.p_) return true;
    if (!a.p_ || !b.p_) return false;
    return a.p_->eq(*b.p_);
  }
  friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }

 private:
  std::shared_ptr<const ValData> p_;
};

// the element of a one-point set
Val unit_val();

}  // namespace csys
