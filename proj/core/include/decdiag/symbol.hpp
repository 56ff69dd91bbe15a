#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace decdiag {

/// An opaque named symbol. The ordering compares names and exists only so
/// that symbols can live in ordered containers and print canonically.
template <typename Tag>
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string name) : name_(std::move(name)) {}
  explicit Symbol(const char* name) : name_(name) {}

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    return a.name_.compare(b.name_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Symbol& s) {
    return os << s.name_;
  }

 private:
  std::string name_;
};

struct LabelTag {};
struct ObjTag {};

using Label = Symbol<LabelTag>;
using Obj = Symbol<ObjTag>;

}  // namespace decdiag

template <typename Tag>
struct std::hash<decdiag::Symbol<Tag>> {
  std::size_t operator()(const decdiag::Symbol<Tag>& s) const noexcept {
    return std::hash<std::string>{}(s.name());
  }
};
