#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "decdiag/lars.hpp"

namespace decdiag::cli {

/// A parsed `.ars` file, in declaration order and without duplicates.
struct ArsDocument {
  std::string name;
  std::vector<Obj> objects;
  std::vector<Label> labels;
  /// Covering pairs as written: (l1, l2) for `prec l1 < l2`.
  std::vector<LabelPair> prec;
  std::vector<Step> steps;

  LabeledArs ars() const;
  /// Transitive closure of `prec`.
  Precedence precedence() const;
  UnlabeledArs unlabeled() const;

  friend bool operator==(const ArsDocument&, const ArsDocument&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  /// 1-based; 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ParseOptions {
  /// Step labels become optional and label/prec lines are not checked
  /// against each other. Steps without a label get an empty one.
  bool unlabeled = false;
};

ArsDocument parse_ars(std::string_view text, const ParseOptions& options = {});

/// Canonical text form; parse_ars(print_ars(d)) == d.
std::string print_ars(const ArsDocument& doc);

/// Reads `obj,label,obj,...,obj` as a rewrite sequence of `ars`.
RewriteSeq parse_path(const LabeledArs& ars, std::string_view path);

}  // namespace decdiag::cli
