#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decdiag/analysis.hpp"

namespace decdiag {

struct CertificateEntry {
  Peak peak;
  /// Valley certificates carry `join`, conversion certificates `conv_join`.
  std::optional<LocalJoin> join;
  std::optional<LocalConvJoin> conv_join;

  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

/// Search-free evidence of local decreasingness. `label_order` lists every
/// label so that each precedence pair goes from an earlier to a later
/// position, which witnesses acyclicity.
struct Certificate {
  Mode mode = Mode::valley;
  std::vector<Step> steps;
  std::vector<LabelPair> precedence;
  std::vector<Label> label_order;
  std::vector<CertificateEntry> entries;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

class CertificationFailed : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Runs the join search and packages the result. Throws CertificationFailed
/// if some local peak has no decreasing join.
Certificate certify(const LabeledArs& ars, const Precedence& prec, Mode mode = Mode::valley);

struct CertificateCheck {
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

CertificateCheck verify_certificate(const Certificate& cert);

}  // namespace decdiag
