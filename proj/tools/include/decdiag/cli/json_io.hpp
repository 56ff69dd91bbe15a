#pragma once

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "decdiag/analysis.hpp"
#include "decdiag/certificate.hpp"
#include "decdiag/completion.hpp"

namespace decdiag::cli {

using nlohmann::json;

json to_json(const LabelMultiset& m);
json to_json(const RewriteSeq& s);
json to_json(const Conversion& c);
json to_json(const Peak& p);
json to_json(const Diagram& d);
json to_json(const LocalJoin& j);
json to_json(const LocalConvJoin& j);
json to_json(const LdPrimeDecomposition& d);
json to_json(const CompletionTrace& t);
json to_json(const LdReport& r);
json to_json(const Precedence& p);
json to_json(const Certificate& c);

class CertificateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of to_json(Certificate); throws CertificateFormatError on
/// missing or ill-typed fields.
Certificate certificate_from_json(const json& j);

}  // namespace decdiag::cli
