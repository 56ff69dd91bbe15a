#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "decdiag/lars.hpp"

namespace decdiag {

/// Joining sequences of one local peak: `right` leaves the end of the peak's
/// left step (σ′), `bottom` leaves the end of its right step (τ′).
struct LocalJoin {
  RewriteSeq right;
  RewriteSeq bottom;

  friend bool operator==(const LocalJoin&, const LocalJoin&) = default;
};

/// One side of a conversion-shaped local join: a conversion below the label
/// of the step it starts from, at most one forward step with the other peak
/// label, then a conversion below both labels.
struct ConvSide {
  Conversion low;
  RewriteSeq pivot;
  Conversion high;

  friend bool operator==(const ConvSide&, const ConvSide&) = default;
};

/// `right` starts where the peak's left (β) step ends and may use an α pivot;
/// `bottom` starts where the right (α) step ends and may use a β pivot. Both
/// `high` conversions end at the same object.
struct LocalConvJoin {
  ConvSide right;
  ConvSide bottom;

  friend bool operator==(const LocalConvJoin&, const LocalConvJoin&) = default;
};

class InvalidLocalMap : public std::invalid_argument {
 public:
  InvalidLocalMap(const std::string& what, Peak peak)
      : std::invalid_argument(what), peak_(std::move(peak)) {}
  const Peak& peak() const noexcept { return peak_; }

 private:
  Peak peak_;
};

/// Decreasing joins for every local peak of an ARS, checked on construction.
class LocalCompletionMap {
 public:
  LocalCompletionMap(const LabeledArs& ars, const Precedence& prec,
                     std::map<Peak, LocalJoin> entries);

  const LocalJoin* find(const Peak& p) const;
  const std::map<Peak, LocalJoin>& entries() const noexcept { return entries_; }

 private:
  std::map<Peak, LocalJoin> entries_;
};

/// Explains why `join` is not a valid conversion-shaped join of the local
/// peak `p`; empty when it is.
std::string conv_join_defect(const LabeledArs& ars, const Precedence& prec, const Peak& p,
                             const LocalConvJoin& join);

/// Conversion-shaped joins for every local peak, checked on construction.
class LocalConvMap {
 public:
  LocalConvMap(const LabeledArs& ars, const Precedence& prec,
               std::map<Peak, LocalConvJoin> entries);

  const LocalConvJoin* find(const Peak& p) const;
  const std::map<Peak, LocalConvJoin>& entries() const noexcept { return entries_; }

 private:
  std::map<Peak, LocalConvJoin> entries_;
};

/// Reads every valley of `lcm` as a conversion, split into LD′ shape.
LocalConvMap embed_valleys(const LabeledArs& ars, const Precedence& prec,
                           const LocalCompletionMap& lcm);

struct TraceEvent {
  LabelMultiset before;
  LabelMultiset after;
  std::string rule;
};

struct CompletionTrace {
  std::vector<TraceEvent> events;
};

struct Completion {
  Diagram diagram;
  CompletionTrace trace;
};

class CompletionError : public std::runtime_error {
 public:
  enum class Kind {
    invalid_peak,
    missing_local_entry,
    measure_not_decreasing,
    fuel_exhausted,
    completer_failed,
    downset_violation,
  };

  CompletionError(Kind kind, const std::string& what, Peak peak)
      : std::runtime_error(what), kind_(kind), peak_(std::move(peak)) {}
  Kind kind() const noexcept { return kind_; }
  const Peak& peak() const noexcept { return peak_; }

 private:
  Kind kind_;
  Peak peak_;
};

struct CompletionOptions {
  /// Maximum number of recursive sub-completions; 0 selects default_fuel.
  std::size_t fuel = 0;
};

/// objects × steps × 16
std::size_t default_fuel(const LabeledArs& ars);

/// Completes an arbitrary peak into a decreasing diagram whose top and left
/// sides are the peak itself.
Completion complete_peak(const LabeledArs& ars, const Precedence& prec,
                         const LocalCompletionMap& lcm, const Peak& peak,
                         const CompletionOptions& options = {});

/// Completes the reflected peak and reflects the diagram back, so the result
/// has the same orientation as complete_peak's.
Completion mirror_peak_complete(const LabeledArs& ars, const Precedence& prec,
                                const LocalCompletionMap& lcm, const Peak& peak,
                                const CompletionOptions& options = {});

/// Closes a peak into a decreasing diagram with the peak as top and left.
using PeakCompleter = std::function<Diagram(const Peak&)>;

/// A pair of forward sequences leaving the two ends of a conversion and
/// meeting at a common object.
struct Valley {
  RewriteSeq from_start;
  RewriteSeq from_end;
};

/// Turns a conversion whose labels lie below `bound` into a valley with the
/// same property, closing every backward/forward turn with `completer`.
Valley key1_close(const LabeledArs& ars, const Precedence& prec, const PeakCompleter& completer,
                  const LabelMultiset& bound, const Conversion& conv);

/// Closing data for the peak (t, s), t below β and s at most one α step:
/// from the end of t, a prefix below β, at most one α step and a suffix below
/// {α,β}; from the end of s, `other` below {α,β}.
struct Key2Closing {
  RewriteSeq prefix;
  RewriteSeq pivot;
  RewriteSeq suffix;
  RewriteSeq other;
};

Key2Closing key2_close(const LabeledArs& ars, const Precedence& prec,
                       const PeakCompleter& completer, const Label& alpha, const Label& beta,
                       const RewriteSeq& t, const RewriteSeq& s);

/// Turns the conversion-shaped join of a local peak into a locally
/// decreasing valley.
LocalJoin close_conversion_corner(const LabeledArs& ars, const Precedence& prec,
                                  const PeakCompleter& completer, const Peak& local,
                                  const LocalConvJoin& join);

/// complete_peak driven by conversion-shaped local joins.
Completion complete_peak_conv(const LabeledArs& ars, const Precedence& prec,
                              const LocalConvMap& lconv, const Peak& peak,
                              const CompletionOptions& options = {});

}  // namespace decdiag
