#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decdiag/completion.hpp"
#include "decdiag/lars.hpp"

namespace decdiag {

// Brute-force oracles on the unlabeled relation.
bool joinable_oracle(const UnlabeledArs& ars, const Obj& a, const Obj& b);
bool confluent_oracle(const UnlabeledArs& ars);

/// Which kind of local join is accepted: a valley, or the conversion shape.
enum class Mode { valley, conversion };

std::string to_string(Mode m);
/// Accepts "valley", "conversion" and "conv".
std::optional<Mode> parse_mode(const std::string& s);

enum class PeakStatus { decreasing, not_decreasing, search_exhausted };

std::string to_string(PeakStatus s);

struct PeakResult {
  Peak peak;
  PeakStatus status = PeakStatus::not_decreasing;
  /// Set in valley mode when a join was found.
  std::optional<LocalJoin> join;
  /// Set in conversion mode when a join was found.
  std::optional<LocalConvJoin> conv_join;
  /// Label split of each joining side: pivot α on the right, β on the bottom.
  std::optional<LdPrimeDecomposition> right_split;
  std::optional<LdPrimeDecomposition> bottom_split;
};

struct LdReport {
  Mode mode = Mode::valley;
  /// One result per local peak, in canonical peak order.
  std::vector<PeakResult> peaks;

  bool all_decreasing() const;
  /// First peak that is not decreasing, if any.
  const PeakResult* first_failure() const;
};

struct SearchOptions {
  /// Per-side bound on visited search states; 0 means unbounded.
  std::size_t max_states = 0;
  bool stop_at_first_failure = false;
};

/// Looks for a locally decreasing join of every local peak.
LdReport check_locally_decreasing(const LabeledArs& ars, const Precedence& prec,
                                  Mode mode = Mode::valley, const SearchOptions& options = {});

/// Valley-mode report → completion map. Throws std::invalid_argument unless
/// every peak is decreasing.
LocalCompletionMap completion_map(const LabeledArs& ars, const Precedence& prec,
                                  const LdReport& report);
/// Conversion map from either kind of report; valley joins are embedded.
LocalConvMap conv_map(const LabeledArs& ars, const Precedence& prec, const LdReport& report);

class SearchCapExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every strict partial order on `labels`, smallest first, ties broken by
/// pair list.
std::vector<Precedence> strict_partial_orders(const LabelSet& labels);

/// First strict order (in strict_partial_orders order) under which the ARS is
/// locally decreasing. Throws SearchCapExceeded when the ARS has more than
/// `cap` labels.
std::optional<Precedence> find_precedence(const LabeledArs& ars, Mode mode = Mode::valley,
                                          std::size_t cap = 5);

class NonTerminating : public std::invalid_argument {
 public:
  NonTerminating(const std::string& what, std::vector<Obj> cycle)
      : std::invalid_argument(what), cycle_(std::move(cycle)) {}
  /// Objects on a cycle, first object repeated at the end.
  const std::vector<Obj>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<Obj> cycle_;
};

class NotLocallyConfluent : public std::invalid_argument {
 public:
  NotLocallyConfluent(const std::string& what, Obj source, Obj left, Obj right)
      : std::invalid_argument(what),
        source_(std::move(source)),
        left_(std::move(left)),
        right_(std::move(right)) {}
  const Obj& source() const noexcept { return source_; }
  const Obj& left() const noexcept { return left_; }
  const Obj& right() const noexcept { return right_; }

 private:
  Obj source_;
  Obj left_;
  Obj right_;
};

struct SourceLabeling {
  LabeledArs ars;
  Precedence prec;
};

/// Labels every step by the name of its source and orders labels by proper
/// reachability (descendants are smaller). Requires a terminating, locally
/// confluent relation.
SourceLabeling newman_labeling(const UnlabeledArs& ars);

}  // namespace decdiag
