#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decdiag/symbol.hpp"

namespace decdiag {

using LabelSet = std::set<Label>;
using LabelSeq = std::vector<Label>;
using LabelPair = std::pair<Label, Label>;  // (smaller, larger)

/// Finite multiset of labels. Only positive counts are stored, so two
/// multisets are equal exactly when their count maps are equal.
class LabelMultiset {
 public:
  using Count = std::uint64_t;

  LabelMultiset() = default;
  LabelMultiset(std::initializer_list<Label> labels);

  static LabelMultiset of(std::span<const Label> labels);
  static LabelMultiset of(const LabelSet& labels);

  /// Adds n occurrences of l. Throws std::overflow_error if a count would wrap.
  void add(const Label& l, Count n = 1);

  Count count(const Label& l) const;
  bool contains(const Label& l) const { return count(l) > 0; }
  bool empty() const noexcept { return counts_.empty(); }
  Count size() const;
  const std::map<Label, Count>& counts() const noexcept { return counts_; }
  LabelSet elements() const;

  /// Sub-multiset relation (count-wise <=).
  bool is_sub_multiset_of(const LabelMultiset& other) const;

  friend LabelMultiset operator+(const LabelMultiset& a, const LabelMultiset& b);
  /// Multiset difference, truncated at zero.
  friend LabelMultiset operator-(const LabelMultiset& a, const LabelMultiset& b);
  friend bool operator==(const LabelMultiset&, const LabelMultiset&) = default;
  friend bool operator<(const LabelMultiset& a, const LabelMultiset& b) {
    return a.counts_ < b.counts_;
  }

  std::string to_string() const;

 private:
  std::map<Label, Count> counts_;
};

/// Pointwise minimum.
LabelMultiset intersect(const LabelMultiset& a, const LabelMultiset& b);

class PrecedenceError : public std::invalid_argument {
 public:
  PrecedenceError(const std::string& what, std::vector<Label> cycle)
      : std::invalid_argument(what), cycle_(std::move(cycle)) {}
  /// Labels on a cycle, first label repeated at the end.
  const std::vector<Label>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<Label> cycle_;
};

/// A strict order on labels, stored as the full set of (smaller, larger)
/// pairs. Construction closes the input transitively and rejects cycles, so
/// every Precedence value is irreflexive and transitive. On a finite label
/// set this also makes it well-founded.
class Precedence {
 public:
  Precedence() = default;

  /// Throws PrecedenceError when the closure contains a cycle.
  static Precedence from_pairs(std::span<const LabelPair> pairs);
  static Precedence from_pairs(std::initializer_list<LabelPair> pairs);

  /// x ≺ y
  bool less(const Label& x, const Label& y) const;
  const std::set<LabelPair>& pairs() const noexcept { return pairs_; }
  /// Every label mentioned by some pair.
  LabelSet labels() const;
  /// {β | β ≺ α}
  const LabelSet& below(const Label& a) const;
  /// A linear extension: every (x, y) pair has x before y.
  std::vector<Label> topological_order() const;

  friend bool operator==(const Precedence& a, const Precedence& b) {
    return a.pairs_ == b.pairs_;
  }

 private:
  std::set<LabelPair> pairs_;
  std::map<Label, LabelSet> below_;
};

// Down-sets. The set, label, multiset, and sequence forms all reduce to the
// union of the per-label ideals of the distinct elements.
LabelSet downset(const Precedence& prec, const LabelSet& s);
LabelSet downset(const Precedence& prec, const Label& a);
LabelSet downset(const Precedence& prec, const LabelMultiset& m);
LabelSet downset(const Precedence& prec, std::span<const Label> seq);

/// M -s S: drops every occurrence of a label in s.
LabelMultiset diff_s(const LabelMultiset& m, const LabelSet& s);
/// M ∩s S: keeps exactly the occurrences of labels in s.
LabelMultiset cap_s(const LabelMultiset& m, const LabelSet& s);

/// Dershowitz–Manna extension m ≺mul n. Cancels the common part and checks
/// that what remains of m is dominated by a nonempty remainder of n.
bool mul_less(const Precedence& prec, const LabelMultiset& m, const LabelMultiset& n);
/// Reflexive version: m = n or m ≺mul n.
bool mul_leq(const Precedence& prec, const LabelMultiset& m, const LabelMultiset& n);

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One-step extension: n with a single element replaced by finitely many
/// strictly smaller ones yields m.
bool mult1_less(const Precedence& prec, const LabelMultiset& m, const LabelMultiset& n);

/// Transitive closure of mult1_less, decided by breadth-first search. Meant
/// for small oracle-sized inputs; throws SearchBudgetExceeded after
/// `budget` visited multisets.
bool mult_less(const Precedence& prec, const LabelMultiset& m, const LabelMultiset& n,
               std::size_t budget = 200000);

std::string to_string(const LabelSet& s);
std::string to_string(std::span<const Label> seq);

}  // namespace decdiag
