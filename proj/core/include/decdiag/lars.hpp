#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decdiag/measures.hpp"
#include "decdiag/multiset_order.hpp"
#include "decdiag/symbol.hpp"

namespace decdiag {

/// A labeled rewrite step source --label--> target.
struct Step {
  Obj source;
  Label label;
  Obj target;

  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

/// Finite labeled ARS: a set of steps with per-object adjacency indexes.
class LabeledArs {
 public:
  LabeledArs() = default;
  explicit LabeledArs(const std::vector<Step>& steps);

  bool contains(const Step& s) const { return steps_.contains(s); }
  const std::set<Step>& steps() const noexcept { return steps_; }
  const std::vector<Step>& outgoing(const Obj& o) const;
  const std::vector<Step>& incoming(const Obj& o) const;
  std::set<Obj> objects() const;
  LabelSet labels() const;
  bool empty() const noexcept { return steps_.empty(); }

 private:
  std::set<Step> steps_;
  std::map<Obj, std::vector<Step>> out_;
  std::map<Obj, std::vector<Step>> in_;
};

using UnlabeledArs = std::set<std::pair<Obj, Obj>>;

struct SeqStep {
  Label label;
  Obj target;

  friend bool operator==(const SeqStep&, const SeqStep&) = default;
  friend auto operator<=>(const SeqStep&, const SeqStep&) = default;
};

/// A labeled rewrite sequence with explicit intermediate objects; the empty
/// sequence at `start` has an empty tail.
struct RewriteSeq {
  Obj start;
  std::vector<SeqStep> tail;

  bool empty() const noexcept { return tail.empty(); }
  std::size_t size() const noexcept { return tail.size(); }
  Step step(std::size_t i) const;

  friend bool operator==(const RewriteSeq&, const RewriteSeq&) = default;
  friend auto operator<=>(const RewriteSeq&, const RewriteSeq&) = default;
};

struct ConvStep {
  bool forward = true;
  Label label;
  Obj target;

  friend bool operator==(const ConvStep&, const ConvStep&) = default;
  friend auto operator<=>(const ConvStep&, const ConvStep&) = default;
};

/// A conversion: forward entries are steps previous -> target, backward
/// entries are steps target -> previous.
struct Conversion {
  Obj start;
  std::vector<ConvStep> tail;

  bool empty() const noexcept { return tail.empty(); }
  std::size_t size() const noexcept { return tail.size(); }

  friend bool operator==(const Conversion&, const Conversion&) = default;
  friend auto operator<=>(const Conversion&, const Conversion&) = default;
};

/// Two co-initial sequences. `left` is drawn along the top of a diagram (τ),
/// `right` down its left side (σ).
struct Peak {
  RewriteSeq left;
  RewriteSeq right;

  bool is_local() const noexcept { return left.size() == 1 && right.size() == 1; }

  friend bool operator==(const Peak&, const Peak&) = default;
  friend auto operator<=>(const Peak&, const Peak&) = default;
};

/// Four sequences forming a square: top (τ) and left (σ) share their start,
/// right (σ′) leaves the end of top, bottom (τ′) leaves the end of left, and
/// right and bottom meet.
struct Diagram {
  RewriteSeq top;
  RewriteSeq left;
  RewriteSeq right;
  RewriteSeq bottom;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

class EndpointMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sequences.
Obj lst(const RewriteSeq& s);
LabelSeq labels(const RewriteSeq& s);
bool is_seq(const LabeledArs& ars, const RewriteSeq& s);
RewriteSeq empty_seq(const Obj& at);
RewriteSeq single_step(const Step& s);
RewriteSeq seq_concat(const RewriteSeq& a, const RewriteSeq& b);
/// Splits after the first i steps.
std::pair<RewriteSeq, RewriteSeq> seq_split(const RewriteSeq& s, std::size_t i);
/// Splits so that the parts carry the given label sequences.
std::pair<RewriteSeq, RewriteSeq> seq_split_by_labels(const RewriteSeq& s,
                                                      std::span<const Label> first,
                                                      std::span<const Label> second);

// Conversions.
Obj lst(const Conversion& c);
LabelSeq conv_labels(const Conversion& c);
bool is_conv(const LabeledArs& ars, const Conversion& c);
Conversion conv_concat(const Conversion& a, const Conversion& b);
std::pair<Conversion, Conversion> conv_split(const Conversion& c, std::size_t i);
/// Reverses a conversion; every step keeps its label and flips direction.
Conversion conv_mirror(const Conversion& c);
Conversion seq_to_conv(const RewriteSeq& s);

// Diagrams and peaks.
LabelQuad labels(const Diagram& d);
bool is_diagram(const LabeledArs& ars, const Diagram& d);
/// is_diagram plus decreasingness of the labels.
bool dd_check(const LabeledArs& ars, const Precedence& prec, const Diagram& d);
Diagram mirror(const Diagram& d);

bool is_peak(const LabeledArs& ars, const Peak& p);
LabelMultiset peak_measure(const Precedence& prec, const Peak& p);
bool peak_less(const Precedence& prec, const Peak& a, const Peak& b);
/// Every ordered pair of co-initial single steps, identical pairs included.
std::vector<Peak> local_peaks(const LabeledArs& ars);
UnlabeledArs unlabel(const LabeledArs& ars);

std::string to_string(const RewriteSeq& s);
std::string to_string(const Conversion& c);
std::string to_string(const Peak& p);

}  // namespace decdiag
