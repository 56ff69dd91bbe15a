#include "decdiag/completion.hpp"

#include <algorithm>
#include <optional>

namespace decdiag {

namespace {

bool labels_within(std::span<const Label> seq, const LabelSet& allowed) {
  return std::all_of(seq.begin(), seq.end(),
                     [&](const Label& l) { return allowed.contains(l); });
}

Label step_label(const RewriteSeq& single) { return single.tail.front().label; }

Diagram as_diagram(const Peak& p, const LocalJoin& j) {
  return {p.left, p.right, j.right, j.bottom};
}

Diagram trivial_completion(const Peak& p) {
  if (p.left.empty()) return {p.left, p.right, p.right, empty_seq(lst(p.right))};
  return {p.left, p.right, empty_seq(lst(p.left)), p.left};
}

void require_local_peak(const LabeledArs& ars, const Peak& p) {
  if (!p.is_local() || !is_peak(ars, p))
    throw InvalidLocalMap("entry key is not a local peak: " + to_string(p), p);
}

// Runs the peak-completion recursion with an explicit frame stack. The local
// corner of each frame comes from `corner_`; every sub-peak must be strictly
// below its parent in the multiset extension, and fuel bounds the total
// number of sub-completions.
class Engine {
 public:
  using Corner = std::function<LocalJoin(const Peak&)>;

  Engine(const LabeledArs& ars, const Precedence& prec, std::size_t fuel)
      : ars_(ars), prec_(prec), fuel_(fuel) {}

  void set_corner(Corner corner) { corner_ = std::move(corner); }
  CompletionTrace& trace() { return trace_; }

  Diagram complete(const Peak& root) {
    struct Frame {
      Peak peak;
      LabelMultiset measure;
      int stage = 0;
      RewriteSeq alpha;
      RewriteSeq upsilon;
      RewriteSeq rho;
      LocalJoin local;
      Diagram dih1;
    };

    std::vector<Frame> stack;
    stack.push_back(Frame{root, peak_measure(prec_, root), 0, {}, {}, {}, {}, {}});
    std::optional<Diagram> returned;

    auto push_child = [&](Peak child, const char* rule) {
      // Peaks with an empty side close on the spot.
      if (child.left.empty() || child.right.empty()) {
        returned = trivial_completion(child);
        return;
      }
      // `stack.back()` is the parent; copy what we need before growing.
      LabelMultiset parent_measure = stack.back().measure;
      LabelMultiset child_measure = peak_measure(prec_, child);
      record(parent_measure, child_measure, rule, child);
      stack.push_back(Frame{std::move(child), std::move(child_measure), 0, {}, {}, {}, {}, {}});
    };

    while (!stack.empty()) {
      Frame& f = stack.back();
      switch (f.stage) {
        case 0: {
          if (f.peak.left.empty() || f.peak.right.empty()) {
            returned = trivial_completion(f.peak);
            stack.pop_back();
            break;
          }
          auto [beta, upsilon] = seq_split(f.peak.left, 1);
          auto [alpha, rho] = seq_split(f.peak.right, 1);
          f.local = corner_(Peak{beta, alpha});
          f.alpha = std::move(alpha);
          f.upsilon = std::move(upsilon);
          f.rho = std::move(rho);
          f.stage = 1;
          push_child(Peak{f.upsilon, f.local.right}, "left");
          break;
        }
        case 1: {
          Diagram ih1 = std::move(*returned);
          returned.reset();
          // Paste the local diagram and IH1 side by side.
          f.dih1 = {f.peak.left, f.alpha, ih1.right, seq_concat(f.local.bottom, ih1.bottom)};
          f.stage = 2;
          push_child(Peak{f.dih1.bottom, f.rho}, "bottom");
          break;
        }
        default: {
          Diagram ih2 = std::move(*returned);
          // Paste DIH1 on top of IH2.
          returned = Diagram{f.peak.left, f.peak.right, seq_concat(f.dih1.right, ih2.right),
                             ih2.bottom};
          stack.pop_back();
          break;
        }
      }
    }
    return std::move(*returned);
  }

  /// Completes a peak that must lie strictly below `bound`.
  Diagram complete_below(const Peak& p, const LabelMultiset& bound, const char* rule) {
    if (!is_peak(ars_, p))
      throw CompletionError(CompletionError::Kind::invalid_peak,
                            "not a peak of the ARS: " + to_string(p), p);
    record(bound, peak_measure(prec_, p), rule, p);
    return complete(p);
  }

 private:
  void record(const LabelMultiset& before, const LabelMultiset& after, const char* rule,
              const Peak& p) {
    if (!mul_less(prec_, after, before))
      throw CompletionError(CompletionError::Kind::measure_not_decreasing,
                            "peak measure " + after.to_string() + " is not below " +
                                before.to_string() + " at " + to_string(p),
                            p);
    if (used_ >= fuel_)
      throw CompletionError(CompletionError::Kind::fuel_exhausted,
                            "completion fuel of " + std::to_string(fuel_) + " exhausted at " +
                                to_string(p),
                            p);
    ++used_;
    trace_.events.push_back({before, after, rule});
  }

  const LabeledArs& ars_;
  const Precedence& prec_;
  std::size_t fuel_;
  std::size_t used_ = 0;
  Corner corner_;
  CompletionTrace trace_;
};

std::size_t fuel_for(const LabeledArs& ars, const CompletionOptions& options) {
  return options.fuel ? options.fuel : default_fuel(ars);
}

void require_peak(const LabeledArs& ars, const Peak& p) {
  if (!is_peak(ars, p))
    throw CompletionError(CompletionError::Kind::invalid_peak,
                          "not a peak of the ARS: " + to_string(p), p);
}

Completion finish(const LabeledArs& ars, const Precedence& prec, const Peak& peak,
                  Diagram d, CompletionTrace trace) {
  if (d.top != peak.left || d.left != peak.right || !dd_check(ars, prec, d))
    throw std::logic_error("completion produced a non-decreasing diagram for " +
                           to_string(peak));
  return {std::move(d), std::move(trace)};
}

Diagram checked_complete(const LabeledArs& ars, const Precedence& prec,
                         const PeakCompleter& completer, const Peak& p) {
  Diagram d = completer(p);
  if (d.top != p.left || d.left != p.right || !dd_check(ars, prec, d))
    throw CompletionError(CompletionError::Kind::completer_failed,
                          "completer returned no decreasing diagram for " + to_string(p), p);
  return d;
}

}  // namespace

LocalCompletionMap::LocalCompletionMap(const LabeledArs& ars, const Precedence& prec,
                                       std::map<Peak, LocalJoin> entries)
    : entries_(std::move(entries)) {
  for (const auto& [p, j] : entries_) {
    require_local_peak(ars, p);
    if (!dd_check(ars, prec, as_diagram(p, j)))
      throw InvalidLocalMap("join is not a decreasing diagram for " + to_string(p), p);
  }
  for (const auto& p : local_peaks(ars))
    if (!entries_.contains(p)) throw InvalidLocalMap("missing join for " + to_string(p), p);
}

const LocalJoin* LocalCompletionMap::find(const Peak& p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string conv_join_defect(const LabeledArs& ars, const Precedence& prec, const Peak& p,
                             const LocalConvJoin& join) {
  if (!p.is_local() || !is_peak(ars, p)) return "not a local peak";
  const Label beta = step_label(p.left);
  const Label alpha = step_label(p.right);
  const LabelSet both_below = downset(prec, LabelSet{alpha, beta});

  auto side = [&](const ConvSide& s, const Obj& from, const Label& own,
                  const Label& pivot_label, const char* name) -> std::string {
    const std::string where = std::string(name) + " side: ";
    if (s.low.start != from) return where + "low conversion starts at the wrong object";
    if (!is_conv(ars, s.low)) return where + "low part is not a conversion of the ARS";
    if (!labels_within(conv_labels(s.low), downset(prec, own)))
      return where + "low part leaves the down-set of " + own.name();
    if (s.pivot.start != lst(s.low)) return where + "pivot does not follow the low part";
    if (s.pivot.size() > 1) return where + "pivot has more than one step";
    if (!is_seq(ars, s.pivot)) return where + "pivot is not a step of the ARS";
    if (!s.pivot.empty() && step_label(s.pivot) != pivot_label)
      return where + "pivot is not labeled " + pivot_label.name();
    if (s.high.start != lst(s.pivot)) return where + "high part does not follow the pivot";
    if (!is_conv(ars, s.high)) return where + "high part is not a conversion of the ARS";
    if (!labels_within(conv_labels(s.high), both_below))
      return where + "high part leaves the down-set of {" + alpha.name() + "," +
             beta.name() + "}";
    return {};
  };

  if (auto d = side(join.right, lst(p.left), beta, alpha, "right"); !d.empty()) return d;
  if (auto d = side(join.bottom, lst(p.right), alpha, beta, "bottom"); !d.empty()) return d;
  if (lst(join.right.high) != lst(join.bottom.high)) return "the two sides do not meet";
  return {};
}

LocalConvMap::LocalConvMap(const LabeledArs& ars, const Precedence& prec,
                           std::map<Peak, LocalConvJoin> entries)
    : entries_(std::move(entries)) {
  for (const auto& [p, j] : entries_) {
    require_local_peak(ars, p);
    if (auto defect = conv_join_defect(ars, prec, p, j); !defect.empty())
      throw InvalidLocalMap("invalid conversion join for " + to_string(p) + ": " + defect, p);
  }
  for (const auto& p : local_peaks(ars))
    if (!entries_.contains(p))
      throw InvalidLocalMap("missing conversion join for " + to_string(p), p);
}

const LocalConvJoin* LocalConvMap::find(const Peak& p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? nullptr : &it->second;
}

LocalConvMap embed_valleys(const LabeledArs& ars, const Precedence& prec,
                           const LocalCompletionMap& lcm) {
  auto split = [&](const RewriteSeq& s, const Label& pivot_label, const Label& peer) {
    LdPrimeDecomposition dec = ld_decompose(prec, pivot_label, peer, labels(s));
    auto [low, rest] = seq_split(s, dec.prefix.size());
    auto [pivot, high] = seq_split(rest, dec.pivot.size());
    return ConvSide{seq_to_conv(low), pivot, seq_to_conv(high)};
  };

  std::map<Peak, LocalConvJoin> entries;
  for (const auto& [p, j] : lcm.entries()) {
    const Label beta = step_label(p.left);
    const Label alpha = step_label(p.right);
    entries.emplace(p, LocalConvJoin{split(j.right, alpha, beta), split(j.bottom, beta, alpha)});
  }
  return LocalConvMap(ars, prec, std::move(entries));
}

std::size_t default_fuel(const LabeledArs& ars) {
  return ars.objects().size() * ars.steps().size() * 16;
}

Completion complete_peak(const LabeledArs& ars, const Precedence& prec,
                         const LocalCompletionMap& lcm, const Peak& peak,
                         const CompletionOptions& options) {
  require_peak(ars, peak);
  Engine engine(ars, prec, fuel_for(ars, options));
  engine.set_corner([&](const Peak& local) {
    const LocalJoin* j = lcm.find(local);
    if (!j)
      throw CompletionError(CompletionError::Kind::missing_local_entry,
                            "no local join for " + to_string(local), local);
    return *j;
  });
  Diagram d = engine.complete(peak);
  return finish(ars, prec, peak, std::move(d), std::move(engine.trace()));
}

Completion mirror_peak_complete(const LabeledArs& ars, const Precedence& prec,
                                const LocalCompletionMap& lcm, const Peak& peak,
                                const CompletionOptions& options) {
  Completion c = complete_peak(ars, prec, lcm, Peak{peak.right, peak.left}, options);
  return finish(ars, prec, peak, mirror(c.diagram), std::move(c.trace));
}

Valley key1_close(const LabeledArs& ars, const Precedence& prec, const PeakCompleter& completer,
                  const LabelMultiset& bound, const Conversion& conv) {
  const LabelSet allowed = downset(prec, bound);
  const Peak as_peak{empty_seq(conv.start), empty_seq(conv.start)};
  if (!is_conv(ars, conv))
    throw CompletionError(CompletionError::Kind::invalid_peak,
                          "not a conversion of the ARS: " + to_string(conv), as_peak);
  if (!labels_within(conv_labels(conv), allowed))
    throw CompletionError(CompletionError::Kind::downset_violation,
                          "conversion " + to_string(conv) + " leaves the down-set of " +
                              bound.to_string(),
                          as_peak);

  // Walk from the end: `acc` joins the current object with lst(conv).
  Valley acc{empty_seq(lst(conv)), empty_seq(lst(conv))};
  for (std::size_t i = conv.size(); i-- > 0;) {
    const Obj& prev = i == 0 ? conv.start : conv.tail[i - 1].target;
    const ConvStep& e = conv.tail[i];
    if (e.forward) {
      acc.from_start = seq_concat(single_step({prev, e.label, e.target}), acc.from_start);
      continue;
    }
    const Peak p{single_step({e.target, e.label, prev}), acc.from_start};
    Diagram d = checked_complete(ars, prec, completer, p);
    if (!labels_within(labels(d.right), allowed) || !labels_within(labels(d.bottom), allowed))
      throw CompletionError(CompletionError::Kind::downset_violation,
                            "closing " + to_string(p) + " left the down-set of " +
                                bound.to_string(),
                            p);
    acc.from_start = d.right;
    acc.from_end = seq_concat(acc.from_end, d.bottom);
  }
  return acc;
}

Key2Closing key2_close(const LabeledArs& ars, const Precedence& prec,
                       const PeakCompleter& completer, const Label& alpha, const Label& beta,
                       const RewriteSeq& t, const RewriteSeq& s) {
  const Peak p{t, s};
  if (s.size() > 1 || (!s.empty() && step_label(s) != alpha))
    throw CompletionError(CompletionError::Kind::invalid_peak,
                          "key2_close: second side must be at most one " + alpha.name() +
                              " step",
                          p);
  if (!labels_within(labels(t), downset(prec, beta)))
    throw CompletionError(CompletionError::Kind::downset_violation,
                          "key2_close: first side leaves the down-set of " + beta.name(), p);

  Diagram d = checked_complete(ars, prec, completer, p);
  const LabelSet both_below = downset(prec, LabelSet{alpha, beta});
  if (!labels_within(labels(d.bottom), both_below))
    throw CompletionError(CompletionError::Kind::downset_violation,
                          "key2_close: join from the " + alpha.name() +
                              " side leaves the down-set of {" + alpha.name() + "," +
                              beta.name() + "}",
                          p);

  const LabelSeq t_labels = labels(t);
  LdPrimeDecomposition dec;
  try {
    dec = ld_decompose_seqlabels(prec, alpha, t_labels, labels(d.right));
  } catch (const LdViolation& e) {
    throw CompletionError(CompletionError::Kind::completer_failed,
                          std::string("key2_close: ") + e.what(), p);
  }
  auto [prefix, rest] = seq_split(d.right, dec.prefix.size());
  auto [pivot, suffix] = seq_split(rest, dec.pivot.size());
  // prefix ⊆ ↓t ⊆ ↓β and suffix ⊆ ↓(α t) ⊆ ↓{α,β} by transitivity.
  if (!labels_within(labels(prefix), downset(prec, beta)) ||
      !labels_within(labels(suffix), both_below))
    throw std::logic_error("key2_close: decomposition escaped its down-sets");
  return {std::move(prefix), std::move(pivot), std::move(suffix), std::move(d.bottom)};
}

LocalJoin close_conversion_corner(const LabeledArs& ars, const Precedence& prec,
                                  const PeakCompleter& completer, const Peak& local,
                                  const LocalConvJoin& join) {
  if (auto defect = conv_join_defect(ars, prec, local, join); !defect.empty())
    throw InvalidLocalMap("invalid conversion join for " + to_string(local) + ": " + defect,
                          local);
  const Label beta = step_label(local.left);
  const Label alpha = step_label(local.right);

  // Side starting after the α step: close the ↓α conversion, then the peak
  // it forms with the optional β pivot.
  Valley low_b = key1_close(ars, prec, completer, {alpha}, join.bottom.low);
  Key2Closing k2_b = key2_close(ars, prec, completer, beta, alpha, low_b.from_end,
                                join.bottom.pivot);
  // Mirror image on the side starting after the β step.
  Valley low_r = key1_close(ars, prec, completer, {beta}, join.right.low);
  Key2Closing k2_r = key2_close(ars, prec, completer, alpha, beta, low_r.from_end,
                                join.right.pivot);

  // Everything left in the middle lies below {α,β}.
  Conversion middle = conv_mirror(seq_to_conv(k2_b.other));
  middle = conv_concat(middle, join.bottom.high);
  middle = conv_concat(middle, conv_mirror(join.right.high));
  middle = conv_concat(middle, seq_to_conv(k2_r.other));
  Valley top = key1_close(ars, prec, completer, {alpha, beta}, middle);

  RewriteSeq bottom = low_b.from_start;
  for (const auto* part : {&k2_b.prefix, &k2_b.pivot, &k2_b.suffix, &top.from_start})
    bottom = seq_concat(bottom, *part);
  RewriteSeq right = low_r.from_start;
  for (const auto* part : {&k2_r.prefix, &k2_r.pivot, &k2_r.suffix, &top.from_end})
    right = seq_concat(right, *part);

  LocalJoin result{std::move(right), std::move(bottom)};
  if (!dd_check(ars, prec, as_diagram(local, result)))
    throw std::logic_error("closing the conversion join of " + to_string(local) +
                           " did not give a decreasing valley");
  return result;
}

Completion complete_peak_conv(const LabeledArs& ars, const Precedence& prec,
                              const LocalConvMap& lconv, const Peak& peak,
                              const CompletionOptions& options) {
  require_peak(ars, peak);
  Engine engine(ars, prec, fuel_for(ars, options));
  std::map<Peak, LocalJoin> closed;

  engine.set_corner([&](const Peak& local) -> LocalJoin {
    if (auto it = closed.find(local); it != closed.end()) return it->second;
    const LocalConvJoin* j = lconv.find(local);
    if (!j)
      throw CompletionError(CompletionError::Kind::missing_local_entry,
                            "no conversion join for " + to_string(local), local);
    const LabelMultiset bound{step_label(local.left), step_label(local.right)};
    PeakCompleter below = [&engine, bound](const Peak& p) {
      return engine.complete_below(p, bound, "corner");
    };
    LocalJoin result = close_conversion_corner(ars, prec, below, local, *j);
    closed.emplace(local, result);
    return result;
  });
  Diagram d = engine.complete(peak);
  return finish(ars, prec, peak, std::move(d), std::move(engine.trace()));
}

}  // namespace decdiag
