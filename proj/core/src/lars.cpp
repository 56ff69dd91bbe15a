#include "decdiag/lars.hpp"

#include <algorithm>

namespace decdiag {

LabeledArs::LabeledArs(const std::vector<Step>& steps) {
  for (const auto& s : steps) {
    if (!steps_.insert(s).second) continue;
    out_[s.source].push_back(s);
    in_[s.target].push_back(s);
  }
}

const std::vector<Step>& LabeledArs::outgoing(const Obj& o) const {
  static const std::vector<Step> none;
  auto it = out_.find(o);
  return it == out_.end() ? none : it->second;
}

const std::vector<Step>& LabeledArs::incoming(const Obj& o) const {
  static const std::vector<Step> none;
  auto it = in_.find(o);
  return it == in_.end() ? none : it->second;
}

std::set<Obj> LabeledArs::objects() const {
  std::set<Obj> r;
  for (const auto& s : steps_) {
    r.insert(s.source);
    r.insert(s.target);
  }
  return r;
}

LabelSet LabeledArs::labels() const {
  LabelSet r;
  for (const auto& s : steps_) r.insert(s.label);
  return r;
}

Step RewriteSeq::step(std::size_t i) const {
  const Obj& from = i == 0 ? start : tail.at(i - 1).target;
  return {from, tail.at(i).label, tail.at(i).target};
}

Obj lst(const RewriteSeq& s) { return s.tail.empty() ? s.start : s.tail.back().target; }

LabelSeq labels(const RewriteSeq& s) {
  LabelSeq r;
  r.reserve(s.tail.size());
  for (const auto& e : s.tail) r.push_back(e.label);
  return r;
}

bool is_seq(const LabeledArs& ars, const RewriteSeq& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!ars.contains(s.step(i))) return false;
  return true;
}

RewriteSeq empty_seq(const Obj& at) { return {at, {}}; }

RewriteSeq single_step(const Step& s) { return {s.source, {{s.label, s.target}}}; }

RewriteSeq seq_concat(const RewriteSeq& a, const RewriteSeq& b) {
  if (lst(a) != b.start)
    throw EndpointMismatch("seq_concat: " + to_string(a) + " ends at " + lst(a).name() +
                           " but " + to_string(b) + " starts at " + b.start.name());
  RewriteSeq r = a;
  r.tail.insert(r.tail.end(), b.tail.begin(), b.tail.end());
  return r;
}

std::pair<RewriteSeq, RewriteSeq> seq_split(const RewriteSeq& s, std::size_t i) {
  if (i > s.size())
    throw std::out_of_range("seq_split: index " + std::to_string(i) + " beyond length " +
                            std::to_string(s.size()));
  const auto mid = s.tail.begin() + static_cast<std::ptrdiff_t>(i);
  RewriteSeq first{s.start, {s.tail.begin(), mid}};
  RewriteSeq second{lst(first), {mid, s.tail.end()}};
  return {std::move(first), std::move(second)};
}

std::pair<RewriteSeq, RewriteSeq> seq_split_by_labels(const RewriteSeq& s,
                                                      std::span<const Label> first,
                                                      std::span<const Label> second) {
  LabelSeq expected(first.begin(), first.end());
  expected.insert(expected.end(), second.begin(), second.end());
  if (labels(s) != expected)
    throw std::invalid_argument("seq_split_by_labels: " + to_string(s) +
                                " does not carry labels " + to_string(expected));
  return seq_split(s, first.size());
}

Obj lst(const Conversion& c) { return c.tail.empty() ? c.start : c.tail.back().target; }

LabelSeq conv_labels(const Conversion& c) {
  LabelSeq r;
  r.reserve(c.tail.size());
  for (const auto& e : c.tail) r.push_back(e.label);
  return r;
}

bool is_conv(const LabeledArs& ars, const Conversion& c) {
  Obj at = c.start;
  for (const auto& e : c.tail) {
    Step s = e.forward ? Step{at, e.label, e.target} : Step{e.target, e.label, at};
    if (!ars.contains(s)) return false;
    at = e.target;
  }
  return true;
}

Conversion conv_concat(const Conversion& a, const Conversion& b) {
  if (lst(a) != b.start)
    throw EndpointMismatch("conv_concat: " + to_string(a) + " ends at " + lst(a).name() +
                           " but " + to_string(b) + " starts at " + b.start.name());
  Conversion r = a;
  r.tail.insert(r.tail.end(), b.tail.begin(), b.tail.end());
  return r;
}

std::pair<Conversion, Conversion> conv_split(const Conversion& c, std::size_t i) {
  if (i > c.size())
    throw std::out_of_range("conv_split: index " + std::to_string(i) + " beyond length " +
                            std::to_string(c.size()));
  const auto mid = c.tail.begin() + static_cast<std::ptrdiff_t>(i);
  Conversion first{c.start, {c.tail.begin(), mid}};
  Conversion second{lst(first), {mid, c.tail.end()}};
  return {std::move(first), std::move(second)};
}

Conversion conv_mirror(const Conversion& c) {
  Conversion r{lst(c), {}};
  r.tail.reserve(c.size());
  for (std::size_t i = c.size(); i-- > 0;) {
    const Obj& prev = i == 0 ? c.start : c.tail[i - 1].target;
    r.tail.push_back({!c.tail[i].forward, c.tail[i].label, prev});
  }
  return r;
}

Conversion seq_to_conv(const RewriteSeq& s) {
  Conversion r{s.start, {}};
  r.tail.reserve(s.size());
  for (const auto& e : s.tail) r.tail.push_back({true, e.label, e.target});
  return r;
}

LabelQuad labels(const Diagram& d) {
  return {labels(d.top), labels(d.left), labels(d.right), labels(d.bottom)};
}

bool is_diagram(const LabeledArs& ars, const Diagram& d) {
  return is_seq(ars, d.top) && is_seq(ars, d.left) && is_seq(ars, d.right) &&
         is_seq(ars, d.bottom) && d.left.start == d.top.start &&
         lst(d.left) == d.bottom.start && lst(d.top) == d.right.start &&
         lst(d.right) == lst(d.bottom);
}

bool dd_check(const LabeledArs& ars, const Precedence& prec, const Diagram& d) {
  return is_diagram(ars, d) && decreasing(prec, labels(d));
}

Diagram mirror(const Diagram& d) { return {d.left, d.top, d.bottom, d.right}; }

bool is_peak(const LabeledArs& ars, const Peak& p) {
  return p.left.start == p.right.start && is_seq(ars, p.left) && is_seq(ars, p.right);
}

LabelMultiset peak_measure(const Precedence& prec, const Peak& p) {
  return lexmax(prec, labels(p.left)) + lexmax(prec, labels(p.right));
}

bool peak_less(const Precedence& prec, const Peak& a, const Peak& b) {
  return mul_less(prec, peak_measure(prec, a), peak_measure(prec, b));
}

std::vector<Peak> local_peaks(const LabeledArs& ars) {
  std::vector<Peak> peaks;
  for (const auto& o : ars.objects()) {
    const auto& out = ars.outgoing(o);
    for (const auto& a : out)
      for (const auto& b : out) peaks.push_back({single_step(a), single_step(b)});
  }
  std::sort(peaks.begin(), peaks.end());
  return peaks;
}

UnlabeledArs unlabel(const LabeledArs& ars) {
  UnlabeledArs r;
  for (const auto& s : ars.steps()) r.emplace(s.source, s.target);
  return r;
}

std::string to_string(const RewriteSeq& s) {
  std::string r = s.start.name();
  for (const auto& e : s.tail) r += " -" + e.label.name() + "-> " + e.target.name();
  return r;
}

std::string to_string(const Conversion& c) {
  std::string r = c.start.name();
  for (const auto& e : c.tail)
    r += (e.forward ? " -" : " <-") + e.label.name() + (e.forward ? "-> " : "- ") +
         e.target.name();
  return r;
}

std::string to_string(const Peak& p) {
  return "(" + to_string(p.left) + " | " + to_string(p.right) + ")";
}

}  // namespace decdiag
