#include "decdiag/analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <tuple>

namespace decdiag {

namespace {

using Reach = std::map<Obj, std::set<Obj>>;

std::map<Obj, std::vector<Obj>> successors(const UnlabeledArs& ars) {
  std::map<Obj, std::vector<Obj>> succ;
  for (const auto& [a, b] : ars) {
    succ[a].push_back(b);
    succ[b];
  }
  return succ;
}

// Reflexive-transitive closure from each object.
Reach reach_all(const UnlabeledArs& ars) {
  const auto succ = successors(ars);
  Reach reach;
  for (const auto& [start, _] : succ) {
    auto& seen = reach[start];
    std::vector<Obj> todo{start};
    seen.insert(start);
    while (!todo.empty()) {
      Obj o = todo.back();
      todo.pop_back();
      for (const auto& n : succ.at(o))
        if (seen.insert(n).second) todo.push_back(n);
    }
  }
  return reach;
}

std::set<Obj> reach_of(const Reach& reach, const Obj& o) {
  auto it = reach.find(o);
  return it == reach.end() ? std::set<Obj>{o} : it->second;
}

bool meet(const std::set<Obj>& a, const std::set<Obj>& b) {
  return std::any_of(a.begin(), a.end(), [&](const Obj& o) { return b.contains(o); });
}

// ---- LD′-shaped join search ----------------------------------------------

enum class Part { low, pivot, high };

struct Edge {
  Part part;
  ConvStep step;
};

struct SideSpec {
  Obj from;
  LabelSet low;
  Label pivot;
  LabelSet high;
  bool undirected = false;
};

struct SideSearch {
  // Objects reachable in the high phase, with the path that gets there.
  std::map<Obj, std::vector<Edge>> ends;
  bool exhausted = false;
};

// Breadth-first search over (object, phase) states. Phase 0 walks inside the
// low set; a pivot step or an empty move switches to phase 1, which walks
// inside the high set.
SideSearch search_side(const LabeledArs& ars, const SideSpec& spec, std::size_t max_states) {
  using State = std::pair<Obj, int>;
  struct Parent {
    State prev;
    std::optional<Edge> edge;
  };
  std::map<State, std::optional<Parent>> parent;
  std::deque<State> queue;
  SideSearch result;

  auto visit = [&](State s, std::optional<Parent> p) {
    if (parent.contains(s)) return;
    parent.emplace(s, std::move(p));
    queue.push_back(std::move(s));
  };
  visit({spec.from, 0}, std::nullopt);

  auto moves = [&](const Obj& o, const LabelSet& allowed, Part part, int phase,
                   const State& here) {
    for (const auto& s : ars.outgoing(o))
      if (allowed.contains(s.label))
        visit({s.target, phase}, Parent{here, Edge{part, {true, s.label, s.target}}});
    if (!spec.undirected) return;
    for (const auto& s : ars.incoming(o))
      if (allowed.contains(s.label))
        visit({s.source, phase}, Parent{here, Edge{part, {false, s.label, s.source}}});
  };

  while (!queue.empty()) {
    if (max_states && parent.size() > max_states) {
      result.exhausted = true;
      break;
    }
    State here = queue.front();
    queue.pop_front();
    const auto& [o, phase] = here;
    if (phase == 0) {
      visit({o, 1}, Parent{here, std::nullopt});
      moves(o, spec.low, Part::low, 0, here);
      for (const auto& s : ars.outgoing(o))
        if (s.label == spec.pivot)
          visit({s.target, 1}, Parent{here, Edge{Part::pivot, {true, s.label, s.target}}});
    } else {
      moves(o, spec.high, Part::high, 1, here);
    }
  }

  for (const auto& [state, p] : parent) {
    if (state.second != 1) continue;
    std::vector<Edge> path;
    for (State at = state;;) {
      const auto& link = parent.at(at);
      if (!link) break;
      if (link->edge) path.push_back(*link->edge);
      at = link->prev;
    }
    std::reverse(path.begin(), path.end());
    result.ends.emplace(state.first, std::move(path));
  }
  return result;
}

struct SplitPath {
  Conversion low;
  RewriteSeq pivot;
  Conversion high;
};

SplitPath split_path(const Obj& from, const std::vector<Edge>& path) {
  SplitPath r{{from, {}}, {}, {}};
  Obj at = from;
  for (const auto& e : path)
    if (e.part == Part::low) {
      r.low.tail.push_back(e.step);
      at = e.step.target;
    }
  r.pivot = empty_seq(at);
  for (const auto& e : path)
    if (e.part == Part::pivot) {
      r.pivot.tail.push_back({e.step.label, e.step.target});
      at = e.step.target;
    }
  r.high = {at, {}};
  for (const auto& e : path)
    if (e.part == Part::high) r.high.tail.push_back(e.step);
  return r;
}

RewriteSeq forward_only(const Conversion& c) {
  RewriteSeq r = empty_seq(c.start);
  for (const auto& e : c.tail) r.tail.push_back({e.label, e.target});
  return r;
}

LdPrimeDecomposition split_labels(const SplitPath& s) {
  return {conv_labels(s.low), labels(s.pivot), conv_labels(s.high)};
}

PeakResult check_peak(const LabeledArs& ars, const Precedence& prec, Mode mode,
                      const Peak& p, std::size_t max_states) {
  PeakResult r;
  r.peak = p;
  const Obj b_end = lst(p.left);
  const Obj a_end = lst(p.right);
  const bool conv = mode == Mode::conversion;

  if (p.left == p.right) {
    r.status = PeakStatus::decreasing;
    if (conv) {
      const ConvSide none{{b_end, {}}, empty_seq(b_end), {b_end, {}}};
      r.conv_join = LocalConvJoin{none, none};
    } else {
      r.join = LocalJoin{empty_seq(b_end), empty_seq(a_end)};
    }
    r.right_split = LdPrimeDecomposition{};
    r.bottom_split = LdPrimeDecomposition{};
    return r;
  }

  const Label beta = p.left.tail.front().label;
  const Label alpha = p.right.tail.front().label;
  const LabelSet high = downset(prec, LabelSet{alpha, beta});
  const SideSearch right =
      search_side(ars, {b_end, downset(prec, beta), alpha, high, conv}, max_states);
  const SideSearch bottom =
      search_side(ars, {a_end, downset(prec, alpha), beta, high, conv}, max_states);

  // Shortest combined join; ties go to the smallest meeting object.
  const std::vector<Edge>* best_r = nullptr;
  const std::vector<Edge>* best_b = nullptr;
  std::size_t best_len = 0;
  for (const auto& [o, path_r] : right.ends) {
    auto it = bottom.ends.find(o);
    if (it == bottom.ends.end()) continue;
    const std::size_t len = path_r.size() + it->second.size();
    if (!best_r || len < best_len) {
      best_r = &path_r;
      best_b = &it->second;
      best_len = len;
    }
  }

  if (!best_r) {
    r.status = right.exhausted || bottom.exhausted ? PeakStatus::search_exhausted
                                                   : PeakStatus::not_decreasing;
    return r;
  }

  const SplitPath sr = split_path(b_end, *best_r);
  const SplitPath sb = split_path(a_end, *best_b);
  r.status = PeakStatus::decreasing;
  r.right_split = split_labels(sr);
  r.bottom_split = split_labels(sb);
  if (conv) {
    LocalConvJoin j{{sr.low, sr.pivot, sr.high}, {sb.low, sb.pivot, sb.high}};
    if (auto defect = conv_join_defect(ars, prec, p, j); !defect.empty())
      throw std::logic_error("join search produced an invalid conversion join for " +
                             to_string(p) + ": " + defect);
    r.conv_join = std::move(j);
  } else {
    LocalJoin j{seq_concat(seq_concat(forward_only(sr.low), sr.pivot), forward_only(sr.high)),
                seq_concat(seq_concat(forward_only(sb.low), sb.pivot), forward_only(sb.high))};
    if (!dd_check(ars, prec, {p.left, p.right, j.right, j.bottom}))
      throw std::logic_error("join search produced a non-decreasing join for " + to_string(p));
    r.join = std::move(j);
  }
  return r;
}

// Adds a new element to a strict order on the first k labels by choosing its
// down-set and up-set among them.
void extend_orders(std::size_t n, std::size_t k, std::vector<std::vector<bool>>& less,
                   const std::function<void()>& emit) {
  if (k == n) {
    emit();
    return;
  }
  std::vector<int> role(k, 0);  // 0 unrelated, 1 below k, 2 above k
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i < k) {
      for (int r = 0; r < 3; ++r) {
        role[i] = r;
        assign(i + 1);
      }
      return;
    }
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y) {
        if (!less[x][y]) continue;
        if (role[y] == 1 && role[x] != 1) return;  // down-set must be closed
        if (role[x] == 2 && role[y] != 2) return;  // up-set must be closed
      }
    for (std::size_t d = 0; d < k; ++d)
      for (std::size_t u = 0; u < k; ++u)
        if (role[d] == 1 && role[u] == 2 && !less[d][u]) return;
    for (std::size_t x = 0; x < k; ++x) {
      less[x][k] = role[x] == 1;
      less[k][x] = role[x] == 2;
    }
    extend_orders(n, k + 1, less, emit);
    for (std::size_t x = 0; x < k; ++x) less[x][k] = less[k][x] = false;
  };
  assign(0);
}

std::optional<std::vector<Obj>> find_cycle(const UnlabeledArs& ars) {
  const auto succ = successors(ars);
  enum Color { white, grey, black };
  std::map<Obj, Color> color;
  std::vector<Obj> path;
  std::optional<std::vector<Obj>> cycle;

  std::function<void(const Obj&)> dfs = [&](const Obj& o) {
    color[o] = grey;
    path.push_back(o);
    for (const auto& n : succ.at(o)) {
      if (cycle) return;
      if (color[n] == grey) {
        auto from = std::find(path.begin(), path.end(), n);
        cycle = std::vector<Obj>(from, path.end());
        cycle->push_back(n);
        return;
      }
      if (color[n] == white) dfs(n);
    }
    path.pop_back();
    color[o] = black;
  };
  for (const auto& [o, _] : succ) {
    if (cycle) break;
    if (color[o] == white) dfs(o);
  }
  return cycle;
}

}  // namespace

bool joinable_oracle(const UnlabeledArs& ars, const Obj& a, const Obj& b) {
  const Reach reach = reach_all(ars);
  return meet(reach_of(reach, a), reach_of(reach, b));
}

bool confluent_oracle(const UnlabeledArs& ars) {
  const Reach reach = reach_all(ars);
  for (const auto& [a, from_a] : reach)
    for (const auto& b : from_a)
      for (const auto& c : from_a)
        if (b < c && !meet(reach.at(b), reach.at(c))) return false;
  return true;
}

std::string to_string(Mode m) { return m == Mode::valley ? "valley" : "conversion"; }

std::optional<Mode> parse_mode(const std::string& s) {
  if (s == "valley") return Mode::valley;
  if (s == "conversion" || s == "conv") return Mode::conversion;
  return std::nullopt;
}

std::string to_string(PeakStatus s) {
  switch (s) {
    case PeakStatus::decreasing:
      return "decreasing";
    case PeakStatus::not_decreasing:
      return "not-decreasing";
    case PeakStatus::search_exhausted:
      return "search-exhausted";
  }
  return "unknown";
}

bool LdReport::all_decreasing() const { return first_failure() == nullptr; }

const PeakResult* LdReport::first_failure() const {
  for (const auto& r : peaks)
    if (r.status != PeakStatus::decreasing) return &r;
  return nullptr;
}

LdReport check_locally_decreasing(const LabeledArs& ars, const Precedence& prec, Mode mode,
                                  const SearchOptions& options) {
  LdReport report{mode, {}};
  for (const auto& p : local_peaks(ars)) {
    report.peaks.push_back(check_peak(ars, prec, mode, p, options.max_states));
    if (options.stop_at_first_failure && report.peaks.back().status != PeakStatus::decreasing)
      break;
  }
  return report;
}

LocalCompletionMap completion_map(const LabeledArs& ars, const Precedence& prec,
                                  const LdReport& report) {
  if (report.mode != Mode::valley)
    throw std::invalid_argument("completion_map needs a valley-mode report");
  std::map<Peak, LocalJoin> entries;
  for (const auto& r : report.peaks) {
    if (!r.join) throw std::invalid_argument("no join for " + to_string(r.peak));
    entries.emplace(r.peak, *r.join);
  }
  return LocalCompletionMap(ars, prec, std::move(entries));
}

LocalConvMap conv_map(const LabeledArs& ars, const Precedence& prec, const LdReport& report) {
  if (report.mode == Mode::valley) return embed_valleys(ars, prec, completion_map(ars, prec, report));
  std::map<Peak, LocalConvJoin> entries;
  for (const auto& r : report.peaks) {
    if (!r.conv_join) throw std::invalid_argument("no conversion join for " + to_string(r.peak));
    entries.emplace(r.peak, *r.conv_join);
  }
  return LocalConvMap(ars, prec, std::move(entries));
}

std::vector<Precedence> strict_partial_orders(const LabelSet& labels) {
  const std::vector<Label> ls(labels.begin(), labels.end());
  const std::size_t n = ls.size();
  std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
  std::vector<Precedence> orders;
  extend_orders(n, 0, less, [&] {
    std::vector<LabelPair> pairs;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (less[x][y]) pairs.emplace_back(ls[x], ls[y]);
    orders.push_back(Precedence::from_pairs(pairs));
  });
  std::sort(orders.begin(), orders.end(), [](const Precedence& a, const Precedence& b) {
    return std::forward_as_tuple(a.pairs().size(), a.pairs()) <
           std::forward_as_tuple(b.pairs().size(), b.pairs());
  });
  return orders;
}

std::optional<Precedence> find_precedence(const LabeledArs& ars, Mode mode, std::size_t cap) {
  const LabelSet labels = ars.labels();
  if (labels.size() > cap)
    throw SearchCapExceeded("precedence search is capped at " + std::to_string(cap) +
                            " labels, the ARS has " + std::to_string(labels.size()));
  const SearchOptions options{0, true};
  for (const auto& prec : strict_partial_orders(labels))
    if (check_locally_decreasing(ars, prec, mode, options).all_decreasing()) return prec;
  return std::nullopt;
}

SourceLabeling newman_labeling(const UnlabeledArs& ars) {
  if (auto cycle = find_cycle(ars)) {
    std::string names;
    for (const auto& o : *cycle) names += (names.empty() ? "" : " -> ") + o.name();
    throw NonTerminating("relation is not terminating: " + names, *cycle);
  }

  const Reach reach = reach_all(ars);
  const auto succ = successors(ars);
  for (const auto& [s, next] : succ)
    for (const auto& b : next)
      for (const auto& c : next)
        if (b < c && !meet(reach.at(b), reach.at(c)))
          throw NotLocallyConfluent("local peak " + b.name() + " <- " + s.name() + " -> " +
                                        c.name() + " is not joinable",
                                    s, b, c);

  std::vector<Step> steps;
  for (const auto& [a, b] : ars) steps.push_back({a, Label(a.name()), b});
  std::vector<LabelPair> pairs;
  for (const auto& [x, from_x] : reach)
    for (const auto& y : from_x)
      if (y != x) pairs.emplace_back(Label(y.name()), Label(x.name()));
  return {LabeledArs(steps), Precedence::from_pairs(pairs)};
}

}  // namespace decdiag
