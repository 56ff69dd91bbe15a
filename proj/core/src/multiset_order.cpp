#include "decdiag/multiset_order.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>

namespace decdiag {

LabelMultiset::LabelMultiset(std::initializer_list<Label> labels) {
  for (const auto& l : labels) add(l);
}

LabelMultiset LabelMultiset::of(std::span<const Label> labels) {
  LabelMultiset m;
  for (const auto& l : labels) m.add(l);
  return m;
}

LabelMultiset LabelMultiset::of(const LabelSet& labels) {
  LabelMultiset m;
  for (const auto& l : labels) m.add(l);
  return m;
}

void LabelMultiset::add(const Label& l, Count n) {
  if (n == 0) return;
  Count& c = counts_[l];
  if (c > std::numeric_limits<Count>::max() - n)
    throw std::overflow_error("label multiplicity overflow for " + l.name());
  c += n;
}

LabelMultiset::Count LabelMultiset::count(const Label& l) const {
  auto it = counts_.find(l);
  return it == counts_.end() ? 0 : it->second;
}

LabelMultiset::Count LabelMultiset::size() const {
  Count total = 0;
  for (const auto& [l, c] : counts_) total += c;
  return total;
}

LabelSet LabelMultiset::elements() const {
  LabelSet s;
  for (const auto& [l, c] : counts_) s.insert(s.end(), l);
  return s;
}

bool LabelMultiset::is_sub_multiset_of(const LabelMultiset& other) const {
  for (const auto& [l, c] : counts_)
    if (other.count(l) < c) return false;
  return true;
}

LabelMultiset operator+(const LabelMultiset& a, const LabelMultiset& b) {
  LabelMultiset r = a;
  for (const auto& [l, c] : b.counts_) r.add(l, c);
  return r;
}

LabelMultiset operator-(const LabelMultiset& a, const LabelMultiset& b) {
  LabelMultiset r;
  for (const auto& [l, c] : a.counts_) {
    auto other = b.count(l);
    if (c > other) r.counts_.emplace_hint(r.counts_.end(), l, c - other);
  }
  return r;
}

LabelMultiset intersect(const LabelMultiset& a, const LabelMultiset& b) {
  LabelMultiset r;
  for (const auto& [l, c] : a.counts()) r.add(l, std::min(c, b.count(l)));
  return r;
}

std::string LabelMultiset::to_string() const {
  std::ostringstream os;
  os << "{#";
  bool first = true;
  for (const auto& [l, c] : counts_) {
    for (Count i = 0; i < c; ++i) {
      os << (first ? "" : ",") << l;
      first = false;
    }
  }
  os << "#}";
  return os.str();
}

namespace {

// Depth-first search for a cycle in the raw (unclosed) relation.
std::vector<Label> find_cycle(const std::map<Label, LabelSet>& above) {
  std::map<Label, int> color;  // 0 white, 1 grey, 2 black
  std::vector<Label> path;
  std::vector<Label> cycle;

  std::function<bool(const Label&)> visit = [&](const Label& x) {
    color[x] = 1;
    path.push_back(x);
    if (auto it = above.find(x); it != above.end()) {
      for (const auto& y : it->second) {
        if (color[y] == 1) {
          auto start = std::find(path.begin(), path.end(), y);
          cycle.assign(start, path.end());
          cycle.push_back(y);
          return true;
        }
        if (color[y] == 0 && visit(y)) return true;
      }
    }
    path.pop_back();
    color[x] = 2;
    return false;
  };

  for (const auto& [x, ys] : above)
    if (color[x] == 0 && visit(x)) return cycle;
  return {};
}

}  // namespace

Precedence Precedence::from_pairs(std::span<const LabelPair> pairs) {
  // above[x] = labels y with x ≺ y
  std::map<Label, LabelSet> above;
  for (const auto& [x, y] : pairs) {
    above[x].insert(y);
    above.try_emplace(y);
  }
  if (auto cycle = find_cycle(above); !cycle.empty()) {
    std::string msg = "precedence contains a cycle: " + to_string(cycle);
    throw PrecedenceError(msg, std::move(cycle));
  }

  Precedence p;
  // Closure by DFS from every label; fine for the label counts we handle.
  for (const auto& [x, direct] : above) {
    std::vector<Label> stack(direct.begin(), direct.end());
    LabelSet seen;
    while (!stack.empty()) {
      Label y = std::move(stack.back());
      stack.pop_back();
      if (!seen.insert(y).second) continue;
      for (const auto& z : above.at(y)) stack.push_back(z);
    }
    for (const auto& y : seen) {
      p.pairs_.emplace(x, y);
      p.below_[y].insert(x);
    }
  }
  return p;
}

Precedence Precedence::from_pairs(std::initializer_list<LabelPair> pairs) {
  return from_pairs(std::span<const LabelPair>(pairs.begin(), pairs.size()));
}

bool Precedence::less(const Label& x, const Label& y) const {
  return pairs_.contains({x, y});
}

LabelSet Precedence::labels() const {
  LabelSet s;
  for (const auto& [x, y] : pairs_) {
    s.insert(x);
    s.insert(y);
  }
  return s;
}

const LabelSet& Precedence::below(const Label& a) const {
  static const LabelSet empty;
  auto it = below_.find(a);
  return it == below_.end() ? empty : it->second;
}

std::vector<Label> Precedence::topological_order() const {
  // Smaller labels first: order by number of labels below, which is strictly
  // monotone along a transitive acyclic relation; ties broken by name.
  std::vector<Label> order;
  for (const auto& l : labels()) order.push_back(l);
  std::stable_sort(order.begin(), order.end(), [this](const Label& a, const Label& b) {
    return below(a).size() < below(b).size();
  });
  return order;
}

LabelSet downset(const Precedence& prec, const LabelSet& s) {
  LabelSet r;
  for (const auto& a : s) {
    const auto& b = prec.below(a);
    r.insert(b.begin(), b.end());
  }
  return r;
}

LabelSet downset(const Precedence& prec, const Label& a) { return prec.below(a); }

LabelSet downset(const Precedence& prec, const LabelMultiset& m) {
  return downset(prec, m.elements());
}

LabelSet downset(const Precedence& prec, std::span<const Label> seq) {
  return downset(prec, LabelSet(seq.begin(), seq.end()));
}

LabelMultiset diff_s(const LabelMultiset& m, const LabelSet& s) {
  LabelMultiset r;
  for (const auto& [l, c] : m.counts())
    if (!s.contains(l)) r.add(l, c);
  return r;
}

LabelMultiset cap_s(const LabelMultiset& m, const LabelSet& s) {
  LabelMultiset r;
  for (const auto& [l, c] : m.counts())
    if (s.contains(l)) r.add(l, c);
  return r;
}

bool mul_less(const Precedence& prec, const LabelMultiset& m, const LabelMultiset& n) {
  // With I = m ∩ n maximal, the remainders K and J are disjoint; a
  // decomposition exists iff this one works.
  const LabelMultiset common = intersect(m, n);
  const LabelMultiset k = m - common;
  const LabelMultiset j = n - common;
  if (j.empty()) return false;
  for (const auto& [x, c] : k.counts()) {
    bool dominated = std::any_of(j.counts().begin(), j.counts().end(),
                                 [&](const auto& e) { return prec.less(x, e.first); });
    if (!dominated) return false;
  }
  return true;
}

bool mul_leq(const Precedence& prec, const LabelMultiset& m, const LabelMultiset& n) {
  return m == n || mul_less(prec, m, n);
}

bool mult1_less(const Precedence& prec, const LabelMultiset& m, const LabelMultiset& n) {
  for (const auto& [a, c] : n.counts()) {
    LabelMultiset rest = n - LabelMultiset{a};
    if (!rest.is_sub_multiset_of(m)) continue;
    LabelMultiset k = m - rest;
    bool all_below = std::all_of(k.counts().begin(), k.counts().end(),
                                 [&](const auto& e) { return prec.less(e.first, a); });
    if (all_below) return true;
  }
  return false;
}

namespace {

// All multisets over `pool` with at most `max_size` elements.
void enumerate_bounded(const std::vector<Label>& pool, std::size_t index,
                       LabelMultiset::Count max_size, LabelMultiset& current,
                       std::vector<LabelMultiset>& out) {
  if (index == pool.size()) {
    out.push_back(current);
    return;
  }
  for (LabelMultiset::Count c = 0; c <= max_size; ++c) {
    LabelMultiset next = current;
    next.add(pool[index], c);
    enumerate_bounded(pool, index + 1, max_size - c, next, out);
  }
}

}  // namespace

bool mult_less(const Precedence& prec, const LabelMultiset& m, const LabelMultiset& n,
               std::size_t budget) {
  // A chain from n down to m exists iff one exists through multisets over
  // set(m) ∪ set(n) of size at most |m| + |n|: replace the elements of the
  // dominating remainder one at a time.
  LabelSet universe = m.elements();
  for (const auto& l : n.elements()) universe.insert(l);
  const LabelMultiset::Count bound = m.size() + n.size();

  std::set<LabelMultiset> visited;
  std::deque<LabelMultiset> frontier{n};
  while (!frontier.empty()) {
    LabelMultiset x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& [a, c] : x.counts()) {
      LabelMultiset rest = x - LabelMultiset{a};
      std::vector<Label> pool;
      for (const auto& l : universe)
        if (prec.less(l, a)) pool.push_back(l);
      std::vector<LabelMultiset> replacements;
      LabelMultiset scratch;
      enumerate_bounded(pool, 0, bound - rest.size(), scratch, replacements);
      for (const auto& k : replacements) {
        LabelMultiset pred = rest + k;
        if (pred == m) return true;
        if (!visited.insert(pred).second) continue;
        if (visited.size() > budget)
          throw SearchBudgetExceeded("mult_less search exceeded its budget of " +
                                     std::to_string(budget) + " multisets");
        frontier.push_back(std::move(pred));
      }
    }
  }
  return false;
}

std::string to_string(const LabelSet& s) {
  std::string r = "{";
  bool first = true;
  for (const auto& l : s) {
    r += (first ? "" : ",") + l.name();
    first = false;
  }
  return r + "}";
}

std::string to_string(std::span<const Label> seq) {
  std::string r = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) r += (i ? "," : "") + seq[i].name();
  return r + "]";
}

}  // namespace decdiag
