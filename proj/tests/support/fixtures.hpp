#pragma once

// Small named systems shared by the unit tests.

#include <initializer_list>
#include <utility>

#include "decdiag/lars.hpp"

namespace decdiag::fixtures {

inline const Obj s{"s"}, t{"t"}, u{"u"}, v{"v"};
inline const Label ls{"ls"}, lt{"lt"}, lu{"lu"};

inline RewriteSeq path(const Obj& from, std::initializer_list<std::pair<Label, Obj>> steps) {
  RewriteSeq r = empty_seq(from);
  for (const auto& [l, o] : steps) r.tail.push_back({l, o});
  return r;
}

/// s → t, s → u with label ls; t → v with lt; u → v with lu.
inline LabeledArs newman_ars() {
  return LabeledArs({{s, ls, t}, {s, ls, u}, {t, lt, v}, {u, lu, v}});
}

inline Precedence newman_prec() { return Precedence::from_pairs({{lt, ls}, {lu, ls}}); }

inline UnlabeledArs newman_unlabeled() { return {{s, t}, {s, u}, {t, v}, {u, v}}; }

inline const Obj a{"a"}, b{"b"}, c{"c"};
inline const Label x{"x"}, y{"y"};

/// a → b, a → c: two distinct normal forms.
inline LabeledArs fork_ars() { return LabeledArs({{a, x, b}, {a, y, c}}); }

}  // namespace decdiag::fixtures
