#include <gtest/gtest.h>

#include "decdiag/analysis.hpp"
#include "decdiag/completion.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace decdiag {
namespace {

using namespace fixtures;

LocalCompletionMap newman_lcm() {
  const LdReport r = check_locally_decreasing(newman_ars(), newman_prec());
  return completion_map(newman_ars(), newman_prec(), r);
}

const Peak newman_big{path(s, {{ls, t}, {lt, v}}), path(s, {{ls, u}, {lu, v}})};

bool strictly_descending(const Precedence& prec, const CompletionTrace& trace) {
  for (const auto& e : trace.events)
    if (!mul_less(prec, e.after, e.before)) return false;
  return true;
}

TEST(CompletePeak, EmptyPeak) {
  const Completion c = complete_peak(newman_ars(), newman_prec(), newman_lcm(),
                                     Peak{empty_seq(s), empty_seq(s)});
  EXPECT_EQ(c.diagram, (Diagram{empty_seq(s), empty_seq(s), empty_seq(s), empty_seq(s)}));
  EXPECT_TRUE(c.trace.events.empty());
}

TEST(CompletePeak, OneSidedPeakClosesTrivially) {
  const Peak p{path(s, {{ls, t}, {lt, v}}), empty_seq(s)};
  const Completion c = complete_peak(newman_ars(), newman_prec(), newman_lcm(), p);
  EXPECT_EQ(c.diagram.right, empty_seq(v));
  EXPECT_EQ(c.diagram.bottom, p.left);
}

TEST(CompletePeak, LocalPeakIsTheMapEntry) {
  const auto lcm = newman_lcm();
  const Peak p{path(s, {{ls, t}}), path(s, {{ls, u}})};
  const Completion c = complete_peak(newman_ars(), newman_prec(), lcm, p);
  EXPECT_EQ(c.diagram.right, lcm.find(p)->right);
  EXPECT_EQ(c.diagram.bottom, lcm.find(p)->bottom);
  EXPECT_EQ(c.diagram.right, path(t, {{lt, v}}));
  EXPECT_TRUE(c.trace.events.empty());
}

TEST(CompletePeak, NewmanTwoStepPeak) {
  const Completion c = complete_peak(newman_ars(), newman_prec(), newman_lcm(), newman_big);
  EXPECT_EQ(c.diagram.top, newman_big.left);
  EXPECT_EQ(c.diagram.left, newman_big.right);
  EXPECT_EQ(c.diagram.right, empty_seq(v));
  EXPECT_EQ(c.diagram.bottom, empty_seq(v));
  EXPECT_TRUE(dd_check(newman_ars(), newman_prec(), c.diagram));

  ASSERT_EQ(c.trace.events.size(), 2u);
  EXPECT_EQ(c.trace.events[0].before, (LabelMultiset{ls, ls}));
  EXPECT_EQ(c.trace.events[0].after, (LabelMultiset{lt, lt}));
  EXPECT_EQ(c.trace.events[0].rule, "left");
  EXPECT_EQ(c.trace.events[1].after, (LabelMultiset{lu, lu}));
  EXPECT_EQ(c.trace.events[1].rule, "bottom");
  EXPECT_TRUE(strictly_descending(newman_prec(), c.trace));
  EXPECT_TRUE(oracle::Closure(unlabel(newman_ars())).joinable(t, u));
}

TEST(CompletePeak, MirrorKeepsOrientation) {
  const auto lcm = newman_lcm();
  for (const Peak& p : {newman_big, Peak{path(s, {{ls, t}}), path(s, {{ls, u}})},
                        Peak{empty_seq(s), empty_seq(s)}}) {
    const Completion direct = complete_peak(newman_ars(), newman_prec(), lcm, p);
    const Completion mirrored = mirror_peak_complete(newman_ars(), newman_prec(), lcm, p);
    EXPECT_EQ(mirrored.diagram.top, p.left);
    EXPECT_EQ(mirrored.diagram.left, p.right);
    EXPECT_TRUE(dd_check(newman_ars(), newman_prec(), mirrored.diagram));
    const Completion swapped =
        complete_peak(newman_ars(), newman_prec(), lcm, Peak{p.right, p.left});
    EXPECT_EQ(mirrored.diagram, mirror(swapped.diagram));
    EXPECT_EQ(lst(direct.diagram.right), lst(mirrored.diagram.right));
  }
}

TEST(CompletePeak, Errors) {
  const auto lcm = newman_lcm();
  try {
    complete_peak(newman_ars(), newman_prec(), lcm, Peak{path(s, {{ls, t}}), empty_seq(t)});
    FAIL() << "accepted a non-peak";
  } catch (const CompletionError& e) {
    EXPECT_EQ(e.kind(), CompletionError::Kind::invalid_peak);
  }
  try {
    complete_peak(newman_ars(), newman_prec(), lcm, newman_big, {.fuel = 1});
    FAIL() << "fuel not enforced";
  } catch (const CompletionError& e) {
    EXPECT_EQ(e.kind(), CompletionError::Kind::fuel_exhausted);
  }
  EXPECT_EQ(default_fuel(newman_ars()), 4u * 4u * 16u);
}

TEST(LocalCompletionMap, ValidatesEntries) {
  const auto lcm = newman_lcm();
  auto entries = lcm.entries();
  const Peak p{path(s, {{ls, t}}), path(s, {{ls, u}})};

  auto missing = entries;
  missing.erase(p);
  EXPECT_THROW(LocalCompletionMap(newman_ars(), newman_prec(), missing), InvalidLocalMap);

  auto bad = entries;
  bad[p] = LocalJoin{path(t, {{lt, v}}), path(u, {{lu, v}})};
  EXPECT_NO_THROW(LocalCompletionMap(newman_ars(), newman_prec(), bad));
  EXPECT_THROW(LocalCompletionMap(newman_ars(), Precedence{}, bad), InvalidLocalMap);

  auto extra = entries;
  extra[newman_big] = LocalJoin{empty_seq(v), empty_seq(v)};
  try {
    LocalCompletionMap(newman_ars(), newman_prec(), extra);
    FAIL() << "non-local key accepted";
  } catch (const InvalidLocalMap& e) {
    EXPECT_EQ(e.peak(), newman_big);
  }
}

// r -lr-> s on top of the Newman diamond: the conversion t <-ls- s -ls-> u
// lies below lr and has a genuine backward step.
LabeledArs tower_ars() {
  return LabeledArs({{Obj{"r"}, Label{"lr"}, s}, {s, ls, t}, {s, ls, u}, {t, lt, v}, {u, lu, v}});
}
Precedence tower_prec() {
  return Precedence::from_pairs({{lt, ls}, {lu, ls}, {ls, Label{"lr"}}});
}

PeakCompleter completer_for(const LabeledArs& ars, const Precedence& prec,
                            const LocalCompletionMap& lcm) {
  return [&ars, &prec, &lcm](const Peak& p) { return complete_peak(ars, prec, lcm, p).diagram; };
}

TEST(Key1Close, BaseCases) {
  const auto lcm = newman_lcm();
  const auto close = completer_for(newman_ars(), newman_prec(), lcm);
  const Valley e = key1_close(newman_ars(), newman_prec(), close, {ls}, Conversion{t, {}});
  EXPECT_EQ(e.from_start, empty_seq(t));
  EXPECT_EQ(e.from_end, empty_seq(t));

  const Conversion fwd{t, {{true, lt, v}}};
  const Valley f = key1_close(newman_ars(), newman_prec(), close, {ls}, fwd);
  EXPECT_EQ(f.from_start, path(t, {{lt, v}}));
  EXPECT_EQ(f.from_end, empty_seq(v));
}

TEST(Key1Close, BackwardStepUsesCompleter) {
  const LabeledArs ars = tower_ars();
  const Precedence prec = tower_prec();
  const auto lcm = completion_map(ars, prec, check_locally_decreasing(ars, prec));
  int calls = 0;
  PeakCompleter close = [&](const Peak& p) {
    ++calls;
    return complete_peak(ars, prec, lcm, p).diagram;
  };
  const Conversion c{t, {{false, ls, s}, {true, ls, u}}};
  const LabelMultiset bound{Label{"lr"}};
  const Valley r = key1_close(ars, prec, close, bound, c);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(r.from_start.start, t);
  EXPECT_EQ(r.from_end.start, u);
  EXPECT_EQ(lst(r.from_start), lst(r.from_end));
  EXPECT_TRUE(is_seq(ars, r.from_start) && is_seq(ars, r.from_end));
  const LabelSet allowed = downset(prec, bound);
  for (const auto& l : labels(r.from_start)) EXPECT_TRUE(allowed.contains(l));
  for (const auto& l : labels(r.from_end)) EXPECT_TRUE(allowed.contains(l));
  EXPECT_TRUE(oracle::Closure(unlabel(ars)).joinable(t, u));
}

TEST(Key1Close, RejectsConversionOutsideBound) {
  const LabeledArs ars = tower_ars();
  const Precedence prec = tower_prec();
  const auto lcm = completion_map(ars, prec, check_locally_decreasing(ars, prec));
  const auto close = completer_for(ars, prec, lcm);
  const Conversion c{t, {{false, ls, s}, {true, ls, u}}};
  try {
    key1_close(ars, prec, close, {ls, ls}, c);
    FAIL() << "accepted";
  } catch (const CompletionError& e) {
    EXPECT_EQ(e.kind(), CompletionError::Kind::downset_violation);
  }
}

TEST(Key2Close, Cases) {
  const auto lcm = newman_lcm();
  const auto close = completer_for(newman_ars(), newman_prec(), lcm);

  const Key2Closing none = key2_close(newman_ars(), newman_prec(), close, ls, ls, empty_seq(t), empty_seq(t));
  EXPECT_TRUE(none.prefix.empty() && none.pivot.empty() && none.suffix.empty() && none.other.empty());

  const RewriteSeq tv = path(t, {{lt, v}});
  const Key2Closing one = key2_close(newman_ars(), newman_prec(), close, ls, ls, tv, empty_seq(t));
  EXPECT_TRUE(one.prefix.empty() && one.pivot.empty() && one.suffix.empty());
  EXPECT_EQ(one.other, tv);

  const Key2Closing same = key2_close(newman_ars(), newman_prec(), close, lt, ls, tv, tv);
  EXPECT_EQ(same.prefix, empty_seq(v));
  EXPECT_TRUE(same.pivot.empty() && same.suffix.empty() && same.other.empty());

  // s must be a single α step.
  EXPECT_THROW(key2_close(newman_ars(), newman_prec(), close, lu, ls, empty_seq(t), tv),
               CompletionError);
}

// a -b-> b, a -a-> c with a detour b <-g- d -g-> c and a common reduct e.
struct Detour {
  Obj a{"a"}, b{"b"}, c{"c"}, d{"d"}, e{"e"};
  Label la{"la"}, lb{"lb"}, lg{"lg"}, le{"le"};
  LabeledArs ars{{{a, lb, b}, {a, la, c}, {d, lg, b}, {d, lg, c}, {b, le, e}, {c, le, e}}};
  Precedence prec = Precedence::from_pairs({{le, lg}, {lg, lb}, {lg, la}});
};

TEST(ConversionCorner, ClosesBackwardDetour) {
  const Detour D;
  const LdReport report = check_locally_decreasing(D.ars, D.prec, Mode::conversion);
  ASSERT_TRUE(report.all_decreasing());
  auto entries = conv_map(D.ars, D.prec, report).entries();

  const Peak corner{single_step({D.a, D.lb, D.b}), single_step({D.a, D.la, D.c})};
  const LocalConvJoin detour{
      {Conversion{D.b, {{false, D.lg, D.d}, {true, D.lg, D.c}}}, empty_seq(D.c), Conversion{D.c, {}}},
      {Conversion{D.c, {}}, empty_seq(D.c), Conversion{D.c, {}}}};
  ASSERT_EQ(conv_join_defect(D.ars, D.prec, corner, detour), "");
  entries[corner] = detour;
  const LocalConvMap lconv(D.ars, D.prec, entries);

  const Completion c = complete_peak_conv(D.ars, D.prec, lconv, corner);
  EXPECT_TRUE(dd_check(D.ars, D.prec, c.diagram));
  EXPECT_EQ(lst(c.diagram.right), D.e);
  EXPECT_TRUE(strictly_descending(D.prec, c.trace));
  bool corner_event = false;
  for (const auto& ev : c.trace.events) corner_event |= ev.rule == "corner";
  EXPECT_TRUE(corner_event);
}

TEST(ConversionCorner, DefectsAreNamed) {
  const Detour D;
  const Peak corner{single_step({D.a, D.lb, D.b}), single_step({D.a, D.la, D.c})};
  const LocalConvJoin apart{{Conversion{D.b, {}}, empty_seq(D.b), Conversion{D.b, {}}},
                            {Conversion{D.c, {}}, empty_seq(D.c), Conversion{D.c, {}}}};
  EXPECT_EQ(conv_join_defect(D.ars, D.prec, corner, apart), "the two sides do not meet");
  const LocalConvJoin too_high{
      {Conversion{D.b, {{true, D.le, D.e}}}, empty_seq(D.e), Conversion{D.e, {}}},
      {Conversion{D.c, {{true, D.le, D.e}}}, empty_seq(D.e), Conversion{D.e, {}}}};
  EXPECT_EQ(conv_join_defect(D.ars, D.prec, corner, too_high), "");
  EXPECT_NE(conv_join_defect(D.ars, Precedence::from_pairs({{D.le, D.lg}}), corner, too_high), "");
}

TEST(CompletePeakConv, EmbeddedValleysReproduceValleyResults) {
  const auto lcm = newman_lcm();
  const LocalConvMap lconv = embed_valleys(newman_ars(), newman_prec(), lcm);
  for (const Peak& p : {newman_big, Peak{path(s, {{ls, t}}), path(s, {{ls, u}})}}) {
    const Completion valley = complete_peak(newman_ars(), newman_prec(), lcm, p);
    const Completion conv = complete_peak_conv(newman_ars(), newman_prec(), lconv, p);
    EXPECT_EQ(valley.diagram, conv.diagram);
  }
}

TEST(CompletePeakConv, ForkHasNoConversionMap) {
  const LabeledArs fork = fork_ars();
  const Peak p{single_step({a, x, b}), single_step({a, y, c})};
  for (const auto& prec : strict_partial_orders(fork.labels())) {
    const LdReport r = check_locally_decreasing(fork, prec, Mode::conversion);
    EXPECT_FALSE(r.all_decreasing());
    EXPECT_THROW(conv_map(fork, prec, r), std::invalid_argument);
    std::map<Peak, LocalConvJoin> entries;
    for (const auto& res : r.peaks)
      if (res.conv_join) entries.emplace(res.peak, *res.conv_join);
    entries[p] = LocalConvJoin{{Conversion{b, {}}, empty_seq(b), Conversion{b, {}}},
                               {Conversion{c, {}}, empty_seq(c), Conversion{c, {}}}};
    EXPECT_THROW(LocalConvMap(fork, prec, entries), InvalidLocalMap);
  }
}

TEST(CompletePeakProperty, RandomSystemsProduceDecreasingDiagrams) {
  gen::Rng rng(31);
  int completed = 0;
  for (int i = 0; i < 60; ++i) {
    const LabeledArs ars = gen::joinable_ars(rng, 6, 9, 3);
    const auto prec = find_precedence(ars);
    if (!prec) continue;
    const auto lcm = completion_map(ars, *prec, check_locally_decreasing(ars, *prec));
    for (const auto& st : ars.steps())
      for (const auto& nx : ars.outgoing(st.target)) {
        const RewriteSeq two = seq_concat(single_step(st), single_step(nx));
        for (const auto& other : ars.outgoing(st.source)) {
          const Peak p{two, single_step(other)};
          const Completion c = complete_peak(ars, *prec, lcm, p);
          ASSERT_TRUE(dd_check(ars, *prec, c.diagram));
          ASSERT_TRUE(strictly_descending(*prec, c.trace));
          ++completed;
        }
      }
  }
  EXPECT_GT(completed, 50);
}

}  // namespace
}  // namespace decdiag
