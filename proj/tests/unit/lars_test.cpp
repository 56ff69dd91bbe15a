#include <gtest/gtest.h>

#include "decdiag/lars.hpp"
#include "fixtures.hpp"

namespace decdiag {
namespace {

using namespace fixtures;

TEST(LabeledArs, IndexesSteps) {
  const LabeledArs ars = newman_ars();
  EXPECT_EQ(ars.steps().size(), 4u);
  EXPECT_EQ(ars.outgoing(s).size(), 2u);
  EXPECT_EQ(ars.incoming(v).size(), 2u);
  EXPECT_TRUE(ars.outgoing(Obj{"nowhere"}).empty());
  EXPECT_EQ(ars.objects(), (std::set<Obj>{s, t, u, v}));
  EXPECT_EQ(ars.labels(), (LabelSet{ls, lt, lu}));
  EXPECT_EQ(LabeledArs({{s, ls, t}, {s, ls, t}}).steps().size(), 1u);
}

TEST(RewriteSeq, Basics) {
  const RewriteSeq e = empty_seq(s);
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(lst(e), s);
  const RewriteSeq p = path(s, {{ls, t}, {lt, v}});
  EXPECT_EQ(lst(p), v);
  EXPECT_EQ(labels(p), (LabelSeq{ls, lt}));
  EXPECT_TRUE(is_seq(newman_ars(), p));
  EXPECT_FALSE(is_seq(newman_ars(), path(s, {{lt, t}})));
  EXPECT_EQ(p.step(1), (Step{t, lt, v}));
  EXPECT_EQ(to_string(p), "s -ls-> t -lt-> v");
}

TEST(RewriteSeq, ConcatAndSplit) {
  const RewriteSeq p = path(s, {{ls, t}, {lt, v}});
  EXPECT_EQ(seq_concat(path(s, {{ls, t}}), path(t, {{lt, v}})), p);
  EXPECT_EQ(seq_concat(empty_seq(s), p), p);
  EXPECT_EQ(seq_concat(p, empty_seq(v)), p);
  EXPECT_THROW(seq_concat(p, empty_seq(s)), EndpointMismatch);

  auto [l, r] = seq_split(p, 1);
  EXPECT_EQ(l, path(s, {{ls, t}}));
  EXPECT_EQ(r, path(t, {{lt, v}}));
  EXPECT_EQ(seq_split(p, 0).first, empty_seq(s));
  EXPECT_THROW(seq_split(p, 3), std::out_of_range);

  const LabelSeq first{ls}, second{lt};
  EXPECT_EQ(seq_split_by_labels(p, first, second).second, r);
  EXPECT_THROW(seq_split_by_labels(p, second, first), std::invalid_argument);
}

TEST(Conversion, MirrorAndEmbedding) {
  const Conversion c{t, {{false, ls, s}, {true, ls, u}}};
  EXPECT_TRUE(is_conv(newman_ars(), c));
  EXPECT_EQ(lst(c), u);
  EXPECT_EQ(conv_labels(c), (LabelSeq{ls, ls}));
  const Conversion m = conv_mirror(c);
  EXPECT_EQ(m, (Conversion{u, {{false, ls, s}, {true, ls, t}}}));
  EXPECT_EQ(conv_mirror(m), c);
  EXPECT_TRUE(is_conv(newman_ars(), m));
  EXPECT_EQ(to_string(c), "t <-ls- s -ls-> u");

  const RewriteSeq p = path(s, {{ls, t}, {lt, v}});
  EXPECT_TRUE(is_conv(newman_ars(), seq_to_conv(p)));
  auto [head, rest] = conv_split(c, 1);
  EXPECT_EQ(head, (Conversion{t, {{false, ls, s}}}));
  EXPECT_EQ(conv_concat(head, rest), c);
  EXPECT_THROW(conv_concat(c, seq_to_conv(p)), EndpointMismatch);
}

TEST(Diagram, NewmanLocalDiagram) {
  const Diagram d{path(s, {{ls, t}}), path(s, {{ls, u}}), path(t, {{lt, v}}), path(u, {{lu, v}})};
  EXPECT_TRUE(is_diagram(newman_ars(), d));
  EXPECT_TRUE(dd_check(newman_ars(), newman_prec(), d));
  EXPECT_FALSE(dd_check(newman_ars(), Precedence{}, d));
  EXPECT_EQ(labels(d), (LabelQuad{{ls}, {ls}, {lt}, {lu}}));
  EXPECT_TRUE(is_diagram(newman_ars(), mirror(d)));
  EXPECT_EQ(mirror(mirror(d)), d);
  Diagram broken = d;
  broken.bottom = empty_seq(u);
  EXPECT_FALSE(is_diagram(newman_ars(), broken));
}

TEST(Peaks, LocalPeaksAndMeasure) {
  const auto peaks = local_peaks(newman_ars());
  // s has two successors (4 ordered pairs), t and u one each.
  EXPECT_EQ(peaks.size(), 6u);
  EXPECT_TRUE(std::is_sorted(peaks.begin(), peaks.end()));
  for (const auto& p : peaks) EXPECT_TRUE(p.is_local());

  const Peak big{path(s, {{ls, t}, {lt, v}}), path(s, {{ls, u}, {lu, v}})};
  EXPECT_TRUE(is_peak(newman_ars(), big));
  EXPECT_FALSE(is_peak(newman_ars(), Peak{path(s, {{ls, t}}), path(t, {{lt, v}})}));
  EXPECT_EQ(peak_measure(newman_prec(), big), (LabelMultiset{ls, ls}));
  EXPECT_TRUE(peak_less(newman_prec(), Peak{path(t, {{lt, v}}), empty_seq(t)}, big));
}

TEST(Peaks, Unlabel) {
  const UnlabeledArs u_ars = unlabel(newman_ars());
  EXPECT_EQ(u_ars.size(), 4u);
  EXPECT_TRUE(u_ars.contains({s, t}));
}

}  // namespace
}  // namespace decdiag
