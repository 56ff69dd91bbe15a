#include "decdiag/measures.hpp"

#include <algorithm>

namespace decdiag {

namespace {

LabelSeq concat(std::span<const Label> a, std::span<const Label> b) {
  LabelSeq r(a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

bool all_in(std::span<const Label> seq, const LabelSet& s) {
  return std::all_of(seq.begin(), seq.end(), [&](const Label& l) { return s.contains(l); });
}

}  // namespace

LabelQuad mirror(const LabelQuad& q) { return {q.left, q.top, q.bottom, q.right}; }

LabelSeq LdPrimeDecomposition::joined() const {
  LabelSeq r = prefix;
  r.insert(r.end(), pivot.begin(), pivot.end());
  r.insert(r.end(), suffix.begin(), suffix.end());
  return r;
}

LabelMultiset lexmax(const Precedence& prec, std::span<const Label> seq) {
  // |[]| = {#};  |ασ| = {#α#} + (|σ| -s ↓α), unfolded from the right.
  LabelMultiset acc;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it)
    acc = LabelMultiset{*it} + diff_s(acc, downset(prec, *it));
  return acc;
}

bool decreasing(const Precedence& prec, const LabelQuad& q) {
  const LabelMultiset peak = lexmax(prec, q.top) + lexmax(prec, q.left);
  return mul_leq(prec, lexmax(prec, concat(q.left, q.bottom)), peak) &&
         mul_leq(prec, lexmax(prec, concat(q.top, q.right)), peak);
}

bool decreasing_alt(const Precedence& prec, const LabelQuad& q) {
  return mul_leq(prec, diff_s(lexmax(prec, q.bottom), downset(prec, q.left)),
                 lexmax(prec, q.top)) &&
         mul_leq(prec, diff_s(lexmax(prec, q.right), downset(prec, q.top)),
                 lexmax(prec, q.left));
}

LabelQuad paste(const Precedence& prec, const LabelQuad& d1, const LabelQuad& d2) {
  if (d1.right != d2.left)
    throw PreconditionError("paste: shared edges differ: " + to_string(d1.right) + " vs " +
                            to_string(d2.left));
  if (!decreasing(prec, d1) || !decreasing(prec, d2))
    throw PreconditionError("paste: input quadruple is not decreasing");
  return {concat(d1.top, d2.top), d1.left, d2.right, concat(d1.bottom, d2.bottom)};
}

LabelQuad paste_vertical(const Precedence& prec, const LabelQuad& d1, const LabelQuad& d2) {
  return mirror(paste(prec, mirror(d1), mirror(d2)));
}

bool hypothesis_decrease_holds(const Precedence& prec, std::span<const Label> top,
                               std::span<const Label> left, std::span<const Label> right,
                               std::span<const Label> extension) {
  return mul_less(prec, lexmax(prec, right) + lexmax(prec, extension),
                  lexmax(prec, left) + lexmax(prec, concat(top, extension)));
}

bool ld_check(const Precedence& prec, const Label& alpha, const Label& beta,
              std::span<const Label> right, std::span<const Label> bottom) {
  return mul_leq(prec, diff_s(lexmax(prec, right), downset(prec, beta)), {alpha}) &&
         mul_leq(prec, diff_s(lexmax(prec, bottom), downset(prec, alpha)), {beta});
}

bool ld_prime_check_seq(const Precedence& prec, const Label& alpha,
                        std::span<const Label> peer, const LdPrimeDecomposition& dec) {
  LabelSet both(peer.begin(), peer.end());
  both.insert(alpha);
  return all_in(dec.prefix, downset(prec, peer)) && dec.pivot.size() <= 1 &&
         all_in(dec.pivot, LabelSet{alpha}) && all_in(dec.suffix, downset(prec, both));
}

bool ld_prime_check(const Precedence& prec, const Label& alpha, const Label& beta,
                    const LdPrimeDecomposition& dec) {
  const Label peer[] = {beta};
  return ld_prime_check_seq(prec, alpha, peer, dec);
}

LdPrimeDecomposition ld_decompose_seqlabels(const Precedence& prec, const Label& alpha,
                                            std::span<const Label> peer,
                                            std::span<const Label> seq) {
  const LabelMultiset residue = diff_s(lexmax(prec, seq), downset(prec, peer));
  if (!mul_leq(prec, residue, {alpha}))
    throw LdViolation("not locally decreasing: " + residue.to_string() + " is not below {#" +
                          alpha.name() + "#}",
                      residue);

  LdPrimeDecomposition dec;
  if (residue.contains(alpha)) {
    // Any occurrence of α with nothing above it earlier in the sequence works;
    // take the leftmost.
    LabelSet seen_below;
    std::size_t i = 0;
    for (; i < seq.size(); ++i) {
      if (seq[i] == alpha && !seen_below.contains(alpha)) break;
      const auto& b = prec.below(seq[i]);
      seen_below.insert(b.begin(), b.end());
    }
    if (i == seq.size())
      throw std::logic_error("ld_decompose: no admissible occurrence of " + alpha.name());
    dec.prefix.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(i));
    dec.pivot = {alpha};
    dec.suffix.assign(seq.begin() + static_cast<std::ptrdiff_t>(i) + 1, seq.end());
  } else {
    dec.suffix.assign(seq.begin(), seq.end());
  }

  if (!ld_prime_check_seq(prec, alpha, peer, dec))
    throw std::logic_error("ld_decompose produced an ill-shaped split of " + to_string(seq));
  return dec;
}

LdPrimeDecomposition ld_decompose(const Precedence& prec, const Label& alpha,
                                  const Label& beta, std::span<const Label> seq) {
  const Label peer[] = {beta};
  return ld_decompose_seqlabels(prec, alpha, peer, seq);
}

}  // namespace decdiag
