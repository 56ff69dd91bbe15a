#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "decdiag/multiset_order.hpp"

namespace decdiag {

/// Label view of a diagram: τ along the top, σ down the left side, σ′ down
/// the right side (starting where τ ends) and τ′ along the bottom (starting
/// where σ ends).
struct LabelQuad {
  LabelSeq top;
  LabelSeq left;
  LabelSeq right;
  LabelSeq bottom;

  friend bool operator==(const LabelQuad&, const LabelQuad&) = default;
};

/// Reflects a quadruple across its diagonal: (τ,σ,σ′,τ′) ↦ (σ,τ,τ′,σ′).
LabelQuad mirror(const LabelQuad& q);

/// Split of a joining sequence into a prefix below the peer label(s), an
/// optional single pivot step, and a suffix below both peak labels.
struct LdPrimeDecomposition {
  LabelSeq prefix;
  LabelSeq pivot;
  LabelSeq suffix;

  LabelSeq joined() const;
  friend bool operator==(const LdPrimeDecomposition&, const LdPrimeDecomposition&) = default;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by the decomposition routines when the input is not locally
/// decreasing; carries the multiset that fails to stay below {α}.
class LdViolation : public PreconditionError {
 public:
  LdViolation(const std::string& what, LabelMultiset witness)
      : PreconditionError(what), witness_(std::move(witness)) {}
  const LabelMultiset& witness() const noexcept { return witness_; }

 private:
  LabelMultiset witness_;
};

/// Lexicographic maximum measure |σ|: each label absorbs the strictly
/// smaller labels that follow it.
LabelMultiset lexmax(const Precedence& prec, std::span<const Label> seq);

bool decreasing(const Precedence& prec, const LabelQuad& q);
/// Equivalent formulation comparing each joining side against one peak side.
bool decreasing_alt(const Precedence& prec, const LabelQuad& q);

/// Glues d2 to the right of d1 along their shared edge d1.right == d2.left.
/// Throws PreconditionError when the edges differ or an input is not
/// decreasing.
LabelQuad paste(const Precedence& prec, const LabelQuad& d1, const LabelQuad& d2);
/// Glues d2 below d1 along d1.bottom == d2.top.
LabelQuad paste_vertical(const Precedence& prec, const LabelQuad& d1, const LabelQuad& d2);

/// |σ′| + |υ| ≺mul |σ| + |τυ|, the strict decrease that justifies
/// recursing on the peak (υ, σ′) after closing (τ, σ).
bool hypothesis_decrease_holds(const Precedence& prec, std::span<const Label> top,
                               std::span<const Label> left, std::span<const Label> right,
                               std::span<const Label> extension);

/// Local decreasingness of the peak (β, α) joined by σ′ (from β's end) and
/// τ′ (from α's end).
bool ld_check(const Precedence& prec, const Label& alpha, const Label& beta,
              std::span<const Label> right, std::span<const Label> bottom);

/// Shape check for the join on the β side: prefix ⊆ ↓β, pivot ⊆ {α} with at
/// most one element, suffix ⊆ ↓{α,β}. The α side is the same call with the
/// two labels swapped.
bool ld_prime_check(const Precedence& prec, const Label& alpha, const Label& beta,
                    const LdPrimeDecomposition& dec);
/// Same shape with the single peer label replaced by a sequence of labels.
bool ld_prime_check_seq(const Precedence& prec, const Label& alpha,
                        std::span<const Label> peer, const LdPrimeDecomposition& dec);

/// Splits σ′ into LD′ shape. Requires |σ′| -s ↓β ⪯mul {α}; throws LdViolation
/// otherwise. When α survives in the measure the split is taken at the
/// leftmost occurrence of α not below any earlier label.
LdPrimeDecomposition ld_decompose(const Precedence& prec, const Label& alpha,
                                  const Label& beta, std::span<const Label> seq);
LdPrimeDecomposition ld_decompose_seqlabels(const Precedence& prec, const Label& alpha,
                                            std::span<const Label> peer,
                                            std::span<const Label> seq);

}  // namespace decdiag
