// Hopf algebras and right comodule algebras given by structure maps on
// generators, extended (anti)multiplicatively and checked against relations.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sigmacalc/coordinates.hpp"
#include "sigmacalc/presentation.hpp"
#include "sigmacalc/report.hpp"
#include "sigmacalc/subspace.hpp"

namespace sigmacalc {

// ---------------------------------------------------------------------------
// Tensor helpers. `legs` lists the algebra of each tensor factor.

using Legs = std::vector<const Presentation*>;

/// Componentwise product (x1⊗y1)(x2⊗y2) = x1x2⊗y1y2, reduced per leg.
Tensor multiply(const Tensor& x, const Tensor& y, const Legs& legs);
Tensor normal_form(const Tensor& x, const Legs& legs);
/// Replaces leg `leg` of every term by f(word), which is spliced in place
/// (f may return a tensor with any number of legs, including none).
Tensor map_leg(const Tensor& x, std::size_t leg, const std::function<Tensor(const Word&)>& f);
/// Multiplies legs i and i+1 together in algebra p.
Tensor merge_legs(const Tensor& x, std::size_t i, const Presentation& p);
/// Moves leg `from` to position `to`.
Tensor permute_leg(const Tensor& x, std::size_t from, std::size_t to);
Tensor as_tensor(const NCElement& x);
NCElement as_element(const Tensor& x);

// ---------------------------------------------------------------------------

class HopfAlgebra {
 public:
  HopfAlgebra(PresentationPtr algebra, std::vector<Tensor> coproduct,
              std::vector<RationalFunction> counit, std::vector<NCElement> antipode,
              std::optional<std::vector<NCElement>> antipode_inverse);

  /// Reads delta/eps/antipode/antipode_inv lines of a parsed block.
  static std::shared_ptr<const HopfAlgebra> from_block(const AlgebraBlock& block);

  const Presentation& algebra() const { return *algebra_; }
  const PresentationPtr& algebra_ptr() const { return algebra_; }

  /// Free multiplicative extension of the generator table; the word need not
  /// be in normal form.
  Tensor coproduct(const Word& w) const;
  Tensor coproduct(const NCElement& x) const;
  RationalFunction counit(const Word& w) const;
  RationalFunction counit(const NCElement& x) const;
  NCElement antipode(const Word& w) const;
  NCElement antipode(const NCElement& x) const;
  /// Uses the explicit inverse table when given, otherwise S itself
  /// (valid when S∘S = id, which verify_bialgebra_axioms checks).
  NCElement antipode_inverse(const NCElement& x) const;
  bool has_antipode_inverse_table() const { return antipode_inverse_.has_value(); }

  /// h⁺ = h − ε(h)1.
  NCElement plus_part(const NCElement& h) const;

  const std::vector<Tensor>& coproduct_table() const { return coproduct_; }

 private:
  NCElement anti_extend(const Word& w, const std::vector<NCElement>& table) const;

  PresentationPtr algebra_;
  std::vector<Tensor> coproduct_;
  std::vector<RationalFunction> counit_;
  std::vector<NCElement> antipode_;
  std::optional<std::vector<NCElement>> antipode_inverse_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Word, Tensor> coproduct_cache_;
};

using HopfPtr = std::shared_ptr<const HopfAlgebra>;

class ComoduleAlgebra {
 public:
  ComoduleAlgebra(PresentationPtr algebra, HopfPtr hopf, std::vector<Tensor> coaction);

  /// Reads the delta lines of block as a coaction A → A⊗H.
  static std::shared_ptr<const ComoduleAlgebra> from_block(const AlgebraBlock& block, HopfPtr hopf);

  const Presentation& algebra() const { return *algebra_; }
  const PresentationPtr& algebra_ptr() const { return algebra_; }
  const HopfAlgebra& hopf() const { return *hopf_; }
  const HopfPtr& hopf_ptr() const { return hopf_; }
  Legs legs_aa() const { return {algebra_.get(), algebra_.get()}; }
  Legs legs_ah() const { return {algebra_.get(), &hopf_->algebra()}; }

  Tensor coaction(const Word& w) const;
  Tensor coaction(const NCElement& x) const;
  /// (δ⊗id)δ, legs A⊗H⊗H.
  Tensor double_coaction(const Word& w) const;
  const std::vector<Tensor>& coaction_table() const { return coaction_; }

 private:
  PresentationPtr algebra_;
  HopfPtr hopf_;
  std::vector<Tensor> coaction_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Word, Tensor> cache_;
};

using ComodulePtr = std::shared_ptr<const ComoduleAlgebra>;

/// a⊗a' ↦ a a'₍₀₎ ⊗ a'₍₁₎ on A⊗A (the canonical map before balancing).
Tensor canonical_map(const ComoduleAlgebra& c, const Tensor& x);
/// a⊗a' ↦ a₍₀₎⊗a'₍₀₎⊗a₍₁₎a'₍₁₎.
Tensor diagonal_coaction(const ComoduleAlgebra& c, const Tensor& x);

/// Truncated monomial basis of a presented algebra as a coordinate system.
WordCoordinates word_coordinates(const Presentation& p, std::size_t degree);
TensorCoordinates tensor_coordinates(const std::vector<std::vector<Word>>& leg_words,
                                     const Legs& legs);

CheckList verify_bialgebra_axioms(const HopfAlgebra& h, std::size_t degree);
CheckList verify_comodule_axioms(const ComoduleAlgebra& c, std::size_t degree);

/// Kernel of a ↦ δ(a) − a⊗1 on the words of length ≤ degree.
SubspaceBasis coinvariants_up_to(const ComoduleAlgebra& c, std::size_t degree);

struct ChargeDecomposition {
  NCElement input;
  std::map<int, NCElement> components;
};

class NotChargeGraded : public std::runtime_error {
 public:
  NotChargeGraded() : std::runtime_error("not charge-graded") {}
};

/// Splits a by generator charge, checking δ(aₙ) = aₙ⊗gₙ with gₙ group-like.
ChargeDecomposition charge_decompose(const NCElement& a, const ComoduleAlgebra& c);

/// Ad_R(h) = h₍₂₎ ⊗ S(h₍₁₎)h₍₃₎ for ε(h) = 0.
Tensor adjoint_coaction(const HopfAlgebra& h, const NCElement& x);

}  // namespace sigmacalc
