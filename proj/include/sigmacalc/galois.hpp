// The balanced tensor square A⊗_B A of a Hopf-Galois extension, the
// canonical and translation maps, and the braiding σ.
//
// A class in A⊗_B A is identified with its canonical image in A⊗H. Raw
// representatives in A⊗A are kept alongside so the direct formulas can be
// cross-checked against the canonical coordinates.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "sigmacalc/hopf.hpp"

namespace sigmacalc {

struct BalancedElement {
  std::optional<Tensor> representative;  // in A⊗A
  Tensor canonical_image;                 // in A⊗H

  friend bool operator==(const BalancedElement& x, const BalancedElement& y) {
    return x.canonical_image == y.canonical_image;
  }
};

class TranslationExhausted : public std::out_of_range {
 public:
  TranslationExhausted()
      : std::out_of_range("translation table exhausted - raise degree window") {}
};

/// τ(h) = can⁻¹(1⊗h) for the H-basis words h it covers, stored as A⊗A
/// representatives.
class TranslationTable {
 public:
  TranslationTable() = default;
  explicit TranslationTable(std::map<Word, Tensor> representatives)
      : reps_(std::move(representatives)) {}

  bool covers(const Word& h) const { return reps_.count(h) != 0; }
  const Tensor& representative(const Word& h) const;
  const std::map<Word, Tensor>& entries() const { return reps_; }

 private:
  std::map<Word, Tensor> reps_;
};

/// A comodule algebra together with a translation table, i.e. a Hopf-Galois
/// extension known inside a window.
class GaloisExtension {
 public:
  GaloisExtension(ComodulePtr comodule, TranslationTable translation)
      : comodule_(std::move(comodule)), translation_(std::move(translation)) {}

  const ComoduleAlgebra& comodule() const { return *comodule_; }
  const ComodulePtr& comodule_ptr() const { return comodule_; }
  const Presentation& algebra() const { return comodule_->algebra(); }
  const HopfAlgebra& hopf() const { return comodule_->hopf(); }
  const TranslationTable& translation() const { return translation_; }

  /// a⊗a' ↦ a a'₍₀₎ ⊗ a'₍₁₎.
  Tensor canonical_map(const Tensor& x) const;
  /// a⊗a'⊗a'' ↦ a a'₍₀₎a''₍₀₎ ⊗ a'₍₁₎a''₍₁₎ ⊗ a''₍₂₎, the coordinates used for
  /// A⊗_B A⊗_B A.
  Tensor canonical_map3(const Tensor& x) const;
  /// a⊗h ↦ a·τ(h).
  BalancedElement canonical_inverse(const Tensor& y) const;
  BalancedElement balanced(const Tensor& representative) const;

  /// σ(a⊗a') = a₍₀₎a'τ(a₍₁₎) on representatives.
  Tensor braiding_representative(const Tensor& x) const;
  /// σ⁻¹(a⊗a') = τ(S⁻¹(a'₍₁₎))a a'₍₀₎ on representatives.
  Tensor braiding_inverse_representative(const Tensor& x) const;
  BalancedElement braiding(const BalancedElement& x) const;
  BalancedElement braiding_inverse(const BalancedElement& x) const;

  /// σ and σ⁻¹ in canonical coordinates: a⊗h ↦ a₍₀₎ ⊗ a₍₁₎S(h) and
  /// a⊗h ↦ a₍₀₎ ⊗ S⁻¹(h)a₍₁₎.
  Tensor braiding_canonical(const Tensor& y) const;
  Tensor braiding_inverse_canonical(const Tensor& y) const;

  /// Applies σ (or σ⁻¹) to legs i, i+1 of a representative with more legs.
  Tensor braiding_on_legs(const Tensor& x, std::size_t i, bool inverse = false) const;

 private:
  const Tensor& pair_braiding(const Word& a, const Word& b, bool inverse) const;

  ComodulePtr comodule_;
  TranslationTable translation_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<Word, Word>, Tensor> sigma_cache_;
  mutable std::map<std::pair<Word, Word>, Tensor> sigma_inverse_cache_;
};

using GaloisPtr = std::shared_ptr<const GaloisExtension>;

/// can(τ(h)) = 1⊗h on every stored h.
CheckEntry verify_translation_table(const GaloisExtension& g);

/// b-slide invariance, can∘σ, σσ⁻¹ = σ⁻¹σ = id, canonical closed forms,
/// m∘σ = m, the braid relation and both product compatibilities on the
/// length-≤degree basis. Three-leg identities are compared in canonical_map3
/// coordinates.
CheckList verify_braiding_properties(const GaloisExtension& g, std::size_t degree);

}  // namespace sigmacalc
