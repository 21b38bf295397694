// Vertical ideals and subspaces, σ-closures, the σ-generated quotient
// calculus Ω¹(A) = Ω¹_u(A)/N_A and its descended maps.
//
// Windows. With degree D and slack s:
//   interior      A_{≤D}, with (ker m)_{≤D} ⊂ A_{≤D}⊗A_{≤D};
//   H window      H_{≤D}, holding the truncated ideal I_D;
//   working       H_{≤D+s}, holding I_work = I ∩ H_{≤D+s};
//   canonical     A_{≤2D}⊗H_{≤D+s}, where classes of A⊗_B A live.
// Anything that leaves its window is reported TRUNCATED, never projected.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigmacalc/bundles.hpp"

namespace sigmacalc {

/// A right ideal I ⊂ H⁺ given by generators, or one of the two extremes.
class VerticalIdeal {
 public:
  enum class Kind { Generated, Zero, Augmentation };

  /// "ALL" is H⁺, "0" the zero ideal, otherwise a ';'-separated list of
  /// H-expressions. Throws ParseError, or std::invalid_argument when a
  /// generator has nonzero counit.
  static VerticalIdeal parse(std::string_view text, const HopfAlgebra& h);
  static VerticalIdeal generated(std::vector<NCElement> generators, const HopfAlgebra& h);
  static VerticalIdeal zero();
  static VerticalIdeal augmentation();

  Kind kind() const { return kind_; }
  const std::vector<NCElement>& generators() const { return generators_; }
  std::string describe(const HopfAlgebra& h) const;

  /// span{g·w : w ∈ H_{≤product_degree}} ∩ H_{≤window}, in the coordinates
  /// of `window`.
  SubspaceBasis truncation(const HopfAlgebra& h, const WordCoordinates& window,
                           std::size_t product_degree) const;

 private:
  Kind kind_ = Kind::Zero;
  std::vector<NCElement> generators_;
};

/// Every ideal of Fun(G)⁺ for a finite bundle: the functions vanishing on a
/// subset containing e, each generated by one idempotent. The zero ideal
/// comes first and H⁺ last.
std::vector<VerticalIdeal> finite_ideals(const Bundle& bundle);

struct SigmaClosure {
  enum class State { Stabilized, Truncated };
  State state = State::Stabilized;
  /// Number of σ-applications that enlarged the span; the result is
  /// Σ_{k≤steps} σᵏ(seed).
  std::size_t steps = 0;
  std::vector<std::size_t> dimensions;
  SubspaceBasis result;
  /// First escaping element when truncated.
  std::string escape;
};

/// W ← W + σ(W) in canonical coordinates until the dimension stops growing
/// or σ leaves the window.
SigmaClosure sigma_closure(const GaloisExtension& g, const SubspaceBasis& seed,
                           const TensorCoordinates& window);

/// Longest leg of ℓ(w) over the H-basis words w of length ≤ degree; the
/// default slack. Falls back to degree when the table does not reach.
std::size_t default_slack(const Bundle& bundle, std::size_t degree);

/// Dimensions of the built pipeline, for reports and tests.
struct CalculusDimensions {
  std::size_t interior = 0;        // |A_{≤D}|
  std::size_t kernel = 0;          // dim (ker m)_{≤D}
  std::size_t ideal = 0;           // dim I_D
  std::size_t vertical = 0;        // dim of A_{≤D}⊗I_D
  std::size_t balanced_seed = 0;   // dim π(ω(I_D))
  std::size_t balanced = 0;        // dim N_bal
  std::size_t lift = 0;            // dim N_A
  std::size_t forms = 0;           // dim Ω¹ in the window
  std::size_t quotient_ideal = 0;  // dim H⁺_D / I_D
  std::size_t ver_rank = 0;        // rank of the descended vertical map
  std::size_t interior_degree = 0; // D′
  std::size_t closure_steps = 0;
  bool closure_stabilized = false;
};

/// The σ-generated calculus of a bundle for one ideal inside a window.
/// Construction runs the whole pipeline; the check methods only read it.
class SigmaCalculus {
 public:
  SigmaCalculus(BundlePtr bundle, VerticalIdeal ideal, std::size_t degree, std::size_t slack);
  ~SigmaCalculus();
  SigmaCalculus(const SigmaCalculus&) = delete;
  SigmaCalculus& operator=(const SigmaCalculus&) = delete;

  const Bundle& bundle() const;
  const VerticalIdeal& ideal() const;
  std::size_t degree() const;
  std::size_t slack() const;

  const TensorCoordinates& canonical_window() const;
  const TensorCoordinates& pair_window() const;
  const WordCoordinates& h_window() const;
  const SubspaceBasis& ideal_truncation() const;
  const SubspaceBasis& ideal_working() const;
  /// (ker m)_{≤D} in pair coordinates.
  const SubspaceBasis& kernel() const;
  /// A_{≤D}⊗I_D in canonical coordinates.
  const SubspaceBasis& vertical() const;
  const SubspaceBasis& balanced_seed() const;
  const SigmaClosure& closure() const;
  const SubspaceBasis& balanced() const;
  /// The maximal lift π⁻¹(N_bal) ∩ (ker m)_{≤D}, in pair coordinates.
  const SubspaceBasis& lift() const;
  /// Coset representatives of Ω¹ = (ker m)_{≤D}/N_A.
  const SubspaceBasis& forms() const;
  /// Coset representatives w⁺ of H⁺_D/I_D, lowest degree first.
  const std::vector<NCElement>& quotient_ideal() const;
  CalculusDimensions dimensions() const;

  /// Canonical image of a pair-coordinate vector.
  SparseVector canonical_image(const SparseVector& pair_vector) const;
  /// y ∈ A⊗I, decided leg by leg against I_work; nullopt if an H-leg leaves
  /// the working window.
  std::optional<bool> in_vertical(const Tensor& y) const;

  /// ideal-closure, the three ver/can identities on a (ker m)_{≤D} basis, the
  /// subspace equality, τ-coverage of the vertical basis, σ-stability of V,
  /// ω(I) ⊂ V and the σ-closure status.
  CheckList lemma_checks() const;
  /// Well-definedness certificates, the descended ver, ω̄ and σ̄, and the
  /// report-only bimodule and exactness entries.
  CheckList descent_checks() const;
  /// π(ω(h⁺)) = τ(h⁺), ⟨τ(I)⟩_σ = N_bal and N_bal ⊂ ⟨vertical seed⟩_σ.
  CheckList obstruction_checks() const;

  /// [r] ↦ ω(r) for the coset representatives r of H⁺/I, rendered.
  std::vector<std::pair<std::string, std::string>> omega_table() const;

 private:
  struct State;
  std::unique_ptr<State> s_;
};

}  // namespace sigmacalc
