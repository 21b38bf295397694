// Built-in principal comodule algebras: the trivial bundle H over k, function
// algebras of free finite actions, and the quantum Hopf fibration
// O_q(SU(2)) over the standard Podleś sphere. Also the splitting map and the
// principality checks.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigmacalc/connection.hpp"
#include "sigmacalc/galois.hpp"

namespace sigmacalc {

/// Right action X × G → X of a finite group given by its Cayley table.
struct FiniteAction {
  std::size_t points = 0;
  /// group[g][h] = gh; the identity is detected from the table.
  std::vector<std::vector<std::size_t>> group;
  /// act[x][g] = x·g.
  std::vector<std::vector<std::size_t>> act;

  std::size_t order() const { return group.size(); }
  std::size_t identity() const;
  std::size_t inverse(std::size_t g) const;
  /// Throws std::invalid_argument on a malformed group or action table.
  void validate() const;
  bool is_free() const;
  std::size_t orbit_count() const;
};

/// Z_k acting on n points (k | n) by rotating consecutive blocks of k.
FiniteAction cyclic_action(std::size_t points, std::size_t order);

/// Parses `points n`, `group <row>` (one per group element, in order) and
/// `act x g -> y` lines; missing act lines for the identity default to x.
FiniteAction parse_action(std::string_view text);

enum class BundleKind { Trivial, Finite, Podles, User };

const char* bundle_kind_name(BundleKind k);

struct Bundle {
  BundleKind kind = BundleKind::Trivial;
  std::string name;
  ComodulePtr comodule;
  ConnectionPtr connection;
  GaloisPtr galois;
  std::optional<FiniteAction> action;

  const ComoduleAlgebra& comodule_algebra() const { return *comodule; }
  const Presentation& algebra() const { return comodule->algebra(); }
  const HopfAlgebra& hopf() const { return comodule->hopf(); }
};

using BundlePtr = std::shared_ptr<const Bundle>;

/// Presentation-format sources of the built-in algebras.
std::string_view circle_source();          // O(U(1))
std::string_view quantum_su2_source();     // O_q(SU(2)) as a Hopf algebra
std::string_view hopf_fibration_source();  // O(U(1)), then O_q(SU(2)) with its coaction

HopfPtr circle_hopf();
HopfPtr quantum_su2_hopf();

/// Translation map τ := π∘ℓ on the connection's table.
TranslationTable translation_from_connection(const StrongConnection& l);

/// A = H coacting on itself by Δ; ℓ = (S⊗id)Δ on H-words of length ≤ horizon.
BundlePtr make_trivial_bundle(HopfPtr h, std::size_t horizon);
/// Functions on X with H = functions on G. Throws std::invalid_argument
/// ("canonical map not injective") when the action is not free.
BundlePtr make_finite_bundle(const FiniteAction& action);
/// Strong connection from the seeds ℓ(t) = α*⊗α + γ*⊗γ and
/// ℓ(t⁻¹) = α⊗α* + q²γ⊗γ* by recursion up to |n| ≤ horizon.
BundlePtr make_podles_bundle(std::size_t horizon);
/// From a parsed document: one block gives the trivial bundle over it, two
/// blocks give (H, A). An O(U(1)) structure algebra needs seed lines for t
/// and its inverse; otherwise ℓ is solved within the window.
BundlePtr make_user_bundle(const Document& doc, std::size_t horizon);

/// s(a) = a₍₀₎ℓ(a₍₁₎) ∈ B⊗A. Throws std::logic_error when a first leg is
/// not coinvariant.
Tensor splitting(const NCElement& a, const Bundle& bundle);

/// can∘can⁻¹ = id on A_{≤D}⊗(H-basis), can⁻¹∘can = id (exact kernel
/// comparison for finite bundles, splitting certificate otherwise) and the
/// splitting axioms on the A-basis of length ≤ D.
CheckList verify_principality(const Bundle& bundle, std::size_t degree);

}  // namespace sigmacalc
