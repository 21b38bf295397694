// Strong connections, connection 1-forms, the universal calculus and the
// vertical map.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "sigmacalc/hopf.hpp"

namespace sigmacalc {

class ConnectionExhausted : public std::out_of_range {
 public:
  ConnectionExhausted()
      : std::out_of_range("connection table exhausted - raise degree window") {}
};

class InvalidConnectionSeed : public std::invalid_argument {
 public:
  explicit InvalidConnectionSeed(const std::string& detail)
      : std::invalid_argument("invalid connection seed: " + detail) {}
};

/// ℓ: H → A⊗A on the H-basis words of a window, with where each value came
/// from ("unit", "seed", "recursion", "antipode-coproduct", "solved").
class StrongConnection {
 public:
  struct Entry {
    Tensor value;
    std::string provenance;
  };

  StrongConnection(ComodulePtr comodule, std::map<Word, Entry> table, std::size_t horizon)
      : comodule_(std::move(comodule)), table_(std::move(table)), horizon_(horizon) {}

  const ComoduleAlgebra& comodule() const { return *comodule_; }
  const ComodulePtr& comodule_ptr() const { return comodule_; }
  /// H-degree up to which the table is complete.
  std::size_t horizon() const { return horizon_; }
  const std::map<Word, Entry>& entries() const { return table_; }
  bool covers(const Word& h) const { return table_.count(h) != 0; }

  const Tensor& value(const Word& h) const;
  Tensor value(const NCElement& h) const;
  /// ω(h) = ℓ(h⁺) = ℓ(h) − ε(h)1⊗1.
  Tensor omega(const NCElement& h) const;
  /// Longest word appearing in any leg of a stored value.
  std::size_t max_leg_length() const;

 private:
  ComodulePtr comodule_;
  std::map<Word, Entry> table_;
  std::size_t horizon_;
};

using ConnectionPtr = std::shared_ptr<const StrongConnection>;

/// The two generators t, t⁻¹ of a Laurent-polynomial Hopf algebra O(U(1)):
/// group-like, mutually inverse. nullopt if H is not of that shape.
std::optional<std::pair<char, char>> find_circle_generators(const HopfAlgebra& h);

/// Words tⁿ (n ≥ 0) and t⁻ⁿ.
Word circle_power(const std::pair<char, char>& gens, long n);

/// ℓ = (S⊗id)∘Δ for A = H.
ConnectionPtr antipode_connection(ComodulePtr c, std::size_t horizon);

/// ℓ(t^{n+1}) = x·X ⊗ Y·y where x⊗y = ℓ(t), X⊗Y = ℓ(tⁿ), and the mirror
/// recursion for negative powers. Seeds are checked before use.
ConnectionPtr circle_connection(ComodulePtr c, const Tensor& seed_t, const Tensor& seed_tinv,
                                std::size_t horizon);

/// Solves the strong-connection axioms, with colinearity on both sides
/// ((δ⊗id)ℓ(h) = ℓ(h₍₂₎)¹⊗S(h₍₁₎)⊗ℓ(h₍₂₎)² as well as the right one), as a
/// linear system with ℓ(h)
/// ranging over A_{≤a_degree}⊗A_{≤a_degree}; the canonical echelon
/// particular solution is taken. Throws std::runtime_error if none exists.
ConnectionPtr solved_connection(ComodulePtr c, std::size_t h_degree, std::size_t a_degree);

/// d_u(a) = 1⊗a − a⊗1.
Tensor d_universal(const NCElement& a);
/// a⊗a' ↦ a a'₍₀₎ ⊗ (a'₍₁₎ − ε(a'₍₁₎)1).
Tensor vertical_universal(const ComoduleAlgebra& c, const Tensor& x);
/// m(a⊗a') = aa'.
NCElement multiplication(const Presentation& a, const Tensor& x);

/// Unit, right and left colinearity and the lifted canonical identity on every stored
/// value; ω lands in ker m; ver_u∘ω = 1⊗id; Ad_R-covariance of ω; the Leibniz
/// rule of d_u on A-basis pairs of length ≤ a_degree.
CheckList verify_connection_properties(const StrongConnection& l, std::size_t h_degree,
                                       std::size_t a_degree);

}  // namespace sigmacalc
