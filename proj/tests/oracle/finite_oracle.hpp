// Dense brute-force model of a free finite action, for cross-checking the
// symbolic pipeline. Everything is recomputed from the Cayley table and the
// action table with mpq_class matrices: the balanced tensor square is the
// explicit quotient of A⊗A by the relations ab⊗c − a⊗bc, and σ is applied by
// its defining formula a₍₀₎a'τ(a₍₁₎) on representatives.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;

/// Incremental row echelon form with the combination that produced each row,
/// so kernels and solutions come out of the same elimination.
class Eliminator {
 public:
  Eliminator(std::size_t image_size, std::size_t domain_size)
      : image_size_(image_size), domain_size_(domain_size) {}

  /// Adds the image of a domain vector; returns the kernel vector produced
  /// when the image reduces to zero.
  std::optional<Vec> add(Vec image, Vec combination);
  /// A domain vector mapping to target, if any.
  std::optional<Vec> solve(const Vec& target) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    std::size_t pivot;
    Vec image;
    Vec combination;
  };
  std::size_t image_size_;
  std::size_t domain_size_;
  std::vector<Row> rows_;
};

/// A subspace of Qⁿ kept in echelon form.
class Span {
 public:
  explicit Span(std::size_t n) : n_(n) {}
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  Vec reduce(Vec v) const;
  bool insert(Vec v);
  bool contains(const Vec& v) const;
  bool contains(const Span& other) const;
  friend bool operator==(const Span& a, const Span& b) {
    return a.dim() == b.dim() && a.contains(b);
  }

 private:
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

struct Action {
  std::size_t points = 0;
  /// group[g][h] = gh
  std::vector<std::vector<std::size_t>> group;
  /// act[x][g] = x·g
  std::vector<std::vector<std::size_t>> act;
};

struct Dimensions {
  std::size_t interior = 0;
  std::size_t kernel = 0;
  std::size_t ideal = 0;
  std::size_t vertical = 0;
  std::size_t balanced_seed = 0;
  std::size_t balanced = 0;
  std::size_t lift = 0;
  std::size_t forms = 0;
  std::size_t quotient_ideal = 0;
  std::size_t ver_rank = 0;
  std::size_t interior_degree = 0;
  std::size_t closure_steps = 0;
  bool closure_stabilized = false;
  std::size_t balanced_square = 0;  // dim A⊗_B A
};

struct Evaluation {
  /// "suite/check" -> "PASS" | "FAIL" | "NOT-EVALUATED"
  std::map<std::string, std::string> statuses;
  Dimensions dims;
  bool omega_injective = false;
};

/// Strong connection values ℓ(δ_g) ∈ A⊗A (index x·n + y) for every group
/// element, and ℓ(1) as stored by the pipeline.
struct ConnectionData {
  std::vector<Vec> on_points;
  Vec on_unit;
};

/// Statuses of the structure suites (hopf, galois, braiding, connection,
/// principality), which do not depend on the ideal.
std::map<std::string, std::string> structure_statuses(const Action& action,
                                                      const ConnectionData& connection);

/// The σ-generated calculus for the ideal of functions supported on
/// `support` (non-identity elements), at window degree `degree`.
Evaluation calculus(const Action& action, const std::vector<std::size_t>& support,
                    std::size_t degree);

}  // namespace oracle
