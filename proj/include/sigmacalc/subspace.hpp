// Exact linear algebra over Q(q): canonical echelon bases of subspaces of
// an ambient space with opaque, ordered basis labels.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sigmacalc/rational_function.hpp"

namespace sigmacalc {

using Scalar = RationalFunction;

/// Sparse coordinate vector: (index, value) pairs sorted by index, no zeros.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

namespace sparse {

/// v += c * w
void axpy(SparseVector& v, const Scalar& c, const SparseVector& w);
SparseVector scaled(const SparseVector& v, const Scalar& c);
Scalar value_at(const SparseVector& v, std::size_t index);
/// Builds a sparse vector from unsorted entries, summing duplicates.
SparseVector from_entries(std::vector<std::pair<std::size_t, Scalar>> entries);

}  // namespace sparse

class Ambient {
 public:
  explicit Ambient(std::vector<std::string> labels) : labels_(std::move(labels)) {}
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

AmbientPtr make_ambient(std::vector<std::string> labels);

class AmbientMismatch : public std::invalid_argument {
 public:
  AmbientMismatch() : std::invalid_argument("ambient mismatch") {}
};

/// A subspace stored as its reduced row echelon basis. Pivots are strictly
/// increasing, each pivot entry is 1, and pivot columns vanish in every other
/// row, so equal subspaces have identical rows.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(AmbientPtr ambient);

  static SubspaceBasis span(AmbientPtr ambient, std::span<const SparseVector> vectors);

  const AmbientPtr& ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<SparseVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Adds v to the span; returns true when the dimension grew.
  bool insert(SparseVector v);

  /// v minus its projection along the pivots; zero iff v is in the span.
  SparseVector reduce(const SparseVector& v) const;
  /// Expansion coefficients of v in rows(), or nullopt if v is not in the span.
  std::optional<std::vector<Scalar>> membership(const SparseVector& v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  bool contains(const SubspaceBasis& other) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b);

 private:
  void check(const SparseVector& v) const;
  std::optional<std::size_t> row_with_pivot(std::size_t column) const;

  AmbientPtr ambient_;
  std::vector<SparseVector> rows_;
  std::vector<std::size_t> pivots_;
};

bool same_ambient(const AmbientPtr& a, const AmbientPtr& b);

SubspaceBasis sum(const SubspaceBasis& s, const SubspaceBasis& t);
SubspaceBasis intersection(const SubspaceBasis& s, const SubspaceBasis& t);
/// Canonical complement of (s ∩ t) in s: the residues of s modulo t.
/// Its rows are coset representatives of s/(s ∩ t).
SubspaceBasis quotient(const SubspaceBasis& s, const SubspaceBasis& t);
std::size_t quotient_dimension(const SubspaceBasis& s, const SubspaceBasis& t);

/// Kernel of the linear map sending the j-th domain basis vector to images[j]
/// (vectors in a codomain of dimension codomain_size).
SubspaceBasis kernel(AmbientPtr domain, std::span<const SparseVector> images,
                     std::size_t codomain_size);
/// {x : f(x) ∈ target} for f given by its images in target's ambient.
SubspaceBasis preimage(AmbientPtr domain, std::span<const SparseVector> images,
                       const SubspaceBasis& target);
std::size_t rank(std::span<const SparseVector> vectors, std::size_t dimension);

}  // namespace sigmacalc
