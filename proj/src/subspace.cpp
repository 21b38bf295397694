#include "sigmacalc/subspace.hpp"

#include <algorithm>

namespace sigmacalc {

namespace sparse {

void axpy(SparseVector& v, const Scalar& c, const SparseVector& w) {
  if (c.is_zero() || w.empty()) return;
  SparseVector out;
  out.reserve(v.size() + w.size());
  auto i = v.begin();
  auto j = w.begin();
  while (i != v.end() || j != w.end()) {
    if (j == w.end() || (i != v.end() && i->first < j->first)) {
      out.push_back(std::move(*i));
      ++i;
    } else if (i == v.end() || j->first < i->first) {
      out.emplace_back(j->first, c * j->second);
      ++j;
    } else {
      Scalar s = i->second + c * j->second;
      if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  v = std::move(out);
}

SparseVector scaled(const SparseVector& v, const Scalar& c) {
  if (c.is_zero()) return {};
  SparseVector out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, x * c);
  return out;
}

Scalar value_at(const SparseVector& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != v.end() && it->first == index) return it->second;
  return Scalar();
}

SparseVector from_entries(std::vector<std::pair<std::size_t, Scalar>> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  for (auto& [i, x] : entries) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += x;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!x.is_zero()) {
      out.emplace_back(i, std::move(x));
    }
  }
  return out;
}

}  // namespace sparse

namespace {

// Gauss-Jordan echelon form without ambient bookkeeping. Shared by the
// public subspace type and the augmented-matrix algorithms below.
class Echelon {
 public:
  bool insert(SparseVector v) {
    v = reduce(v);
    if (v.empty()) return false;
    const Scalar inv = v.front().second.inverse();
    v = sparse::scaled(v, inv);
    const std::size_t p = v.front().first;
    for (auto& row : rows_) {
      Scalar c = sparse::value_at(row, p);
      if (!c.is_zero()) sparse::axpy(row, -c, v);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto offset = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + offset, std::move(v));
    return true;
  }

  SparseVector reduce(const SparseVector& v) const {
    SparseVector r = v;
    for (const auto& [col, value] : v) {
      auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col);
      if (it == pivots_.end() || *it != col) continue;
      sparse::axpy(r, -value, rows_[static_cast<std::size_t>(it - pivots_.begin())]);
    }
    return r;
  }

  std::vector<SparseVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

AmbientPtr make_ambient(std::vector<std::string> labels) {
  return std::make_shared<const Ambient>(std::move(labels));
}

bool same_ambient(const AmbientPtr& a, const AmbientPtr& b) {
  return a == b || (a && b && a->labels() == b->labels());
}

SubspaceBasis::SubspaceBasis(AmbientPtr ambient) : ambient_(std::move(ambient)) {
  if (!ambient_) throw std::invalid_argument("subspace requires an ambient basis");
}

SubspaceBasis SubspaceBasis::span(AmbientPtr ambient, std::span<const SparseVector> vectors) {
  SubspaceBasis s(std::move(ambient));
  for (const auto& v : vectors) s.insert(v);
  return s;
}

void SubspaceBasis::check(const SparseVector& v) const {
  if (!v.empty() && v.back().first >= ambient_->size()) throw AmbientMismatch();
}

bool SubspaceBasis::insert(SparseVector v) {
  check(v);
  Echelon e;
  e.rows_ = std::move(rows_);
  e.pivots_ = std::move(pivots_);
  const bool grew = e.insert(std::move(v));
  rows_ = std::move(e.rows_);
  pivots_ = std::move(e.pivots_);
  return grew;
}

SparseVector SubspaceBasis::reduce(const SparseVector& v) const {
  check(v);
  SparseVector r = v;
  for (const auto& [col, value] : v) {
    if (auto row = row_with_pivot(col)) sparse::axpy(r, -value, rows_[*row]);
  }
  return r;
}

std::optional<std::size_t> SubspaceBasis::row_with_pivot(std::size_t column) const {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), column);
  if (it == pivots_.end() || *it != column) return std::nullopt;
  return static_cast<std::size_t>(it - pivots_.begin());
}

std::optional<std::vector<Scalar>> SubspaceBasis::membership(const SparseVector& v) const {
  if (!reduce(v).empty()) return std::nullopt;
  std::vector<Scalar> coefficients(rows_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    coefficients[i] = sparse::value_at(v, pivots_[i]);
  }
  return coefficients;
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  if (!same_ambient(ambient_, other.ambient_)) throw AmbientMismatch();
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const SparseVector& r) { return contains(r); });
}

bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
  return same_ambient(a.ambient_, b.ambient_) && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
}

SubspaceBasis sum(const SubspaceBasis& s, const SubspaceBasis& t) {
  if (!same_ambient(s.ambient(), t.ambient())) throw AmbientMismatch();
  SubspaceBasis r = s;
  for (const auto& row : t.rows()) r.insert(row);
  return r;
}

SubspaceBasis intersection(const SubspaceBasis& s, const SubspaceBasis& t) {
  if (!same_ambient(s.ambient(), t.ambient())) throw AmbientMismatch();
  const std::size_t n = s.ambient()->size();
  // Zassenhaus: rows (s_i | s_i) and (t_j | 0); rows whose left half
  // vanishes carry a basis of the intersection in their right half.
  Echelon e;
  for (const auto& row : s.rows()) {
    SparseVector v = row;
    for (const auto& [i, x] : row) v.emplace_back(i + n, x);
    e.insert(std::move(v));
  }
  for (const auto& row : t.rows()) e.insert(row);
  SubspaceBasis out(s.ambient());
  for (std::size_t k = 0; k < e.rows_.size(); ++k) {
    if (e.pivots_[k] < n) continue;
    SparseVector v;
    for (const auto& [i, x] : e.rows_[k]) v.emplace_back(i - n, x);
    out.insert(std::move(v));
  }
  return out;
}

SubspaceBasis quotient(const SubspaceBasis& s, const SubspaceBasis& t) {
  if (!same_ambient(s.ambient(), t.ambient())) throw AmbientMismatch();
  SubspaceBasis out(s.ambient());
  for (const auto& row : s.rows()) {
    SparseVector r = t.reduce(row);
    if (!r.empty()) out.insert(std::move(r));
  }
  return out;
}

std::size_t quotient_dimension(const SubspaceBasis& s, const SubspaceBasis& t) {
  return quotient(s, t).dim();
}

SubspaceBasis kernel(AmbientPtr domain, std::span<const SparseVector> images,
                     std::size_t codomain_size) {
  if (images.size() != domain->size()) throw AmbientMismatch();
  Echelon e;
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (!images[j].empty() && images[j].back().first >= codomain_size) throw AmbientMismatch();
    SparseVector v = images[j];
    v.emplace_back(codomain_size + j, Scalar(1));
    e.insert(std::move(v));
  }
  SubspaceBasis out(std::move(domain));
  for (std::size_t k = 0; k < e.rows_.size(); ++k) {
    if (e.pivots_[k] < codomain_size) continue;
    SparseVector v;
    for (const auto& [i, x] : e.rows_[k]) v.emplace_back(i - codomain_size, x);
    out.insert(std::move(v));
  }
  return out;
}

SubspaceBasis preimage(AmbientPtr domain, std::span<const SparseVector> images,
                       const SubspaceBasis& target) {
  std::vector<SparseVector> reduced;
  reduced.reserve(images.size());
  for (const auto& v : images) reduced.push_back(target.reduce(v));
  return kernel(std::move(domain), reduced, target.ambient()->size());
}

std::size_t rank(std::span<const SparseVector> vectors, std::size_t dimension) {
  Echelon e;
  for (const auto& v : vectors) {
    if (!v.empty() && v.back().first >= dimension) throw AmbientMismatch();
    e.insert(v);
  }
  return e.rows_.size();
}

}  // namespace sigmacalc
