// Finite coordinate systems for combinations: a fixed ordered key list
// (a truncation window) with lookup in both directions.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigmacalc/combination.hpp"
#include "sigmacalc/subspace.hpp"

namespace sigmacalc {

template <class Key>
class Coordinates {
 public:
  Coordinates(std::vector<Key> keys, const std::function<std::string(const Key&)>& label)
      : keys_(std::move(keys)) {
    std::vector<std::string> labels;
    labels.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      index_.emplace(keys_[i], i);
      labels.push_back(label(keys_[i]));
    }
    ambient_ = make_ambient(std::move(labels));
  }

  const AmbientPtr& ambient() const { return ambient_; }
  std::size_t size() const { return keys_.size(); }
  const std::vector<Key>& keys() const { return keys_; }
  const Key& key(std::size_t i) const { return keys_.at(i); }

  std::optional<std::size_t> index(const Key& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Coordinates of x, or nullopt if some term lies outside the window.
  std::optional<SparseVector> vector(const Combination<Key>& x) const {
    std::vector<std::pair<std::size_t, Scalar>> entries;
    entries.reserve(x.size());
    for (const auto& [k, c] : x) {
      auto i = index(k);
      if (!i) return std::nullopt;
      entries.emplace_back(*i, c);
    }
    return sparse::from_entries(std::move(entries));
  }

  Combination<Key> element(const SparseVector& v) const {
    Combination<Key> x;
    for (const auto& [i, c] : v) x.add_term(keys_.at(i), c);
    return x;
  }

  SparseVector unit(std::size_t i) const { return {{i, Scalar(1)}}; }

 private:
  std::vector<Key> keys_;
  std::map<Key, std::size_t> index_;
  AmbientPtr ambient_;
};

/// Assigns indices to keys on first sight; for maps whose codomain window is
/// not known in advance.
template <class Key>
class KeyIndexer {
 public:
  std::size_t index(const Key& k) {
    auto [it, inserted] = index_.try_emplace(k, keys_.size());
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  SparseVector vector(const Combination<Key>& x) {
    std::vector<std::pair<std::size_t, Scalar>> entries;
    for (const auto& [k, c] : x) entries.emplace_back(index(k), c);
    return sparse::from_entries(std::move(entries));
  }
  std::size_t size() const { return keys_.size(); }
  const std::vector<Key>& keys() const { return keys_; }

 private:
  std::vector<Key> keys_;
  std::map<Key, std::size_t> index_;
};

using WordCoordinates = Coordinates<Word>;
using TensorCoordinates = Coordinates<TensorKey>;

}  // namespace sigmacalc
