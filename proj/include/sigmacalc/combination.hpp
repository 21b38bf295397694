// Sparse linear combinations over Q(q) keyed by words or tuples of words.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sigmacalc/rational_function.hpp"

namespace sigmacalc {

/// A word in the generators of a presentation; each char is a generator
/// index. The empty word is the unit.
using Word = std::string;

template <class Key>
class Combination {
 public:
  using Terms = std::map<Key, RationalFunction>;

  Combination() = default;
  Combination(const Key& key, RationalFunction coefficient = RationalFunction(1)) {
    add_term(key, std::move(coefficient));
  }

  void add_term(const Key& key, const RationalFunction& coefficient) {
    if (coefficient.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  RationalFunction coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? RationalFunction() : it->second;
  }

  Combination& operator+=(const Combination& other) {
    for (const auto& [k, c] : other.terms_) add_term(k, c);
    return *this;
  }
  Combination& operator-=(const Combination& other) {
    for (const auto& [k, c] : other.terms_) add_term(k, -c);
    return *this;
  }
  Combination& operator*=(const RationalFunction& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, x] : terms_) x *= c;
    return *this;
  }
  Combination operator-() const {
    Combination r = *this;
    for (auto& [k, x] : r.terms_) x = -x;
    return r;
  }
  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
  friend Combination operator*(Combination a, const RationalFunction& c) { return a *= c; }
  friend Combination operator*(const RationalFunction& c, Combination a) { return a *= c; }

  friend bool operator==(const Combination&, const Combination&) = default;

 private:
  Terms terms_;
};

/// Element of a presented algebra (or of the free algebra before reduction).
using NCElement = Combination<Word>;
using TensorKey = std::vector<Word>;
/// Element of a tensor product of presented algebras; every key has one
/// word per tensor leg.
using Tensor = Combination<TensorKey>;

inline Tensor tensor_of(const NCElement& x, const NCElement& y) {
  Tensor t;
  for (const auto& [u, a] : x) {
    for (const auto& [v, b] : y) t.add_term({u, v}, a * b);
  }
  return t;
}

inline Tensor tensor_of(const Tensor& x, const NCElement& y) {
  Tensor t;
  for (const auto& [u, a] : x) {
    for (const auto& [v, b] : y) {
      TensorKey k = u;
      k.push_back(v);
      t.add_term(k, a * b);
    }
  }
  return t;
}

/// Length of the longest word (the length filtration degree); -1 for zero.
inline long length_degree(const NCElement& x) {
  long d = -1;
  for (const auto& [w, c] : x) d = std::max(d, static_cast<long>(w.size()));
  return d;
}

}  // namespace sigmacalc
