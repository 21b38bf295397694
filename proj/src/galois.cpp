#include "sigmacalc/galois.hpp"

namespace sigmacalc {

const Tensor& TranslationTable::representative(const Word& h) const {
  auto it = reps_.find(h);
  if (it == reps_.end()) throw TranslationExhausted();
  return it->second;
}

Tensor GaloisExtension::canonical_map(const Tensor& x) const {
  return sigmacalc::canonical_map(*comodule_, x);
}

Tensor GaloisExtension::canonical_map3(const Tensor& x) const {
  const Presentation& h = hopf().algebra();
  const Legs ahh{&algebra(), &h, &h};
  Tensor out;
  for (const auto& [k, c] : x) {
    Tensor middle;
    for (const auto& [m, d] : comodule_->coaction(k[1])) middle.add_term({m[0], m[1], Word{}}, d);
    Tensor t = multiply(Tensor(TensorKey{k[0], Word{}, Word{}}), middle, ahh);
    out += multiply(t, comodule_->double_coaction(k[2]), ahh) * c;
  }
  return out;
}

BalancedElement GaloisExtension::canonical_inverse(const Tensor& y) const {
  const Legs aa = comodule_->legs_aa();
  Tensor rep;
  for (const auto& [k, c] : y) {
    rep += multiply(Tensor(TensorKey{k[0], Word{}}), translation_.representative(k[1]), aa) * c;
  }
  return {std::move(rep), y};
}

BalancedElement GaloisExtension::balanced(const Tensor& representative) const {
  return {representative, canonical_map(representative)};
}

const Tensor& GaloisExtension::pair_braiding(const Word& a, const Word& b, bool inverse) const {
  auto& cache = inverse ? sigma_inverse_cache_ : sigma_cache_;
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(mutex_);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const Legs aa = comodule_->legs_aa();
  Tensor result;
  if (!inverse) {
    for (const auto& [k, c] : comodule_->coaction(a)) {
      result += multiply(Tensor(TensorKey{k[0] + b, Word{}}), translation_.representative(k[1]), aa) * c;
    }
  } else {
    for (const auto& [k, c] : comodule_->coaction(b)) {
      const NCElement s = hopf().antipode_inverse(NCElement(k[1]));
      for (const auto& [w, d] : s) {
        result += multiply(translation_.representative(w), Tensor(TensorKey{Word{}, a + k[0]}), aa) *
                  (c * d);
      }
    }
  }
  std::lock_guard lock(mutex_);
  return cache.emplace(key, std::move(result)).first->second;
}

Tensor GaloisExtension::braiding_representative(const Tensor& x) const {
  return braiding_on_legs(x, 0, false);
}

Tensor GaloisExtension::braiding_inverse_representative(const Tensor& x) const {
  return braiding_on_legs(x, 0, true);
}

Tensor GaloisExtension::braiding_on_legs(const Tensor& x, std::size_t i, bool inverse) const {
  Tensor out;
  for (const auto& [k, c] : x) {
    for (const auto& [m, d] : pair_braiding(k[i], k[i + 1], inverse)) {
      TensorKey key = k;
      key[i] = m[0];
      key[i + 1] = m[1];
      out.add_term(key, c * d);
    }
  }
  return out;
}

BalancedElement GaloisExtension::braiding(const BalancedElement& x) const {
  const Tensor rep =
      x.representative ? *x.representative : *canonical_inverse(x.canonical_image).representative;
  return balanced(braiding_representative(rep));
}

BalancedElement GaloisExtension::braiding_inverse(const BalancedElement& x) const {
  const Tensor rep =
      x.representative ? *x.representative : *canonical_inverse(x.canonical_image).representative;
  return balanced(braiding_inverse_representative(rep));
}

Tensor GaloisExtension::braiding_canonical(const Tensor& y) const {
  const Presentation& h = hopf().algebra();
  Tensor out;
  for (const auto& [k, c] : y) {
    const NCElement s = hopf().antipode(k[1]);
    for (const auto& [m, d] : comodule_->coaction(k[0])) {
      out += tensor_of(NCElement(m[0]), h.multiply(NCElement(m[1]), s)) * (c * d);
    }
  }
  return out;
}

Tensor GaloisExtension::braiding_inverse_canonical(const Tensor& y) const {
  const Presentation& h = hopf().algebra();
  Tensor out;
  for (const auto& [k, c] : y) {
    const NCElement s = hopf().antipode_inverse(NCElement(k[1]));
    for (const auto& [m, d] : comodule_->coaction(k[0])) {
      out += tensor_of(NCElement(m[0]), h.multiply(s, NCElement(m[1]))) * (c * d);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

CheckEntry verify_translation_table(const GaloisExtension& g) {
  CheckTimer timer;
  std::string witness;
  for (const auto& [h, rep] : g.translation().entries()) {
    const Tensor expected(TensorKey{Word{}, h});
    const Tensor got = g.canonical_map(rep);
    if (got != expected) {
      const Legs ah = g.comodule().legs_ah();
      witness = "h = " + g.hopf().algebra().word_string(h) + ": can(tau(h)) - 1 (x) h = " +
                format_tensor(got - expected, ah);
      break;
    }
  }
  auto e = make_entry("braiding", "translation-map", "galois.translation", witness.empty(), witness,
                      std::to_string(g.translation().entries().size()) + " H-basis words");
  e.elapsed_ms = timer.elapsed_ms();
  return e;
}

namespace {

struct Suite {
  CheckList& out;

  template <class Keys, class Pred>
  void run(const char* check, const char* anchor, const Keys& keys, Pred&& pred,
           const std::string& what) {
    CheckTimer timer;
    std::string witness;
    std::size_t checked = 0, beyond = 0;
    for (const auto& k : keys) {
      ++checked;
      try {
        witness = pred(k);
      } catch (const TranslationExhausted&) {
        ++beyond;
        continue;
      }
      if (!witness.empty()) break;
    }
    std::string detail = std::to_string(checked) + " " + what;
    if (beyond) detail += ", " + std::to_string(beyond) + " beyond the translation window";
    auto e = make_entry("braiding", check, anchor, witness.empty(), witness, detail);
    if (beyond && e.status == Status::Pass) e.status = Status::Truncated;
    e.elapsed_ms = timer.elapsed_ms();
    out.push_back(std::move(e));
  }
};

}  // namespace

CheckList verify_braiding_properties(const GaloisExtension& g, std::size_t degree) {
  const Presentation& a = g.algebra();
  const Legs aa = g.comodule().legs_aa();
  const Legs ah = g.comodule().legs_ah();
  const Legs aaa{&a, &a, &a};
  const Legs ahh{&a, &g.hopf().algebra(), &g.hopf().algebra()};
  const auto words = a.basis_up_to_degree(degree);

  std::vector<TensorKey> pairs;
  for (const auto& u : words) {
    for (const auto& v : words) pairs.push_back({u, v});
  }
  std::vector<TensorKey> triples;
  for (const auto& u : words) {
    for (const auto& v : words) {
      for (const auto& w : words) triples.push_back({u, v, w});
    }
  }
  auto show2 = [&](const TensorKey& k) { return format_tensor(Tensor(k), aa); };
  auto show3 = [&](const TensorKey& k) { return format_tensor(Tensor(k), aaa); };
  auto diff_ah = [&](const Tensor& x, const Tensor& y) { return format_tensor(x - y, ah); };

  CheckList out;
  out.push_back(verify_translation_table(g));
  Suite suite{out};

  // b-slide over a basis of the coinvariants in the window.
  {
    const WordCoordinates coords = word_coordinates(a, degree);
    const SubspaceBasis coinv = coinvariants_up_to(g.comodule(), degree);
    std::vector<NCElement> bs;
    for (const auto& row : coinv.rows()) bs.push_back(coords.element(row));
    std::vector<std::pair<std::size_t, TensorKey>> cases;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      for (const auto& p : pairs) cases.emplace_back(i, p);
    }
    suite.run("balanced-slide", "galois.balanced", cases, [&](const auto& item) -> std::string {
      const auto& [i, k] = item;
      const NCElement& b = bs[i];
      const Tensor left = tensor_of(a.multiply(NCElement(k[0]), b), NCElement(k[1]));
      const Tensor right = tensor_of(NCElement(k[0]), a.multiply(b, NCElement(k[1])));
      const Tensor l = g.canonical_map(left), r = g.canonical_map(right);
      if (l == r) return {};
      return "b = " + a.to_string(b) + ", " + show2(k) + ": " + diff_ah(l, r);
    }, "coinvariant-pair cases");
  }

  suite.run("canonical-braiding", "galois.can-sigma", pairs, [&](const TensorKey& k) -> std::string {
    const Tensor lhs = g.canonical_map(g.braiding_representative(Tensor(k)));
    Tensor rhs;
    for (const auto& [m, c] : g.comodule().coaction(k[0])) {
      rhs += normal_form(Tensor(TensorKey{m[0] + k[1], m[1]}), ah) * c;
    }
    if (lhs == rhs) return {};
    return show2(k) + ": " + diff_ah(lhs, rhs);
  }, "basis pairs");

  suite.run("canonical-coordinates", "galois.sigma-closed-form", pairs,
            [&](const TensorKey& k) -> std::string {
    const Tensor x(k);
    const Tensor y = g.canonical_map(x);
    const Tensor s = g.canonical_map(g.braiding_representative(x));
    if (s != g.braiding_canonical(y)) return show2(k) + ": sigma " + diff_ah(s, g.braiding_canonical(y));
    const Tensor si = g.canonical_map(g.braiding_inverse_representative(x));
    if (si != g.braiding_inverse_canonical(y)) {
      return show2(k) + ": sigma^-1 " + diff_ah(si, g.braiding_inverse_canonical(y));
    }
    return {};
  }, "basis pairs");

  suite.run("inverse", "galois.sigma-inverse", pairs, [&](const TensorKey& k) -> std::string {
    const Tensor x(k);
    const Tensor y = g.canonical_map(x);
    const Tensor a1 = g.canonical_map(g.braiding_representative(g.braiding_inverse_representative(x)));
    if (a1 != y) return show2(k) + ": sigma sigma^-1 " + diff_ah(a1, y);
    const Tensor a2 = g.canonical_map(g.braiding_inverse_representative(g.braiding_representative(x)));
    if (a2 != y) return show2(k) + ": sigma^-1 sigma " + diff_ah(a2, y);
    return {};
  }, "basis pairs");

  suite.run("sigma-commutativity", "galois.m-sigma", pairs, [&](const TensorKey& k) -> std::string {
    const Tensor x(k);
    const NCElement lhs = as_element(merge_legs(g.braiding_representative(x), 0, a));
    const NCElement rhs = as_element(merge_legs(normal_form(x, aa), 0, a));
    if (lhs == rhs) return {};
    return show2(k) + ": " + a.to_string(lhs - rhs);
  }, "basis pairs");

  auto diff3 = [&](const TensorKey& k, const Tensor& l, const Tensor& r) -> std::string {
    const Tensor cl = g.canonical_map3(l), cr = g.canonical_map3(r);
    if (cl == cr) return {};
    return show3(k) + ": " + format_tensor(cl - cr, ahh);
  };
  auto diff2 = [&](const TensorKey& k, const Tensor& l, const Tensor& r) -> std::string {
    const Tensor cl = g.canonical_map(l), cr = g.canonical_map(r);
    if (cl == cr) return {};
    return show3(k) + ": " + diff_ah(cl, cr);
  };

  suite.run("braid-relation", "galois.braid", triples, [&](const TensorKey& k) -> std::string {
    const Tensor x(k);
    const Tensor lhs = g.braiding_on_legs(g.braiding_on_legs(g.braiding_on_legs(x, 0), 1), 0);
    const Tensor rhs = g.braiding_on_legs(g.braiding_on_legs(g.braiding_on_legs(x, 1), 0), 1);
    return diff3(k, lhs, rhs);
  }, "basis triples");

  suite.run("product-compatibility-left", "galois.sigma-m-left", triples,
            [&](const TensorKey& k) -> std::string {
    const Tensor x(k);
    const Tensor lhs = g.braiding_representative(merge_legs(x, 0, a));
    const Tensor rhs = merge_legs(g.braiding_on_legs(g.braiding_on_legs(x, 1), 0), 1, a);
    return diff2(k, lhs, rhs);
  }, "basis triples");

  suite.run("product-compatibility-right", "galois.sigma-m-right", triples,
            [&](const TensorKey& k) -> std::string {
    const Tensor x(k);
    const Tensor lhs = g.braiding_representative(merge_legs(x, 1, a));
    const Tensor rhs = merge_legs(g.braiding_on_legs(g.braiding_on_legs(x, 0), 1), 0, a);
    return diff2(k, lhs, rhs);
  }, "basis triples");

  return out;
}

}  // namespace sigmacalc
