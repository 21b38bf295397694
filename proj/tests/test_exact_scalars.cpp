// Q(q) arithmetic and exact subspace algebra.

#include "doctest.h"

#include <random>

#include "sigmacalc/rational_function.hpp"
#include "sigmacalc/subspace.hpp"

using namespace sigmacalc;

namespace {

// Evaluates at a rational point with plain mpq arithmetic; an independent
// check of the canonical-form machinery.
mpq_class eval(const Polynomial& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.coefficients().size(); i-- > 0;) acc = acc * x + mpq_class(p.coefficients()[i]);
  return acc;
}

mpq_class eval(const RationalFunction& r, const mpq_class& x) {
  return eval(r.numerator(), x) / eval(r.denominator(), x);
}

Polynomial random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-4, 4);
  std::vector<mpz_class> c(deg(rng) + 1);
  for (auto& x : c) x = coef(rng);
  return Polynomial(c);
}

RationalFunction random_rf(std::mt19937& rng) {
  Polynomial den;
  while (den.is_zero()) den = random_poly(rng, 2);
  return RationalFunction(random_poly(rng, 3), den);
}

const mpq_class kPoints[] = {mpq_class(3, 7), mpq_class(-5, 2), mpq_class(11), mpq_class(2, 13)};

bool safe_point(const RationalFunction& r, const mpq_class& x) { return eval(r.denominator(), x) != 0; }

}  // namespace

TEST_CASE("polynomial gcd and exact division") {
  const Polynomial q1({mpz_class(-1), mpz_class(1)});  // q - 1
  const Polynomial q2({mpz_class(1), mpz_class(1)});   // q + 1
  const Polynomial prod = q1 * q2 * Polynomial(6);
  // The content gcd is kept: gcd(6(q-1)(q+1), 4(q-1)) = 2(q-1).
  CHECK(gcd(prod, q1 * Polynomial(4)) == q1 * Polynomial(2));
  CHECK(prod.divided_exactly(q2) == q1 * Polynomial(6));
  CHECK(prod.content() == 6);
  CHECK(gcd(Polynomial(), Polynomial()).is_zero());
  CHECK(Polynomial().degree() == -1);
}

TEST_CASE("rational functions are stored canonically") {
  const RationalFunction q = RationalFunction::q();
  const RationalFunction a = (q * q - 1) / (q - 1);
  CHECK(a == q + 1);
  CHECK(a.denominator() == Polynomial(1));
  const RationalFunction b = RationalFunction(Polynomial(2)) / (q * RationalFunction(-4));
  // Denominator has positive leading coefficient and coprime content.
  CHECK(b.denominator().leading() > 0);
  CHECK(b.to_string() == "-1/(2q)");
  CHECK((q.pow(-2) * q.pow(2)).is_one());
  CHECK(RationalFunction(mpq_class(6, 4)) == RationalFunction(3) / RationalFunction(2));
  CHECK_THROWS_AS(RationalFunction(1) / RationalFunction(0), DivisionByZero);
  CHECK_THROWS_AS(RationalFunction(0).inverse(), DivisionByZero);
}

TEST_CASE("rendering round-trips through the expression syntax") {
  const RationalFunction q = RationalFunction::q();
  CHECK((q * q - 1).to_string() == "q^2 - 1");
  CHECK(RationalFunction(0).to_string() == "0");
  CHECK((q * q - 1).needs_parentheses());
  // A fraction renders with its own parentheses and is safe inside a product.
  CHECK_FALSE(((q + 1) / (q * RationalFunction(2))).needs_parentheses());
  CHECK(((q + 1) / (q * RationalFunction(2))).to_string() == "(q + 1)/(2q)");
  CHECK_FALSE(q.needs_parentheses());
}

TEST_CASE("field axioms on random elements, checked at sample points") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalFunction a = random_rf(rng), b = random_rf(rng), c = random_rf(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK((a / a).is_one());
    for (const auto& x : kPoints) {
      if (!safe_point(a, x) || !safe_point(b, x)) continue;
      const RationalFunction s = a + b, p = a * b;
      if (safe_point(s, x)) CHECK(eval(s, x) == eval(a, x) + eval(b, x));
      if (safe_point(p, x)) CHECK(eval(p, x) == eval(a, x) * eval(b, x));
    }
    // Canonical form: coprime parts, positive leading denominator.
    CHECK(gcd(a.numerator(), a.denominator()).degree() <= 0);
    CHECK(a.denominator().leading() > 0);
  }
}

TEST_CASE("echelon bases are canonical") {
  const auto amb = make_ambient({"x", "y", "z"});
  const Scalar q = RationalFunction::q();
  const SparseVector u{{0, 1}, {1, q}}, v{{1, 1}, {2, -1}}, w{{0, 2}, {1, 2 * q + 1}, {2, -1}};
  const SubspaceBasis s = SubspaceBasis::span(amb, std::vector<SparseVector>{u, v});
  const SubspaceBasis t = SubspaceBasis::span(amb, std::vector<SparseVector>{w, v});
  CHECK(s.dim() == 2);
  CHECK(s == t);
  CHECK(s.rows() == t.rows());
  CHECK(s.contains(SparseVector{{0, 1}, {1, q + 1}, {2, -1}}));
  CHECK_FALSE(s.contains(SparseVector{{2, 1}}));
  const auto coeffs = s.membership(w);
  REQUIRE(coeffs);
  SparseVector back;
  for (std::size_t i = 0; i < coeffs->size(); ++i) sparse::axpy(back, (*coeffs)[i], s.rows()[i]);
  CHECK(back == w);
  // Ambients are compared by their labels.
  CHECK(s.contains(SubspaceBasis(make_ambient({"x", "y", "z"}))));
  CHECK_THROWS_AS(s.contains(SubspaceBasis(make_ambient({"u", "v", "w"}))), AmbientMismatch);
}

TEST_CASE("sum, intersection, quotient, kernel and preimage") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-2, 2);
  const std::size_t n = 6;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  const auto amb = make_ambient(labels);
  auto random_vectors = [&](std::size_t count) {
    std::vector<SparseVector> vs;
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<std::pair<std::size_t, Scalar>> entries;
      for (std::size_t i = 0; i < n; ++i) entries.emplace_back(i, Scalar(coef(rng)));
      vs.push_back(sparse::from_entries(entries));
    }
    return vs;
  };
  for (int trial = 0; trial < 40; ++trial) {
    const SubspaceBasis s = SubspaceBasis::span(amb, random_vectors(3));
    const SubspaceBasis t = SubspaceBasis::span(amb, random_vectors(4));
    const SubspaceBasis both = intersection(s, t);
    // Grassmann formula.
    CHECK(sum(s, t).dim() + both.dim() == s.dim() + t.dim());
    CHECK(s.contains(both));
    CHECK(t.contains(both));
    CHECK(quotient_dimension(s, t) == s.dim() - both.dim());
    CHECK(quotient(s, t).dim() == s.dim() - both.dim());

    // f(e_j) = images[j] into a 4-dimensional codomain.
    std::vector<SparseVector> images;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::pair<std::size_t, Scalar>> entries;
      for (std::size_t i = 0; i < 4; ++i) entries.emplace_back(i, Scalar(coef(rng)));
      images.push_back(sparse::from_entries(entries));
    }
    const SubspaceBasis ker = kernel(amb, images, 4);
    CHECK(ker.dim() + rank(images, 4) == n);
    for (const auto& row : ker.rows()) {
      SparseVector image;
      for (const auto& [j, c] : row) sparse::axpy(image, c, images[j]);
      CHECK(image.empty());
    }
    const auto cod = make_ambient({"f0", "f1", "f2", "f3"});
    const SubspaceBasis target = SubspaceBasis::span(cod, std::vector<SparseVector>{{{0, 1}}, {{1, 1}, {3, 1}}});
    const SubspaceBasis pre = preimage(amb, images, target);
    CHECK(pre.contains(ker));
    for (const auto& row : pre.rows()) {
      SparseVector image;
      for (const auto& [j, c] : row) sparse::axpy(image, c, images[j]);
      CHECK(target.contains(image));
    }
  }
}
