// Exact scalars: integer polynomials in q and the field of rational
// functions Q(q) built on them.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigmacalc {

/// Dense polynomial in q with arbitrary-precision integer coefficients,
/// stored lowest degree first with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c);  // NOLINT: implicit constant embedding
  explicit Polynomial(std::vector<mpz_class> coefficients);

  static Polynomial monomial(const mpz_class& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// Degree of the zero polynomial is -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const mpz_class& leading() const { return coeffs_.back(); }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  mpz_class coefficient(std::size_t i) const;

  mpz_class content() const;
  Polynomial primitive_part() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const mpz_class& c) const;
  /// Division by an integer that divides every coefficient.
  Polynomial divided_exactly(const mpz_class& c) const;
  /// Division by a polynomial known to divide this one over Z.
  Polynomial divided_exactly(const Polynomial& divisor) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

/// Primitive gcd of two integer polynomials with positive leading
/// coefficient; the content gcd is included. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b (b nonzero).
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b);

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in scalar field") {}
};

/// An element of Q(q). The stored form is canonical: numerator and
/// denominator are coprime integer polynomials with jointly coprime
/// coefficients and the denominator has positive leading coefficient.
/// Zero is 0/1. Two values are equal iff their stored forms are equal.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(const mpq_class& c);            // NOLINT
  explicit RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) { normalize(); }
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction q();

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& other);
  RationalFunction& operator-=(const RationalFunction& other);
  RationalFunction& operator*=(const RationalFunction& other);
  RationalFunction& operator/=(const RationalFunction& other);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

  RationalFunction inverse() const;
  RationalFunction pow(long exponent) const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  /// Renders in the expression syntax of presentation files, e.g. "q^2 - 1"
  /// or "(q + 1)/(2q)".
  std::string to_string() const;
  /// True if to_string() needs surrounding parentheses inside a product.
  bool needs_parentheses() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

/// Builds num/den and brings it to canonical form.
RationalFunction normalize(Polynomial num, Polynomial den);

}  // namespace sigmacalc
