#include "sigmacalc/rational_function.hpp"

#include <algorithm>
#include <utility>

namespace sigmacalc {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

Polynomial::Polynomial(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> v(degree + 1, 0);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class Polynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
}

mpz_class Polynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return {};
  mpz_class c = content();
  if (leading() < 0) c = -c;
  return divided_exactly(c);
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(const mpz_class& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

Polynomial Polynomial::divided_exactly(const mpz_class& c) const {
  Polynomial r = *this;
  for (auto& x : r.coeffs_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

Polynomial Polynomial::divided_exactly(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero();
  if (is_zero()) return {};
  if (divisor.degree() > degree()) throw std::logic_error("inexact polynomial division");
  std::vector<mpz_class> rem = coeffs_;
  const std::size_t db = static_cast<std::size_t>(divisor.degree());
  std::vector<mpz_class> quot(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    mpz_class qc;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), divisor.leading().get_mpz_t())) {
      throw std::logic_error("inexact polynomial division");
    }
    mpz_divexact(qc.get_mpz_t(), rem[i].get_mpz_t(), divisor.leading().get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= qc * divisor.coeffs_[j];
    quot[i - db] = qc;
  }
  for (const auto& r : rem) {
    if (r != 0) throw std::logic_error("inexact polynomial division");
  }
  return Polynomial(std::move(quot));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpz_class& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    mpz_class magnitude = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (k == 0 || magnitude != 1) out += magnitude.get_str();
    if (k >= 1) out += "q";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  Polynomial r = a;
  const long db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    const std::size_t shift = static_cast<std::size_t>(r.degree() - db);
    Polynomial term = Polynomial::monomial(r.leading(), shift) * b;
    r = r.scaled(b.leading()) - term;
  }
  return r;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return b.leading() < 0 ? -b : b;
  if (b.is_zero()) return a.leading() < 0 ? -a : a;
  mpz_class content_gcd;
  const mpz_class ca = a.content();
  const mpz_class cb = b.content();
  mpz_gcd(content_gcd.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Polynomial x = a.primitive_part();
  Polynomial y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) {
      x = Polynomial(1);
      break;
    }
    Polynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.primitive_part();
  }
  return x.primitive_part().scaled(content_gcd);
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const mpq_class& c)
    : num_(std::vector<mpz_class>{c.get_num()}), den_(std::vector<mpz_class>{c.get_den()}) {
  normalize();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

RationalFunction normalize(Polynomial num, Polynomial den) {
  return RationalFunction(std::move(num), std::move(den));
}

RationalFunction RationalFunction::q() {
  return RationalFunction(Polynomial::monomial(1, 1));
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_.primitive_part(), den_.primitive_part());
    if (g.degree() > 0) {
      num_ = num_.divided_exactly(g);
      den_ = den_.divided_exactly(g);
    }
  }
  mpz_class c = num_.content();
  const mpz_class cd = den_.content();
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
  if (den_.leading() < 0) c = -c;
  if (c != 1) {
    num_ = num_.divided_exactly(c);
    den_ = den_.divided_exactly(c);
  }
}

bool RationalFunction::is_one() const {
  return num_.is_constant() && den_.is_constant() && num_ == den_;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ += other.num_;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) {
  return *this += -other;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = RationalFunction();
  num_ = num_ * other.num_;
  den_ = den_ * other.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) {
  return *this *= other.inverse();
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(long exponent) const {
  RationalFunction base = exponent < 0 ? inverse() : *this;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  RationalFunction result(1);
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

namespace {

std::size_t term_count(const Polynomial& p) {
  return static_cast<std::size_t>(
      std::count_if(p.coefficients().begin(), p.coefficients().end(),
                    [](const mpz_class& c) { return c != 0; }));
}

}  // namespace

bool RationalFunction::needs_parentheses() const {
  return den_ == Polynomial(1) && term_count(num_) > 1;
}

std::string RationalFunction::to_string() const {
  if (den_ == Polynomial(1)) return num_.to_string();
  std::string n = num_.to_string();
  if (term_count(num_) > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  const bool bare_den =
      den_.is_constant() || (term_count(den_) == 1 && den_.leading() == 1);
  if (!bare_den) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace sigmacalc
