#pragma once

// Exact univariate polynomials and rational functions in lambda over Q.

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace isored {

/// Ascending coefficients, no trailing zeros; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coefficients);
  Polynomial(const mpq_class& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(mpq_class(c)) {}  // NOLINT

  /// The indeterminate lambda.
  static Polynomial lambda();

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }
  mpq_class coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
  const mpq_class& leading() const { return c_.back(); }

  mpq_class evaluate(const mpq_class& x) const;
  std::complex<double> evaluate(std::complex<double> x) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Quotient and remainder; throws DivisionByZeroFunction for b == 0.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd; gcd(0, 0) == 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Square-free factors f_1, f_2, ... with a = c * prod f_k^k.
std::vector<Polynomial> square_free_decomposition(const Polynomial& a);
/// All complex roots with multiplicity.
std::vector<std::complex<double>> roots(const Polynomial& p);

std::string to_string(const Polynomial& p);

/// Accepts "3", "-1/2", "0.25", "1e-3".
mpq_class parse_rational(std::string_view text);

/// num / den in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(Polynomial num);  // NOLINT
  RationalFunction(const mpq_class& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  /// Throws DivisionByZeroFunction when den == 0.
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool has_pole_at(const mpq_class& x) const { return den_.evaluate(x) == 0; }
  /// Throws DivisionByZeroFunction at a pole.
  mpq_class evaluate(const mpq_class& x) const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

std::string to_string(const RationalFunction& r);

}  // namespace isored
