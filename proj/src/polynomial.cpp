#include "isored/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "isored/error.hpp"

namespace isored {

Polynomial::Polynomial(std::vector<mpq_class> coefficients) : c_(std::move(coefficients)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Polynomial::Polynomial(const mpq_class& c) {
  if (c != 0) c_.push_back(c);
}

Polynomial Polynomial::lambda() { return Polynomial(std::vector<mpq_class>{0, 1}); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class Polynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::evaluate(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<mpq_class> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial out = *this;
  const mpq_class lead = leading();
  for (auto& c : out.c_) c /= lead;
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZeroFunction, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<mpq_class> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<mpq_class> quo(rem.size() - db, 0);
  for (std::size_t k = quo.size(); k-- > 0;) {
    const mpq_class f = rem[k + db] / bc[db];
    quo[k] = f;
    if (f == 0) continue;
    for (std::size_t t = 0; t <= db; ++t) rem[k + t] -= f * bc[t];
  }
  rem.resize(db);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<Polynomial> square_free_decomposition(const Polynomial& a) {
  std::vector<Polynomial> out;
  if (a.degree() <= 0) return out;
  const Polynomial da = a.derivative();
  const Polynomial g = gcd(a, da);
  Polynomial b = divmod(a, g).first;
  Polynomial c = divmod(da, g).first;
  Polynomial d = c - b.derivative();
  while (b.degree() > 0) {
    const Polynomial f = gcd(b, d);
    out.push_back(f);
    b = divmod(b, f).first;
    c = divmod(d, f).first;
    d = c - b.derivative();
  }
  return out;
}

namespace {

// Roots of a square-free polynomial: companion eigenvalues, then a few
// Newton steps on the exact coefficients.
std::vector<std::complex<double>> simple_roots(const Polynomial& f) {
  const Polynomial p = f.monic();
  const int d = p.degree();
  if (d <= 0) return {};
  if (d == 1) return {std::complex<double>(-p.coefficient(0).get_d(), 0.0)};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p.coefficient(static_cast<std::size_t>(i)).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigensolverFailure, "companion matrix eigenvalues");
  const Polynomial dp = p.derivative();
  std::vector<std::complex<double>> out;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    std::complex<double> z = solver.eigenvalues()(k);
    for (int step = 0; step < 3; ++step) {
      const std::complex<double> slope = dp.evaluate(z);
      if (std::abs(slope) == 0.0) break;
      const std::complex<double> next = z - p.evaluate(z) / slope;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      if (std::abs(p.evaluate(next)) >= std::abs(p.evaluate(z))) break;
      z = next;
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace

std::vector<std::complex<double>> roots(const Polynomial& p) {
  std::vector<std::complex<double>> out;
  const auto factors = square_free_decomposition(p);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto r = simple_roots(factors[k]);
    for (std::size_t rep = 0; rep <= k; ++rep) out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    mpq_class mag = abs(c[k]);
    if (out.empty())
      out += c[k] < 0 ? "-" : "";
    else
      out += c[k] < 0 ? " - " : " + ";
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += mag.get_str();
    if (k > 0) {
      if (!unit) out += "*";
      out += "x";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

mpq_class parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  const auto bad = [&] { return Error(ErrorCode::ParseError, "not a rational number: '" + s + "'"); };

  if (s.find_first_of(".eE") == std::string::npos) {
    mpq_class q;
    try {
      if (q.set_str(s, 10) != 0) throw bad();
    } catch (const std::invalid_argument&) {
      throw bad();
    }
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  }

  // Decimal: [-]digits[.digits][e[+-]digits], converted exactly.
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '-') {
    negative = true;
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool any = false;
  for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos, any = true)
    digits += s[pos];
  if (pos < s.size() && s[pos] == '.') {
    for (++pos; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos, any = true) {
      digits += s[pos];
      --scale;
    }
  }
  if (!any) throw bad();
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    try {
      std::size_t used = 0;
      scale += std::stol(s.substr(pos), &used);
      pos += used;
    } catch (const std::exception&) {
      throw bad();
    }
  }
  if (pos != s.size()) throw bad();
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale < 0 ? mpq_class(num, ten_pow) : mpq_class(num * ten_pow);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(1) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw Error(ErrorCode::DivisionByZeroFunction, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  const mpq_class lead = den_.leading();
  if (lead != 1) {
    num_ *= Polynomial(mpq_class(1 / lead));
    den_ *= Polynomial(mpq_class(1 / lead));
  }
}

mpq_class RationalFunction::evaluate(const mpq_class& x) const {
  const mpq_class d = den_.evaluate(x);
  if (d == 0)
    throw Error(ErrorCode::DivisionByZeroFunction, "pole at " + x.get_str());
  return num_.evaluate(x) / d;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero())
    throw Error(ErrorCode::DivisionByZeroFunction, "division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string to_string(const RationalFunction& r) {
  if (r.den().degree() == 0) return to_string(r.num());
  return "(" + to_string(r.num()) + ") / (" + to_string(r.den()) + ")";
}

}  // namespace isored
