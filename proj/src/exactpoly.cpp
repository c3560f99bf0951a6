#include "monodromy/exactpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "monodromy/errors.hpp"

namespace monodromy {

// ---------------------------------------------------------------- Degree

std::int64_t Degree::value() const {
  if (!value_) throw std::logic_error("degree of the zero polynomial has no finite value");
  return *value_;
}

std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
  if (a.is_minus_infinity() || b.is_minus_infinity()) {
    return b.is_minus_infinity() <=> a.is_minus_infinity();
  }
  return *a.value_ <=> *b.value_;
}

Degree operator+(const Degree& a, const Degree& b) {
  if (a.is_minus_infinity() || b.is_minus_infinity()) return Degree::minus_infinity();
  return Degree(*a.value_ + *b.value_);
}

std::ostream& operator<<(std::ostream& os, const Degree& d) {
  if (d.is_minus_infinity()) return os << "-inf";
  return os << d.value();
}

// ---------------------------------------------------------------- helpers

namespace {

void append_term(std::ostringstream& os, const Rational& c, std::int64_t exponent, bool first) {
  const bool negative = sgn(c) < 0;
  Rational magnitude = abs(c);
  if (first) {
    if (negative) os << "-";
  } else {
    os << (negative ? " - " : " + ");
  }
  if (exponent == 0) {
    os << magnitude.get_str();
    return;
  }
  if (magnitude != 1) os << magnitude.get_str() << "*";
  os << "q";
  if (exponent != 1) os << "^" << exponent;
}

}  // namespace

// ---------------------------------------------------------------- Poly

// Callers may hand in unreduced fractions; arithmetic results are already reduced.
Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  canonicalize();
}

Poly::Poly(std::initializer_list<Rational> coeffs) : Poly(std::vector<Rational>(coeffs)) {}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> coeffs(degree + 1);
  coeffs[degree] = c;
  return Poly(std::move(coeffs));
}

Poly Poly::variable() { return monomial(1, 1); }

void Poly::canonicalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Degree Poly::degree() const {
  if (coeffs_.empty()) return Degree::minus_infinity();
  return Degree(static_cast<std::int64_t>(coeffs_.size()) - 1);
}

Rational Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

const Rational& Poly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

bool Poly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

bool Poly::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

bool Poly::is_monomial() const {
  if (coeffs_.empty()) return false;
  return std::count_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) != 0; }) == 1;
}

std::size_t Poly::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return i;
  }
  return 0;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  canonicalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  canonicalize();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Poly& Poly::operator/=(const Rational& s) {
  if (sgn(s) == 0) throw std::domain_error("division of a polynomial by zero");
  for (auto& c : coeffs_) c /= s;
  return *this;
}

Poly Poly::compose_monomial(unsigned m) const {
  if (m == 0) throw std::invalid_argument("compose_monomial requires m >= 1");
  if (m == 1 || coeffs_.size() <= 1) return *this;
  std::vector<Rational> out((coeffs_.size() - 1) * m + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * m] = coeffs_[i];
  return Poly(std::move(out));
}

Poly Poly::shifted(std::size_t shift) const {
  if (is_zero() || shift == 0) return *this;
  std::vector<Rational> out(shift);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return Poly(std::move(out));
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (sgn(coeffs_[i]) == 0) continue;
    append_term(os, coeffs_[i], static_cast<std::int64_t>(i), first);
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------- division

DivMod divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (rem.size() < bc.size()) return {Poly{}, a};

  std::vector<Rational> quot(rem.size() - db);
  const Rational inv_lead = 1 / Rational(bc.back());
  for (std::size_t i = rem.size(); i-- > db;) {
    if (sgn(rem[i]) == 0) continue;
    Rational factor = rem[i] * inv_lead;
    quot[i - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= factor * bc[j];
  }
  rem.resize(db);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly divexact(const Poly& a, const Poly& b) {
  auto [quotient, remainder] = divmod(a, b);
  if (!remainder.is_zero()) {
    throw NotDivisible("(" + a.to_string() + ") is not divisible by (" + b.to_string() + ")");
  }
  return quotient;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).remainder;
    if (!r.is_zero()) r /= r.leading();
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.is_zero()) x /= x.leading();
  return x;
}

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Poly numerator) : num_(std::move(numerator)), den_(Poly::constant(1)) {}

RationalFunction::RationalFunction(Poly numerator, Poly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (den_.degree() > Degree(0)) {
    Poly g = gcd(num_, den_);
    if (g.degree() > Degree(0)) {
      num_ = divexact(num_, g);
      den_ = divexact(den_, g);
    }
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    num_ /= lead;
    den_ /= lead;
  }
}

bool RationalFunction::is_polynomial() const { return den_.degree() == Degree(0); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (is_polynomial() && rhs.is_polynomial()) {
    num_ += rhs.num_;
    return *this;
  }
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
    normalize();
    return *this;
  }
  Poly g = gcd(den_, rhs.den_);
  Poly rhs_cofactor = divexact(rhs.den_, g);
  num_ = num_ * rhs_cofactor + rhs.num_ * divexact(den_, g);
  den_ *= rhs_cofactor;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) {
  return *this += RationalFunction(-rhs.num_, rhs.den_);
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  if (is_polynomial() && rhs.is_polynomial()) {
    num_ *= rhs.num_;
    return *this;
  }
  // Cross-cancel first so the products stay small.
  Poly g1 = gcd(num_, rhs.den_);
  Poly g2 = gcd(rhs.num_, den_);
  Poly a = g1.degree() > Degree(0) ? divexact(num_, g1) : num_;
  Poly d = g1.degree() > Degree(0) ? divexact(rhs.den_, g1) : rhs.den_;
  Poly c = g2.degree() > Degree(0) ? divexact(rhs.num_, g2) : rhs.num_;
  Poly b = g2.degree() > Degree(0) ? divexact(den_, g2) : den_;
  num_ = a * c;
  den_ = b * d;
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return *this;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    num_ /= lead;
    den_ /= lead;
  }
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by the zero rational function");
  return *this *= RationalFunction(rhs.den_, rhs.num_);
}

Rational RationalFunction::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (sgn(d) == 0) throw std::domain_error("rational function evaluated at a pole");
  return num_.eval(x) / d;
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(std::int64_t min_degree, std::vector<Rational> coeffs)
    : min_degree_(min_degree), coeffs_(std::move(coeffs)) {
  canonicalize();
}

LaurentPoly LaurentPoly::from_poly(const Poly& p, std::int64_t shift) { return LaurentPoly(shift, p.coeffs()); }

void LaurentPoly::canonicalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  std::size_t lead_zeros = 0;
  while (lead_zeros < coeffs_.size() && sgn(coeffs_[lead_zeros]) == 0) ++lead_zeros;
  if (lead_zeros > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
    min_degree_ += static_cast<std::int64_t>(lead_zeros);
  }
  if (coeffs_.empty()) min_degree_ = 0;
}

std::int64_t LaurentPoly::max_degree() const {
  if (coeffs_.empty()) throw std::domain_error("zero Laurent polynomial has no degree");
  return min_degree_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
}

Rational LaurentPoly::coeff(std::int64_t exponent) const {
  const std::int64_t idx = exponent - min_degree_;
  if (idx < 0 || idx >= static_cast<std::int64_t>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(idx)];
}

bool LaurentPoly::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t lo = std::min(a.min_degree_, b.min_degree_);
  const std::int64_t hi = std::max(a.max_degree(), b.max_degree());
  std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[static_cast<std::size_t>(a.min_degree_ - lo) + i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[static_cast<std::size_t>(b.min_degree_ - lo) + i] += b.coeffs_[i];
  return LaurentPoly(lo, std::move(out));
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly product = Poly(a.coeffs_) * Poly(b.coeffs_);
  return LaurentPoly(a.min_degree_ + b.min_degree_, product.coeffs());
}

Rational LaurentPoly::eval(const Rational& x) const {
  if (is_zero()) return 0;
  if (sgn(x) == 0 && min_degree_ < 0) throw std::domain_error("Laurent polynomial evaluated at its pole 0");
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  Rational scale = 1;
  Rational base = min_degree_ < 0 ? Rational(1 / x) : x;
  for (std::int64_t i = 0; i < (min_degree_ < 0 ? -min_degree_ : min_degree_); ++i) scale *= base;
  return acc * scale;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (sgn(coeffs_[i]) == 0) continue;
    append_term(os, coeffs_[i], min_degree_ + static_cast<std::int64_t>(i), first);
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

LaurentPoly to_laurent(const Poly& a, const Poly& b) {
  RationalFunction reduced(a, b);
  const Poly& den = reduced.denominator();
  if (!den.is_monomial()) {
    throw NotLaurent("denominator (" + den.to_string() + ") of " + reduced.to_string() + " is not a monomial");
  }
  const auto shift = static_cast<std::int64_t>(den.coeffs().size() - 1);
  return LaurentPoly::from_poly(reduced.numerator(), -shift);
}

}  // namespace monodromy
