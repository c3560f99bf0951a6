#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace monodromy {

using Integer = mpz_class;
using Rational = mpq_class;

/// Degree of a univariate polynomial. The zero polynomial has degree
/// minus infinity, which compares below every finite degree and absorbs
/// addition.
class Degree {
 public:
  static Degree minus_infinity() { return Degree(); }
  explicit Degree(std::int64_t value) : value_(value) {}

  bool is_minus_infinity() const { return !value_.has_value(); }
  std::int64_t value() const;

  friend bool operator==(const Degree&, const Degree&) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b);
  friend Degree operator+(const Degree& a, const Degree& b);
  friend std::ostream& operator<<(std::ostream& os, const Degree& d);

 private:
  Degree() = default;
  std::optional<std::int64_t> value_;
};

/// Polynomial in the formal variable q with exact rational coefficients,
/// stored in ascending degree. The coefficient vector never ends in a zero;
/// the zero polynomial has no coefficients at all.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);

  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, std::size_t degree);
  /// The polynomial q.
  static Poly variable();

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Degree degree() const;
  /// Coefficient of q^i; zero past the end.
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;

  bool is_monic() const;
  bool is_integral() const;
  /// True for c*q^m with c != 0.
  bool is_monomial() const;
  /// Lowest exponent with a nonzero coefficient. Zero polynomial -> 0.
  std::size_t valuation() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& s);
  Poly& operator/=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// p(q^m).
  Poly compose_monomial(unsigned m) const;
  /// p multiplied by q^shift.
  Poly shifted(std::size_t shift) const;
  Rational eval(const Rational& x) const;
  Poly pow(unsigned e) const;

  /// Human-readable form, highest degree first, e.g. "q^2 - 3*q + 2".
  std::string to_string() const;

 private:
  void canonicalize();

  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division over Q. Throws std::domain_error when b is zero.
DivMod divmod(const Poly& a, const Poly& b);

/// c with b*c == a. Throws NotDivisible when the remainder is nonzero.
Poly divexact(const Poly& a, const Poly& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Quotient of polynomials kept in lowest terms: gcd(num, den) = 1 and the
/// denominator is monic, so equal functions have equal representations.
class RationalFunction {
 public:
  RationalFunction() : den_(Poly::constant(1)) {}
  RationalFunction(Poly numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(Poly numerator, Poly denominator);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const;

  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  /// Throws std::domain_error at a pole.
  Rational eval(const Rational& x) const;
  std::string to_string() const;

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

/// Element of Q[q, 1/q]: coefficients ascending from min_degree. Both the
/// first and last stored coefficients are nonzero; zero is empty with
/// min_degree 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::int64_t min_degree, std::vector<Rational> coeffs);
  static LaurentPoly from_poly(const Poly& p, std::int64_t shift = 0);

  std::int64_t min_degree() const { return min_degree_; }
  std::int64_t max_degree() const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(std::int64_t exponent) const;
  bool is_integral() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Throws std::domain_error for x = 0 when negative powers are present.
  Rational eval(const Rational& x) const;
  std::string to_string() const;

 private:
  void canonicalize();

  std::int64_t min_degree_ = 0;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

/// a/b as a Laurent polynomial. Throws NotLaurent when the reduced
/// denominator is not a monomial, std::domain_error when b is zero.
LaurentPoly to_laurent(const Poly& a, const Poly& b);

}  // namespace monodromy
