#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "monodromy/typecomb.hpp"

namespace monodromy {

/// Explicit finite field F_{p^e}. Elements are indices 0..q-1: the index
/// sum_j c_j p^j stands for the residue class of sum_j c_j x^j modulo the
/// table-fixed irreducible modulus. 0 and 1 are the additive and
/// multiplicative identities.
class FiniteField {
 public:
  using Element = std::uint16_t;

  /// Supported for p in {2, 3, 5, 7} and 1 <= e <= 3; throws
  /// UnsupportedField otherwise. The modulus is checked for irreducibility.
  static FiniteField make(int p, int e);
  /// Splits q into p^e and calls make(). Throws UnsupportedField.
  static FiniteField for_order(int q);

  int characteristic() const { return p_; }
  int degree() const { return e_; }
  int order() const { return q_; }
  /// Monic modulus over F_p, ascending coefficients.
  const std::vector<int>& modulus() const { return modulus_; }

  Element add(Element a, Element b) const { return add_[index(a, b)]; }
  Element sub(Element a, Element b) const { return add_[index(a, neg_[b])]; }
  Element neg(Element a) const { return neg_[a]; }
  Element mul(Element a, Element b) const { return mul_[index(a, b)]; }
  /// Throws std::domain_error for 0.
  Element inv(Element a) const;
  /// Image of an integer in the prime subfield.
  Element from_int(long v) const;

  /// Multiplicative order of a nonzero element.
  int element_order(Element a) const;
  /// Some generator of the multiplicative group.
  Element primitive_element() const;

 private:
  FiniteField(int p, int e, std::vector<int> modulus);
  std::size_t index(Element a, Element b) const { return static_cast<std::size_t>(a) * q_ + b; }

  int p_;
  int e_;
  int q_;
  std::vector<int> modulus_;
  std::vector<Element> add_;
  std::vector<Element> mul_;
  std::vector<Element> neg_;
  std::vector<Element> inv_;
};

/// Polynomial over a FiniteField, ascending coefficients, no trailing zeros.
using FieldPoly = std::vector<FiniteField::Element>;

namespace fieldpoly {

void trim(FieldPoly& a);
FieldPoly add(const FiniteField& f, const FieldPoly& a, const FieldPoly& b);
FieldPoly sub(const FiniteField& f, const FieldPoly& a, const FieldPoly& b);
FieldPoly mul(const FiniteField& f, const FieldPoly& a, const FieldPoly& b);
/// {quotient, remainder}. Throws std::domain_error when b is zero.
std::pair<FieldPoly, FieldPoly> divmod(const FiniteField& f, const FieldPoly& a, const FieldPoly& b);
FieldPoly derivative(const FiniteField& f, const FieldPoly& a);
/// Monic gcd.
FieldPoly gcd(const FiniteField& f, const FieldPoly& a, const FieldPoly& b);
/// Checked by trial division against every monic polynomial of lower
/// positive degree.
bool is_irreducible(const FiniteField& f, const FieldPoly& a);
/// All monic polynomials of the given degree, in index order.
std::vector<FieldPoly> monic_of_degree(const FiniteField& f, int degree);

}  // namespace fieldpoly

/// Dense n x n matrix of field elements, row-major.
class FFMatrix {
 public:
  FFMatrix() = default;
  explicit FFMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {}
  FFMatrix(int n, std::vector<FiniteField::Element> entries);

  static FFMatrix identity(int n);
  /// Inverse of code(): base-q digits, entry (0,0) least significant.
  static FFMatrix from_code(int n, int q, std::uint64_t code);

  int size() const { return n_; }
  FiniteField::Element at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, FiniteField::Element v) { entries_[static_cast<std::size_t>(i) * n_ + j] = v; }
  std::span<const FiniteField::Element> entries() const { return entries_; }
  std::uint64_t code(int q) const;

  friend bool operator==(const FFMatrix&, const FFMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<FiniteField::Element> entries_;
};

namespace matrix {

FFMatrix mul(const FiniteField& f, const FFMatrix& a, const FFMatrix& b);
FiniteField::Element det(const FiniteField& f, const FFMatrix& a);
/// Throws std::domain_error for singular input.
FFMatrix inverse(const FiniteField& f, const FFMatrix& a);
bool commutes(const FiniteField& f, const FFMatrix& a, const FFMatrix& b);
/// g a g^{-1}, with g_inv supplied by the caller.
FFMatrix conjugate(const FiniteField& f, const FFMatrix& g, const FFMatrix& g_inv, const FFMatrix& a);
/// Companion matrix of a monic polynomial of degree >= 1.
FFMatrix companion(const FiniteField& f, const FieldPoly& monic);
/// Multiplicative order of an invertible matrix by repeated multiplication.
std::uint64_t order(const FiniteField& f, const FFMatrix& a);

}  // namespace matrix

/// Minimal polynomial (monic), found as the first linear dependence among
/// I, A, A^2, ... viewed as vectors of length n^2.
FieldPoly min_poly(const FiniteField& f, const FFMatrix& a);

/// Squarefree minimal polynomial, i.e. gcd(m, m') = 1.
bool is_semisimple(const FiniteField& f, const FFMatrix& a);

/// Desk-scale enumeration limits.
struct OracleLimits {
  std::uint64_t max_group_order = 200'000;
  std::uint64_t max_poly_space = 1'000'000;
  bool override_budget = false;
  unsigned threads = 1;
};

/// |GL_n(F_q)| as an exact integer.
Integer gl_order_value(int n, int q);

/// Enumerated GL_n(F_q): a flag per matrix code (all of M_n(F_q)) plus the
/// lists of invertible and semisimple codes in ascending order.
class GLContext {
 public:
  /// Throws BudgetExceeded when |GL_n(F_q)| is above the limit.
  GLContext(const FiniteField& field, int n, const OracleLimits& limits = {});

  const FiniteField& field() const { return field_; }
  int n() const { return n_; }
  std::uint64_t matrix_count() const { return flags_.size(); }
  const std::vector<std::uint64_t>& invertible() const { return invertible_; }
  const std::vector<std::uint64_t>& semisimple() const { return semisimple_; }
  bool is_invertible(std::uint64_t code) const { return (flags_[code] & kInvertible) != 0; }
  bool is_semisimple(std::uint64_t code) const { return (flags_[code] & kSemisimple) != 0; }
  FFMatrix decode(std::uint64_t code) const { return FFMatrix::from_code(n_, field_.order(), code); }

  /// Codes of all invertible matrices commuting with every matrix in
  /// `with`, found by enumerating the solution space of XY = YX.
  std::vector<std::uint64_t> centralizer(std::span<const FFMatrix> with) const;

 private:
  static constexpr std::uint8_t kInvertible = 1;
  static constexpr std::uint8_t kSemisimple = 2;

  FiniteField field_;
  int n_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::uint64_t> invertible_;
  std::vector<std::uint64_t> semisimple_;
};

/// Every invertible n x n matrix over f, each exactly once, in code order.
std::vector<FFMatrix> enumerate_invertible(int n, const FiniteField& f, const OracleLimits& limits = {});
void for_each_invertible(int n, const FiniteField& f, const std::function<void(const FFMatrix&)>& visit,
                         const OracleLimits& limits = {});

enum class TupleMode {
  kAllSemisimple,
  kLastFree,  // the final entry only needs to be invertible
};

/// Ordered k-tuples of pairwise-commuting invertible matrices, all
/// semisimple or all but the last. Partial tuples are extended through
/// their common centralizer; the first coordinate is split across
/// limits.threads workers.
std::uint64_t brute_hom_count(int n, const FiniteField& f, int k, TupleMode mode, const OracleLimits& limits = {});

/// Every commuting semisimple k-tuple as a vector of matrix codes.
std::vector<std::vector<std::uint64_t>> semisimple_tuples(const GLContext& ctx, int k);

/// Orbits of commuting semisimple k-tuples under simultaneous conjugation,
/// counted by marking every conjugate of each new representative.
std::uint64_t brute_conj_count(int n, const FiniteField& f, int k, const OracleLimits& limits = {});

struct CensusRecord {
  TypeOfN type;
  std::uint64_t count = 0;
};

/// Factorization type of a monic polynomial with nonzero constant term,
/// by trial division over the monic irreducibles of degree <= deg a.
TypeOfN factor_type(const FiniteField& f, const FieldPoly& a);

/// Tally of factorization types over all monic degree-n polynomials with
/// nonzero constant term, one record per type of n in enumerate_types
/// order (zero counts included).
std::vector<CensusRecord> poly_type_census(const FiniteField& f, int n, const OracleLimits& limits = {});

/// Number of monic irreducibles of the given degree, by enumeration.
std::uint64_t count_monic_irreducibles(const FiniteField& f, int degree);

}  // namespace monodromy
