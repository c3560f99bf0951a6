#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "monodromy/exactpoly.hpp"
#include "monodromy/serialize.hpp"

namespace monodromy {

/// Integer partition with weakly descending positive parts.
struct Partition {
  std::vector<int> parts;

  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  /// Multiplicity of each distinct part value, largest value first.
  std::vector<std::pair<int, int>> multiplicities() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// A partition lambda of n together with, for each distinct part value i of
/// lambda, a partition of the multiplicity of i. Matrices get their type from
/// the characteristic polynomial: lambda lists the degrees of the irreducible
/// factors, refinements[i] lists how often each distinct degree-i factor
/// occurs.
struct TypeOfN {
  Partition lambda;
  std::map<int, Partition> refinements;

  int weight() const { return lambda.weight(); }
  /// Throws std::invalid_argument if the refinements do not match lambda.
  void validate() const;
  std::string to_string() const;

  friend bool operator==(const TypeOfN&, const TypeOfN&) = default;
  friend auto operator<=>(const TypeOfN&, const TypeOfN&) = default;
};

/// One factor (i, r) of a type: r copies of an irreducible of degree i.
struct TypePair {
  int degree;
  int multiplicity;

  friend bool operator==(const TypePair&, const TypePair&) = default;
};

/// All partitions of n in reverse-lexicographic order; n = 0 gives the single
/// empty partition.
std::vector<Partition> enumerate_partitions(int n);

/// All types of n (n >= 1). Partitions in reverse-lexicographic order; within
/// one lambda the refinement of the largest part value varies slowest.
std::vector<TypeOfN> enumerate_types(int n);

/// Pairs (i, r) for i a distinct part of lambda and r a part of
/// refinements[i], repeated parts kept. Ordered by i then r, both descending.
std::vector<TypePair> type_pairs(const TypeOfN& t);

/// Number of monic irreducibles of degree i over F_q as a polynomial in q,
/// (1/i) * sum_{d | i} mu(d) q^{i/d}. With exclude_t, the polynomial T itself
/// is dropped from the degree-1 count.
Poly count_irreducibles(int i, bool exclude_t);

/// Product over distinct part values of (multiplicity)!.
Integer aut_factor(const Partition& p);

/// Number of monic polynomials over F_q with nonzero constant term whose
/// factorization has type t, as a polynomial in q.
Poly psi(const TypeOfN& t);

Json partition_to_json(const Partition& p);
Json type_to_json(const TypeOfN& t);
TypeOfN type_from_json(const Json& j);

}  // namespace monodromy
