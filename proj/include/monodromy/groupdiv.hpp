#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monodromy/exactpoly.hpp"
#include "monodromy/fforacle.hpp"
#include "monodromy/serialize.hpp"

namespace monodromy {

/// Permutation of {0, ..., degree-1}, stored as the image of each point.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint16_t> images);
  static Permutation identity(int degree);
  /// Cycle notation on points 1..degree, e.g. "(1,2,3)(4,5)" or "(1 2)";
  /// "()" is the identity.
  static Permutation parse(std::string_view cycles, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  std::uint16_t operator()(std::uint16_t point) const { return images_[point]; }
  const std::vector<std::uint16_t>& images() const { return images_; }
  Permutation inverse() const;
  /// Cycle notation on 1-based points, fixed points omitted.
  std::string to_string() const;

  /// (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint16_t> images_;
};

/// A permutation group with every element materialized. Element 0 is the
/// identity; the rest follow in breadth-first order from the generators.
class FiniteGroupTable {
 public:
  using Id = std::uint32_t;

  /// Throws ClosureBudgetExceeded when the closure grows past max_order.
  static FiniteGroupTable generate(std::span<const Permutation> generators, std::size_t max_order = 10'000);

  std::size_t order() const { return elements_.size(); }
  Id identity() const { return 0; }
  const Permutation& element(Id id) const { return elements_[id]; }
  std::optional<Id> find(const Permutation& p) const;

  Id product(Id a, Id b) const;
  Id inverse(Id a) const { return inverses_[a]; }
  Id power(Id a, std::uint64_t e) const;
  /// Multiplicative order, found by stripping prime factors from |G|.
  std::uint64_t element_order(Id a) const;
  bool commute(Id a, Id b) const { return product(a, b) == product(b, a); }

  /// Elements of the subgroup generated by `generators`, ascending ids.
  std::vector<Id> subgroup(std::span<const Id> generators) const;

 private:
  std::vector<Permutation> elements_;
  std::map<Permutation, Id> index_;
  std::vector<Id> table_;  // full Cayley table when small enough
  std::vector<Id> inverses_;
};

/// Finite set of primes.
class PrimeSet {
 public:
  PrimeSet() = default;
  /// Throws InputError if an entry is not prime.
  explicit PrimeSet(std::set<int> primes);

  const std::set<int>& primes() const { return primes_; }
  bool contains(int p) const { return primes_.count(p) != 0; }
  bool coprime_to(std::uint64_t value) const;
  std::string to_string() const;

 private:
  std::set<int> primes_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// Exponent of p in n (n > 0).
int valuation(const Integer& n, int p);

struct FrobeniusResult {
  std::uint64_t n = 0;
  std::uint64_t count = 0;   // #{x : x^n = 1}
  bool applicable = false;   // n divides |G|
  bool divisible = false;    // n divides count
};

FrobeniusResult frobenius_count(const FiniteGroupTable& g, std::uint64_t n);

struct CosetResult {
  std::uint64_t count = 0;           // p-power-order elements of the coset Hx
  std::uint64_t subgroup_order = 0;
  std::uint64_t p_part = 1;          // largest power of p dividing |H|
  bool divisible = false;
};

/// Counts p-power-order elements of H x where H = <h_generators>. Throws
/// PreconditionViolated unless p is prime, x normalizes H, and x has
/// p-power order.
CosetResult coset_p_power_count(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Id> h_generators,
                                FiniteGroupTable::Id x, int p);

struct CosetTriple {
  std::vector<FiniteGroupTable::Id> h_generators;
  FiniteGroupTable::Id x;
  int p;
};

/// Valid (H, x, p) triples over every subgroup generated by at most two
/// elements, every prime dividing |G|, and every p-power-order x in N(H).
std::vector<CosetTriple> enumerate_coset_triples(const FiniteGroupTable& g);

struct HomLimits {
  std::size_t max_group_order = 2000;
  int max_k = 3;
  bool override_budget = false;
};

/// Ordered k-tuples of pairwise-commuting elements whose orders avoid every
/// prime in s; this is #Hom((Z^_S)^k, G).
Integer hom_count_profinite_abelian(const FiniteGroupTable& g, int k, const PrimeSet& s,
                                    const HomLimits& limits = {});

struct ValuationCheck {
  int prime;
  int count_valuation;
  int order_valuation;
  bool ok;
};

struct DivisibilityReport {
  Integer hom_count;
  std::uint64_t group_order = 0;
  Rational quotient;  // hom_count / |G|
  std::vector<ValuationCheck> checks;  // primes dividing |G| outside S
  bool passed = false;
};

/// Checks that #Hom(Z^_S^{k-1} x Z^_S, G) / |G| has no denominator prime
/// outside S.
DivisibilityReport divisibility_report(const FiniteGroupTable& g, int k, const PrimeSet& s,
                                       const HomLimits& limits = {});

Json frobenius_to_json(const FrobeniusResult& r);
Json coset_to_json(const CosetResult& r);
Json divisibility_to_json(const DivisibilityReport& r);

/// GL_n(f) acting on the nonzero column vectors; vector v is point
/// code(v) - 1 with the first coordinate least significant.
Permutation matrix_as_permutation(const FiniteField& f, const FFMatrix& m);
/// Transvections and diag(w, 1, ..., 1) as permutations; they generate GL_n(f).
std::vector<Permutation> gl_generators_as_permutations(const FiniteField& f, int n);

struct CorpusGroup {
  std::string name;
  int degree = 0;
  std::vector<Permutation> generators;
};

/// One group per line: `<name> <degree> <generator>...`, each generator in
/// cycle notation with comma-separated points and no spaces. Blank lines and
/// lines starting with '#' are skipped.
std::vector<CorpusGroup> parse_corpus(std::string_view text);
std::vector<CorpusGroup> load_corpus(const std::string& path);
/// S3, S4, A4, D4, Q8, C12, GL2(F3), C6 and a few cyclic p-groups.
std::string_view default_corpus_text();

}  // namespace monodromy
