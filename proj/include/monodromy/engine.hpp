#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "monodromy/exactpoly.hpp"
#include "monodromy/serialize.hpp"

namespace monodromy {

enum class CountMode {
  kSemisimple,  // every entry of the tuple semisimple
  kMixed,       // all but the last entry semisimple
  kConjugacy,   // simultaneous-conjugacy classes of semisimple tuples
};

std::string_view mode_name(CountMode mode);
/// Accepts "ss", "mixed", "conj". Throws InputError otherwise.
CountMode mode_from_name(std::string_view name);

/// Memo key for the two weight recursions.
struct CountKey {
  CountMode mode;
  int level;  // remaining nesting depth
  int r;      // block size
  int m;      // accumulated field-extension exponent

  friend auto operator<=>(const CountKey&, const CountKey&) = default;
};

/// Integer polynomial P(q) together with what it counts.
struct CountingPolynomial {
  Poly poly;
  int n = 0;
  int k = 0;
  CountMode mode = CountMode::kSemisimple;
};

/// |GL_n(F_q)| = prod_{j<n} (q^n - q^j).
Poly gl_order(int n);

struct DegreeReport {
  std::int64_t degree = 0;
  std::int64_t lower_bound = 0;  // n^2 + (k-1)n
  bool meets_bound = false;
  bool monic = false;
  bool bound_asserted = false;   // even k >= 2
  bool equality_asserted = false;  // k == 2
};

/// Degree and leading-coefficient checks on a tuple-counting polynomial.
/// The bound deg >= n^2 + (k-1)n is asserted for even k >= 2 and only
/// reported otherwise; for k = 2 the degree must equal n^2 + n and P must be monic.
/// Throws DegreeViolation / MonicViolation when an asserted property fails.
DegreeReport check_degree_monic(const CountingPolynomial& p);

/// P / |GL_n| in Z[q, 1/q] for k >= 1. Throws NotLaurent or
/// NonIntegerCoefficient when it is not.
LaurentPoly check_laurent_quotient(const CountingPolynomial& p);

/// Default ceilings for the CLI; the engine itself accepts any size.
inline constexpr int kDefaultMaxN = 6;
inline constexpr int kDefaultMaxK = 6;

/// Evaluates the nested type sums. Two weight functions carry the recursion:
///
///   SS(0, r, m) = 1 / |GL_r|(q^m)
///   H(0, r, m)  = (q^m - 1) q^{m(r-1)}
///   W(j, r, m)  = sum_{T |= r} psi_T(q^m) prod_{(i, r') in T} W(j-1, r', m i)
///
/// where W is SS or H. Results are memoized on (mode, level, r, m); the memo
/// is safe to share between threads.
class CountingEngine {
 public:
  explicit CountingEngine(bool memoize = true) : memoize_(memoize) {}

  RationalFunction ss_weight(int level, int r, int m);
  RationalFunction mixed_weight(int level, int r, int m);

  /// Ordered k-tuples of commuting semisimple matrices in GL_n(F_q).
  CountingPolynomial count_semisimple_tuples(int n, int k);
  /// Ordered k-tuples (X_1..X_{k-1}, Y), X_i semisimple, all commuting. k >= 2.
  CountingPolynomial count_mixed_tuples(int n, int k);
  /// Conjugacy classes of commuting semisimple k-tuples. k >= 1.
  CountingPolynomial count_conjugacy_classes(int n, int k);
  /// Homomorphisms from the fundamental group of a g-dimensional abelian
  /// variety of p-rank 0 or 1 into GL_n(F_q).
  CountingPolynomial hom_count(int n, int g, int prank);

  std::size_t memo_size() const;
  void clear_memo();

  /// {"entries":[{"mode","level","r","m","value"}...]} in key order.
  Json memo_to_json() const;
  /// Merges entries; existing keys are kept.
  void memo_from_json(const Json& j);
  /// Missing files are ignored.
  void load_cache(const std::filesystem::path& path);
  void save_cache(const std::filesystem::path& path) const;

 private:
  RationalFunction weight(const CountKey& key);
  RationalFunction compute(const CountKey& key);
  CountingPolynomial certify(const Poly& prefactor, const RationalFunction& weight, int n, int k, CountMode mode);

  bool memoize_;
  mutable std::mutex mutex_;
  std::map<CountKey, RationalFunction> memo_;
};

}  // namespace monodromy
