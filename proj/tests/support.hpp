#pragma once

// Seeded generators and small independent oracles shared by the unit tests.

#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <random>
#include <vector>

#include "monodromy/exactpoly.hpp"

namespace monodromy::testing {

inline constexpr std::uint64_t kSeed = 0x5eed'2024'cafeULL;

inline Rational random_rational(std::mt19937_64& rng, int range = 9, int max_den = 4) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Integer random_integer(std::mt19937_64& rng, int range = 9) {
  return std::uniform_int_distribution<int>(-range, range)(rng);
}

/// Degree drawn from [-1, max_degree]; -1 gives the zero polynomial.
inline Poly random_poly(std::mt19937_64& rng, int max_degree = 5, bool integral = false) {
  const int degree = std::uniform_int_distribution<int>(-1, max_degree)(rng);
  std::vector<Rational> coeffs;
  for (int i = 0; i <= degree; ++i) {
    coeffs.push_back(integral ? Rational(random_integer(rng)) : random_rational(rng));
  }
  return Poly(std::move(coeffs));
}

inline Poly random_nonzero_poly(std::mt19937_64& rng, int max_degree = 4, bool integral = false) {
  for (;;) {
    Poly p = random_poly(rng, max_degree, integral);
    if (!p.is_zero()) return p;
  }
}

/// Coefficients listed from the highest degree down.
inline Poly descending(std::initializer_list<long> coeffs) {
  std::vector<Rational> asc;
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) asc.emplace_back(*it);
  return Poly(std::move(asc));
}

/// Partition numbers p(0..n) by the standard part-size recurrence.
inline std::vector<std::uint64_t> partition_counts(int n) {
  std::vector<std::uint64_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part) {
    for (int total = part; total <= n; ++total) p[total] += p[total - part];
  }
  return p;
}

/// Number of types of 0..n: coefficient of x^n in prod_i sum_m p(m) x^{i m}.
inline std::vector<std::uint64_t> type_counts(int n) {
  const auto p = partition_counts(n);
  std::vector<std::uint64_t> t(static_cast<std::size_t>(n) + 1, 0);
  t[0] = 1;
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(t.size(), 0);
    for (int total = 0; total <= n; ++total) {
      for (int m = 0; total + i * m <= n; ++m) next[total + i * m] += t[total] * p[m];
    }
    t = std::move(next);
  }
  return t;
}

}  // namespace monodromy::testing
