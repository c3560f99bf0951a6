#include "monodromy/engine.hpp"

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monodromy/errors.hpp"
#include "monodromy/typecomb.hpp"

namespace monodromy {

std::string_view mode_name(CountMode mode) {
  switch (mode) {
    case CountMode::kSemisimple:
      return "ss";
    case CountMode::kMixed:
      return "mixed";
    case CountMode::kConjugacy:
      return "conj";
  }
  return "?";
}

CountMode mode_from_name(std::string_view name) {
  if (name == "ss") return CountMode::kSemisimple;
  if (name == "mixed") return CountMode::kMixed;
  if (name == "conj") return CountMode::kConjugacy;
  throw InputError("unknown mode '" + std::string(name) + "' (expected ss, mixed or conj)");
}

Poly gl_order(int n) {
  if (n < 1) throw InputError("gl_order requires n >= 1");
  const auto size = static_cast<std::size_t>(n);
  Poly result = Poly::constant(1);
  for (std::size_t j = 0; j < size; ++j) result *= Poly::monomial(1, size) - Poly::monomial(1, j);
  return result;
}

// ---------------------------------------------------------------- weights

RationalFunction CountingEngine::ss_weight(int level, int r, int m) {
  return weight({CountMode::kSemisimple, level, r, m});
}

RationalFunction CountingEngine::mixed_weight(int level, int r, int m) {
  return weight({CountMode::kMixed, level, r, m});
}

RationalFunction CountingEngine::weight(const CountKey& key) {
  if (key.level < 0 || key.r < 1 || key.m < 1) {
    throw InputError("weight key out of range: level=" + std::to_string(key.level) + " r=" + std::to_string(key.r) +
                     " m=" + std::to_string(key.m));
  }
  if (memoize_) {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  // Computed outside the lock; a concurrent duplicate produces the same value
  // and the first insertion wins.
  RationalFunction value = compute(key);
  if (memoize_) {
    std::lock_guard lock(mutex_);
    memo_.try_emplace(key, value);
  }
  return value;
}

RationalFunction CountingEngine::compute(const CountKey& key) {
  const auto m = static_cast<unsigned>(key.m);
  if (key.level == 0) {
    if (key.mode == CountMode::kSemisimple) {
      return RationalFunction(Poly::constant(1), gl_order(key.r).compose_monomial(m));
    }
    // (q^m - 1) q^{m(r-1)}
    Poly leaf = Poly::monomial(1, m) - Poly::constant(1);
    return RationalFunction(leaf.shifted(static_cast<std::size_t>(key.m) * static_cast<std::size_t>(key.r - 1)));
  }

  RationalFunction total;
  for (const auto& type : enumerate_types(key.r)) {
    RationalFunction term(psi(type).compose_monomial(m));
    for (const auto& [degree, mult] : type_pairs(type)) {
      term *= weight({key.mode, key.level - 1, mult, key.m * degree});
      if (term.is_zero()) break;
    }
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------- counts

CountingPolynomial CountingEngine::certify(const Poly& prefactor, const RationalFunction& weight, int n, int k,
                                           CountMode mode) {
  Poly value;
  try {
    value = divexact(prefactor * weight.numerator(), weight.denominator());
  } catch (const NotDivisible&) {
    throw IntegralityViolation("count for n=" + std::to_string(n) + " k=" + std::to_string(k) + " mode=" +
                               std::string(mode_name(mode)) + " is not a polynomial: " + weight.to_string());
  }
  if (!value.is_integral()) {
    throw IntegralityViolation("count for n=" + std::to_string(n) + " k=" + std::to_string(k) + " mode=" +
                               std::string(mode_name(mode)) + " has non-integer coefficients: " + value.to_string());
  }
  return {std::move(value), n, k, mode};
}

CountingPolynomial CountingEngine::count_semisimple_tuples(int n, int k) {
  if (n < 1) throw InputError("n must be >= 1");
  if (k < 0) throw InvalidArity("k must be >= 0");
  if (k == 0) return {Poly::constant(1), n, 0, CountMode::kSemisimple};
  return certify(gl_order(n), ss_weight(k, n, 1), n, k, CountMode::kSemisimple);
}

CountingPolynomial CountingEngine::count_mixed_tuples(int n, int k) {
  if (n < 1) throw InputError("n must be >= 1");
  if (k < 2) throw InvalidArity("mixed tuples need k >= 2 (use gl_order for a single free element)");
  return certify(gl_order(n), mixed_weight(k - 2, n, 1), n, k, CountMode::kMixed);
}

CountingPolynomial CountingEngine::count_conjugacy_classes(int n, int k) {
  if (n < 1) throw InputError("n must be >= 1");
  if (k < 1) throw InvalidArity("conjugacy-class counts need k >= 1");
  return certify(Poly::constant(1), mixed_weight(k - 1, n, 1), n, k, CountMode::kConjugacy);
}

CountingPolynomial CountingEngine::hom_count(int n, int g, int prank) {
  if (g < 1) throw InputError("g must be >= 1");
  switch (prank) {
    case 0:
      return count_semisimple_tuples(n, 2 * g);
    case 1:
      return count_mixed_tuples(n, 2 * g);
    default:
      throw InputError("only p-rank 0 and 1 are supported");
  }
}

// ---------------------------------------------------------------- checks

DegreeReport check_degree_monic(const CountingPolynomial& p) {
  if (p.mode == CountMode::kConjugacy) throw InputError("degree checks apply to tuple counts, not class counts");
  if (p.poly.is_zero()) throw DegreeViolation("counting polynomial is zero");

  DegreeReport report;
  report.degree = p.poly.degree().value();
  report.lower_bound = static_cast<std::int64_t>(p.n) * p.n + static_cast<std::int64_t>(p.k - 1) * p.n;
  report.meets_bound = report.degree >= report.lower_bound;
  report.monic = p.poly.is_monic();
  report.bound_asserted = p.k >= 2 && p.k % 2 == 0;
  report.equality_asserted = p.k == 2;

  const std::string what = "n=" + std::to_string(p.n) + " k=" + std::to_string(p.k);
  if (report.bound_asserted && !report.meets_bound) {
    throw DegreeViolation(what + ": degree " + std::to_string(report.degree) + " below " +
                          std::to_string(report.lower_bound));
  }
  if (report.equality_asserted) {
    if (report.degree != report.lower_bound) {
      throw DegreeViolation(what + ": degree " + std::to_string(report.degree) + " != " +
                            std::to_string(report.lower_bound));
    }
    if (!report.monic) throw MonicViolation(what + ": leading coefficient " + p.poly.leading().get_str());
  }
  return report;
}

LaurentPoly check_laurent_quotient(const CountingPolynomial& p) {
  if (p.mode == CountMode::kConjugacy) throw InputError("Laurent quotient applies to tuple counts, not class counts");
  if (p.k < 1) throw InvalidArity("Laurent quotient needs k >= 1");
  LaurentPoly quotient = to_laurent(p.poly, gl_order(p.n));
  if (!quotient.is_integral()) {
    throw NonIntegerCoefficient("P/|GL_" + std::to_string(p.n) + "| = " + quotient.to_string() +
                                " has non-integer coefficients");
  }
  return quotient;
}

// ---------------------------------------------------------------- memo

std::size_t CountingEngine::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

void CountingEngine::clear_memo() {
  std::lock_guard lock(mutex_);
  memo_.clear();
}

Json CountingEngine::memo_to_json() const {
  std::lock_guard lock(mutex_);
  Json entries = Json::array();
  for (const auto& [key, value] : memo_) {
    entries.push_back({{"mode", std::string(mode_name(key.mode))},
                       {"level", key.level},
                       {"r", key.r},
                       {"m", key.m},
                       {"value", rational_function_to_json(value)}});
  }
  return Json{{"entries", entries}};
}

void CountingEngine::memo_from_json(const Json& j) {
  std::vector<std::pair<CountKey, RationalFunction>> parsed;
  for (const auto& e : j.at("entries")) {
    const CountMode mode = mode_from_name(e.at("mode").get<std::string>());
    if (mode == CountMode::kConjugacy) throw InputError("cache entries are ss or mixed weights");
    CountKey key{mode, e.at("level").get<int>(), e.at("r").get<int>(), e.at("m").get<int>()};
    parsed.emplace_back(key, rational_function_from_json(e.at("value")));
  }
  std::lock_guard lock(mutex_);
  for (auto& [key, value] : parsed) memo_.try_emplace(key, std::move(value));
}

void CountingEngine::load_cache(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw InputError("cache file " + path.string() + " is not valid JSON: " + e.what());
  }
  memo_from_json(j);
}

void CountingEngine::save_cache(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write cache file " + path.string());
  out << memo_to_json().dump() << '\n';
}

}  // namespace monodromy
