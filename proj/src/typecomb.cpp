#include "monodromy/typecomb.hpp"

#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace monodromy {

namespace {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

void partitions_into(int remaining, int max_part, std::vector<int>& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition{prefix});
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_into(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

bool advance(std::vector<std::size_t>& digit, const std::vector<std::vector<Partition>>& choices) {
  for (std::size_t pos = digit.size(); pos-- > 0;) {
    if (++digit[pos] < choices[pos].size()) return true;
    digit[pos] = 0;
  }
  return false;
}

}  // namespace

int Partition::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::vector<std::pair<int, int>> Partition::multiplicities() const {
  std::vector<std::pair<int, int>> out;
  for (int part : parts) {
    if (!out.empty() && out.back().first == part) {
      ++out.back().second;
    } else {
      out.emplace_back(part, 1);
    }
  }
  return out;
}

void TypeOfN::validate() const {
  for (std::size_t i = 1; i < lambda.parts.size(); ++i) {
    if (lambda.parts[i] > lambda.parts[i - 1]) throw std::invalid_argument("lambda parts must be descending");
  }
  const auto mults = lambda.multiplicities();
  if (mults.size() != refinements.size()) throw std::invalid_argument("one refinement per distinct part required");
  for (const auto& [value, mult] : mults) {
    if (value <= 0) throw std::invalid_argument("lambda parts must be positive");
    auto it = refinements.find(value);
    if (it == refinements.end()) throw std::invalid_argument("missing refinement for part " + std::to_string(value));
    if (it->second.weight() != mult) {
      throw std::invalid_argument("refinement of part " + std::to_string(value) + " must partition " +
                                  std::to_string(mult));
    }
  }
}

std::string TypeOfN::to_string() const {
  std::ostringstream os;
  auto write = [&os](const Partition& p) {
    os << "(";
    for (std::size_t i = 0; i < p.parts.size(); ++i) os << (i ? " " : "") << p.parts[i];
    os << ")";
  };
  os << "lambda=";
  write(lambda);
  for (auto it = refinements.rbegin(); it != refinements.rend(); ++it) {
    os << " lambda^" << it->first << "=";
    write(it->second);
  }
  return os.str();
}

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_partitions requires n >= 0");
  std::vector<Partition> out;
  std::vector<int> prefix;
  partitions_into(n, n, prefix, out);
  return out;
}

std::vector<TypeOfN> enumerate_types(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_types requires n >= 1");
  std::vector<TypeOfN> out;
  for (const auto& lambda : enumerate_partitions(n)) {
    const auto mults = lambda.multiplicities();
    std::vector<std::vector<Partition>> choices;
    choices.reserve(mults.size());
    for (const auto& [value, mult] : mults) choices.push_back(enumerate_partitions(mult));

    // Odometer over the refinement choices; the last digit moves fastest.
    std::vector<std::size_t> digit(mults.size(), 0);
    do {
      TypeOfN t{lambda, {}};
      for (std::size_t d = 0; d < mults.size(); ++d) t.refinements.emplace(mults[d].first, choices[d][digit[d]]);
      out.push_back(std::move(t));
    } while (advance(digit, choices));
  }
  return out;
}

std::vector<TypePair> type_pairs(const TypeOfN& t) {
  std::vector<TypePair> out;
  for (auto it = t.refinements.rbegin(); it != t.refinements.rend(); ++it) {
    for (int r : it->second.parts) out.push_back({it->first, r});
  }
  return out;
}

Poly count_irreducibles(int i, bool exclude_t) {
  if (i < 1) throw std::invalid_argument("count_irreducibles requires i >= 1");
  Poly sum;
  for (int d = 1; d <= i; ++d) {
    if (i % d != 0) continue;
    const int mu = mobius(d);
    if (mu != 0) sum += Poly::monomial(mu, static_cast<std::size_t>(i / d));
  }
  sum /= Rational(i);
  if (exclude_t && i == 1) sum -= Poly::constant(1);
  return sum;
}

Integer aut_factor(const Partition& p) {
  Integer result = 1;
  for (const auto& [value, mult] : p.multiplicities()) {
    for (int f = 2; f <= mult; ++f) result *= f;
  }
  return result;
}

Poly psi(const TypeOfN& t) {
  Poly result = Poly::constant(1);
  for (const auto& [degree, refinement] : t.refinements) {
    const Poly available = count_irreducibles(degree, true);
    // Choose refinement.length() distinct irreducibles, one per multiplicity,
    // then forget the order among equal multiplicities.
    Poly falling = Poly::constant(1);
    for (int j = 0; j < refinement.length(); ++j) falling *= available - Poly::constant(j);
    falling /= Rational(aut_factor(refinement));
    result *= falling;
  }
  return result;
}

Json partition_to_json(const Partition& p) { return Json(p.parts); }

Json type_to_json(const TypeOfN& t) {
  Json refinements = Json::object();
  for (const auto& [value, part] : t.refinements) refinements[std::to_string(value)] = partition_to_json(part);
  return Json{{"lambda", partition_to_json(t.lambda)}, {"refinements", refinements}};
}

TypeOfN type_from_json(const Json& j) {
  TypeOfN t;
  t.lambda.parts = j.at("lambda").get<std::vector<int>>();
  for (const auto& [key, value] : j.at("refinements").items()) {
    t.refinements.emplace(std::stoi(key), Partition{value.get<std::vector<int>>()});
  }
  t.validate();
  return t;
}

}  // namespace monodromy
