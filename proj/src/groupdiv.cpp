#include "monodromy/groupdiv.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "monodromy/errors.hpp"

namespace monodromy {

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::uint16_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw InputError("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int degree) {
  if (degree < 0 || degree > 65535) throw InputError("permutation degree out of range");
  std::vector<std::uint16_t> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), std::uint16_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view cycles, int degree) {
  Permutation result = identity(degree);
  std::vector<std::uint16_t>& images = result.images_;
  std::vector<bool> used(images.size(), false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < cycles.size() && (cycles[pos] == ' ' || cycles[pos] == '\t')) ++pos;
  };
  skip_space();
  while (pos < cycles.size()) {
    if (cycles[pos] != '(') throw InputError("expected '(' in \"" + std::string(cycles) + "\"");
    ++pos;
    std::vector<std::uint16_t> cycle;
    for (;;) {
      skip_space();
      if (pos < cycles.size() && cycles[pos] == ')') {
        ++pos;
        break;
      }
      if (pos < cycles.size() && cycles[pos] == ',') {
        ++pos;
        continue;
      }
      std::size_t end = pos;
      while (end < cycles.size() && cycles[end] >= '0' && cycles[end] <= '9') ++end;
      if (end == pos) throw InputError("malformed cycle in \"" + std::string(cycles) + "\"");
      const long point = std::stol(std::string(cycles.substr(pos, end - pos)));
      if (point < 1 || point > degree) {
        throw InputError("point " + std::to_string(point) + " outside 1.." + std::to_string(degree));
      }
      const auto p = static_cast<std::uint16_t>(point - 1);
      if (used[p]) throw InputError("point " + std::to_string(point) + " repeated in \"" + std::string(cycles) + "\"");
      used[p] = true;
      cycle.push_back(p);
      pos = end;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_space();
  }
  return result;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint16_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint16_t>(i);
  Permutation result;
  result.images_ = std::move(inv);
  return result;
}

std::string Permutation::to_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      if (x != start) out += ',';
      out += std::to_string(x + 1);
      seen[x] = true;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw InputError("permutations on different domains");
  Permutation result;
  result.images_.resize(a.images_.size());
  for (std::size_t x = 0; x < a.images_.size(); ++x) result.images_[x] = a.images_[b.images_[x]];
  return result;
}

// ---------------------------------------------------------------- group table

namespace {
constexpr std::size_t kMaxCayleyOrder = 2048;
}  // namespace

FiniteGroupTable FiniteGroupTable::generate(std::span<const Permutation> generators, std::size_t max_order) {
  const int degree = generators.empty() ? 0 : generators.front().degree();
  for (const auto& g : generators) {
    if (g.degree() != degree) throw InputError("generators act on different domains");
  }

  FiniteGroupTable g;
  auto add = [&](Permutation p) {
    const auto [it, inserted] = g.index_.try_emplace(p, static_cast<Id>(g.elements_.size()));
    if (!inserted) return;
    if (g.elements_.size() >= max_order) {
      throw ClosureBudgetExceeded("group closure exceeds " + std::to_string(max_order) + " elements");
    }
    g.elements_.push_back(std::move(p));
  };
  add(Permutation::identity(degree));
  for (std::size_t head = 0; head < g.elements_.size(); ++head) {
    for (const auto& s : generators) add(g.elements_[head] * s);
  }

  const std::size_t n = g.elements_.size();
  if (n <= kMaxCayleyOrder) {
    g.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) g.table_[a * n + b] = g.index_.at(g.elements_[a] * g.elements_[b]);
    }
  }
  g.inverses_.resize(n);
  for (std::size_t a = 0; a < n; ++a) g.inverses_[a] = g.index_.at(g.elements_[a].inverse());
  return g;
}

std::optional<FiniteGroupTable::Id> FiniteGroupTable::find(const Permutation& p) const {
  if (auto it = index_.find(p); it != index_.end()) return it->second;
  return std::nullopt;
}

FiniteGroupTable::Id FiniteGroupTable::product(Id a, Id b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return index_.at(elements_[a] * elements_[b]);
}

FiniteGroupTable::Id FiniteGroupTable::power(Id a, std::uint64_t e) const {
  Id result = identity();
  Id base = a;
  while (e != 0) {
    if (e & 1U) result = product(result, base);
    base = product(base, base);
    e >>= 1U;
  }
  return result;
}

std::uint64_t FiniteGroupTable::element_order(Id a) const {
  std::uint64_t order = elements_.size();
  for (auto p : prime_factors(order)) {
    while (order % p == 0 && power(a, order / p) == identity()) order /= p;
  }
  return order;
}

std::vector<FiniteGroupTable::Id> FiniteGroupTable::subgroup(std::span<const Id> generators) const {
  std::vector<bool> in(elements_.size(), false);
  std::vector<Id> members{identity()};
  in[identity()] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Id s : generators) {
      const Id next = product(members[head], s);
      if (!in[next]) {
        in[next] = true;
        members.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

// ---------------------------------------------------------------- primes

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

int valuation(const Integer& n, int p) {
  if (n == 0) throw InputError("valuation of zero");
  Integer m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p)) != 0) {
    m /= p;
    ++v;
  }
  return v;
}

PrimeSet::PrimeSet(std::set<int> primes) : primes_(std::move(primes)) {
  for (int p : primes_) {
    if (p < 0 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError(std::to_string(p) + " is not prime");
  }
}

bool PrimeSet::coprime_to(std::uint64_t value) const {
  return std::none_of(primes_.begin(), primes_.end(),
                      [&](int p) { return value % static_cast<std::uint64_t>(p) == 0; });
}

std::string PrimeSet::to_string() const {
  std::string out = "{";
  for (int p : primes_) {
    if (out.size() > 1) out += ',';
    out += std::to_string(p);
  }
  return out + "}";
}

// ---------------------------------------------------------------- Frobenius

namespace {

bool is_power_of(std::uint64_t value, std::uint64_t p) {
  while (value % p == 0) value /= p;
  return value == 1;
}

}  // namespace

FrobeniusResult frobenius_count(const FiniteGroupTable& g, std::uint64_t n) {
  if (n == 0) throw InputError("n must be positive");
  FrobeniusResult r;
  r.n = n;
  for (FiniteGroupTable::Id x = 0; x < g.order(); ++x) {
    if (g.power(x, n) == g.identity()) ++r.count;
  }
  r.applicable = g.order() % n == 0;
  r.divisible = r.count % n == 0;
  return r;
}

// ---------------------------------------------------------------- cosets

CosetResult coset_p_power_count(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Id> h_generators,
                                FiniteGroupTable::Id x, int p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw PreconditionViolated(std::to_string(p) + " is not prime");
  const auto up = static_cast<std::uint64_t>(p);
  if (x >= g.order()) throw PreconditionViolated("x is not a group element");
  for (auto h : h_generators) {
    if (h >= g.order()) throw PreconditionViolated("subgroup generator is not a group element");
  }
  if (!is_power_of(g.element_order(x), up)) {
    throw PreconditionViolated("x has order " + std::to_string(g.element_order(x)) + ", not a power of " +
                               std::to_string(p));
  }
  const auto h = g.subgroup(h_generators);
  std::vector<bool> in_h(g.order(), false);
  for (auto e : h) in_h[e] = true;
  const auto x_inv = g.inverse(x);
  for (auto gen : h_generators) {
    if (!in_h[g.product(g.product(x, gen), x_inv)]) throw PreconditionViolated("x does not normalize H");
  }

  CosetResult r;
  r.subgroup_order = h.size();
  for (std::uint64_t m = h.size(); m % up == 0; m /= up) r.p_part *= up;
  for (auto e : h) {
    if (is_power_of(g.element_order(g.product(e, x)), up)) ++r.count;
  }
  r.divisible = r.count % r.p_part == 0;
  return r;
}

std::vector<CosetTriple> enumerate_coset_triples(const FiniteGroupTable& g) {
  using Id = FiniteGroupTable::Id;
  const auto n = static_cast<Id>(g.order());

  // Distinct subgroups generated by one or two elements, first generating pair kept.
  std::map<std::vector<Id>, std::vector<Id>> subgroups;
  for (Id a = 0; a < n; ++a) {
    for (Id b = a; b < n; ++b) {
      std::vector<Id> gens = a == b ? std::vector<Id>{a} : std::vector<Id>{a, b};
      subgroups.try_emplace(g.subgroup(gens), std::move(gens));
    }
  }

  std::vector<std::uint64_t> orders(n);
  for (Id x = 0; x < n; ++x) orders[x] = g.element_order(x);

  std::vector<CosetTriple> triples;
  for (auto p : prime_factors(g.order())) {
    for (const auto& [members, gens] : subgroups) {
      std::vector<bool> in_h(n, false);
      for (auto e : members) in_h[e] = true;
      for (Id x = 0; x < n; ++x) {
        if (!is_power_of(orders[x], p)) continue;
        const Id x_inv = g.inverse(x);
        const bool normalizes = std::all_of(gens.begin(), gens.end(),
                                            [&](Id s) { return in_h[g.product(g.product(x, s), x_inv)]; });
        if (normalizes) triples.push_back({gens, x, static_cast<int>(p)});
      }
    }
  }
  return triples;
}

// ---------------------------------------------------------------- hom counts

namespace {

Integer count_commuting(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Id> candidates, int remaining) {
  if (remaining == 0) return 1;
  if (remaining == 1) return static_cast<unsigned long>(candidates.size());
  Integer total = 0;
  std::vector<FiniteGroupTable::Id> next;
  for (auto x : candidates) {
    next.clear();
    for (auto y : candidates) {
      if (g.commute(x, y)) next.push_back(y);
    }
    total += count_commuting(g, next, remaining - 1);
  }
  return total;
}

}  // namespace

Integer hom_count_profinite_abelian(const FiniteGroupTable& g, int k, const PrimeSet& s, const HomLimits& limits) {
  if (k < 1) throw InvalidArity("k must be >= 1");
  if (!limits.override_budget && (g.order() > limits.max_group_order || k > limits.max_k)) {
    throw BudgetExceeded("hom count limited to |G| <= " + std::to_string(limits.max_group_order) + " and k <= " +
                         std::to_string(limits.max_k) + " (|G| = " + std::to_string(g.order()) +
                         ", k = " + std::to_string(k) + ")");
  }
  std::vector<FiniteGroupTable::Id> allowed;
  for (FiniteGroupTable::Id x = 0; x < g.order(); ++x) {
    if (s.coprime_to(g.element_order(x))) allowed.push_back(x);
  }
  return count_commuting(g, allowed, k);
}

DivisibilityReport divisibility_report(const FiniteGroupTable& g, int k, const PrimeSet& s, const HomLimits& limits) {
  DivisibilityReport r;
  r.hom_count = hom_count_profinite_abelian(g, k, s, limits);
  r.group_order = g.order();
  r.quotient = Rational(r.hom_count, Integer(static_cast<unsigned long>(r.group_order)));
  r.quotient.canonicalize();
  r.passed = true;
  for (auto l : prime_factors(r.group_order)) {
    const int prime = static_cast<int>(l);
    if (s.contains(prime)) continue;
    ValuationCheck c{prime, valuation(r.hom_count, prime),
                     valuation(Integer(static_cast<unsigned long>(r.group_order)), prime), false};
    c.ok = c.count_valuation >= c.order_valuation;
    r.passed = r.passed && c.ok;
    r.checks.push_back(c);
  }
  return r;
}

// ---------------------------------------------------------------- JSON

Json frobenius_to_json(const FrobeniusResult& r) {
  return Json{{"n", r.n}, {"count", r.count}, {"applicable", r.applicable}, {"divisible", r.divisible}};
}

Json coset_to_json(const CosetResult& r) {
  return Json{{"count", r.count}, {"subgroupOrder", r.subgroup_order}, {"pPart", r.p_part}, {"divisible", r.divisible}};
}

Json divisibility_to_json(const DivisibilityReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"prime", c.prime}, {"countValuation", c.count_valuation}, {"orderValuation", c.order_valuation}, {"ok", c.ok}});
  }
  return Json{{"homCount", integer_to_json(r.hom_count)},
              {"groupOrder", r.group_order},
              {"quotient", {integer_to_json(r.quotient.get_num()), integer_to_json(r.quotient.get_den())}},
              {"checks", checks},
              {"passed", r.passed}};
}

// ---------------------------------------------------------------- matrix groups

Permutation matrix_as_permutation(const FiniteField& f, const FFMatrix& m) {
  const int n = m.size();
  const auto q = static_cast<std::uint64_t>(f.order());
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= q;
  if (count - 1 > 65535) throw UnsupportedField("too many nonzero vectors for a permutation representation");

  std::vector<std::uint16_t> images(count - 1);
  std::vector<FiniteField::Element> v(static_cast<std::size_t>(n));
  for (std::uint64_t code = 1; code < count; ++code) {
    std::uint64_t rest = code;
    for (int i = 0; i < n; ++i) {
      v[i] = static_cast<FiniteField::Element>(rest % q);
      rest /= q;
    }
    std::uint64_t image = 0;
    for (int i = n - 1; i >= 0; --i) {
      FiniteField::Element sum = 0;
      for (int j = 0; j < n; ++j) sum = f.add(sum, f.mul(m.at(i, j), v[j]));
      image = image * q + sum;
    }
    images[code - 1] = static_cast<std::uint16_t>(image - 1);
  }
  return Permutation(std::move(images));
}

std::vector<Permutation> gl_generators_as_permutations(const FiniteField& f, int n) {
  if (n < 1) throw InputError("n must be >= 1");
  std::vector<Permutation> gens;
  // Powers of x span F_q over F_p, so these transvections generate every root subgroup.
  std::vector<FiniteField::Element> basis;
  for (int j = 0, pj = 1; j < f.degree(); ++j, pj *= f.characteristic()) {
    basis.push_back(static_cast<FiniteField::Element>(pj));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (auto a : basis) {
        FFMatrix t = FFMatrix::identity(n);
        t.set(i, j, a);
        gens.push_back(matrix_as_permutation(f, t));
      }
    }
  }
  FFMatrix d = FFMatrix::identity(n);
  d.set(0, 0, f.primitive_element());
  gens.push_back(matrix_as_permutation(f, d));
  return gens;
}

// ---------------------------------------------------------------- corpus

std::vector<CorpusGroup> parse_corpus(std::string_view text) {
  std::vector<CorpusGroup> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name) || name.front() == '#') continue;
    CorpusGroup group;
    group.name = name;
    if (!(fields >> group.degree) || group.degree < 1) {
      throw InputError("corpus line " + std::to_string(line_no) + ": missing or invalid degree");
    }
    std::string gen;
    while (fields >> gen) group.generators.push_back(Permutation::parse(gen, group.degree));
    if (group.generators.empty()) throw InputError("corpus line " + std::to_string(line_no) + ": no generators");
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<CorpusGroup> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read corpus file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_corpus(buffer.str());
}

std::string_view default_corpus_text() {
  return R"(# name degree generators...
S3 3 (1,2) (1,2,3)
S4 4 (1,2) (1,2,3,4)
A4 4 (1,2,3) (1,2)(3,4)
D4 4 (1,2,3,4) (1,3)
Q8 8 (1,2,3,4)(5,6,7,8) (1,5,3,7)(2,8,4,6)
C12 12 (1,2,3,4,5,6,7,8,9,10,11,12)
GL2F3 8 (3,4,5)(6,8,7) (1,4,7)(2,8,5) (1,2)(4,5)(7,8)
C6 6 (1,2,3,4,5,6)
C2 2 (1,2)
C4 4 (1,2,3,4)
C8 8 (1,2,3,4,5,6,7,8)
C3 3 (1,2,3)
C9 9 (1,2,3,4,5,6,7,8,9)
C5 5 (1,2,3,4,5)
C7 7 (1,2,3,4,5,6,7)
)";
}

}  // namespace monodromy
