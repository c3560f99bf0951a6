#include <gtest/gtest.h>

#include <random>

#include "monodromy/engine.hpp"
#include "monodromy/errors.hpp"
#include "monodromy/groupdiv.hpp"
#include "support.hpp"

namespace monodromy {
namespace {

using Id = FiniteGroupTable::Id;

FiniteGroupTable group_of(std::initializer_list<const char*> gens, int degree) {
  std::vector<Permutation> perms;
  for (const char* g : gens) perms.push_back(Permutation::parse(g, degree));
  return FiniteGroupTable::generate(perms);
}

Id id_of(const FiniteGroupTable& g, const char* cycles, int degree) {
  return g.find(Permutation::parse(cycles, degree)).value();
}

std::vector<std::pair<std::string, FiniteGroupTable>> corpus_groups() {
  std::vector<std::pair<std::string, FiniteGroupTable>> out;
  for (const auto& c : parse_corpus(default_corpus_text())) {
    out.emplace_back(c.name, FiniteGroupTable::generate(c.generators));
  }
  return out;
}

// Naive reference: scan all of G^k.
std::uint64_t naive_hom_count(const FiniteGroupTable& g, int k, const PrimeSet& s) {
  const auto n = static_cast<Id>(g.order());
  std::vector<Id> allowed;
  for (Id x = 0; x < n; ++x) {
    std::uint64_t order = 1;
    for (Id y = x; y != g.identity(); y = g.product(y, x)) ++order;
    if (s.coprime_to(order)) allowed.push_back(x);
  }
  std::uint64_t count = 0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    bool ok = true;
    for (int a = 0; a < k && ok; ++a) {
      for (int b = a + 1; b < k && ok; ++b) ok = g.commute(allowed[idx[a]], allowed[idx[b]]);
    }
    if (ok) ++count;
    int pos = k - 1;
    while (pos >= 0 && ++idx[pos] == allowed.size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return count;
}

TEST(Permutation, ParseAndPrint) {
  const Permutation a = Permutation::parse("(1 2 3)", 4);
  EXPECT_EQ(a, Permutation::parse("(1,2,3)", 4));
  EXPECT_EQ(a.images(), (std::vector<std::uint16_t>{1, 2, 0, 3}));
  EXPECT_EQ(a.to_string(), "(1,2,3)");
  EXPECT_EQ(Permutation::parse("()", 3), Permutation::identity(3));
  EXPECT_EQ(Permutation::identity(3).to_string(), "()");
  EXPECT_EQ(Permutation::parse("(1,2)(3,4)", 4).to_string(), "(1,2)(3,4)");
  EXPECT_THROW(Permutation::parse("(1 9)", 3), InputError);
  EXPECT_THROW(Permutation::parse("(1 2 1)", 3), InputError);
  EXPECT_THROW(Permutation::parse("1 2", 3), InputError);
  EXPECT_THROW(Permutation(std::vector<std::uint16_t>{0, 0}), InputError);
}

TEST(Permutation, CompositionAppliesRightFirst) {
  const Permutation a = Permutation::parse("(1,2)", 3);
  const Permutation b = Permutation::parse("(2,3)", 3);
  const Permutation ab = a * b;  // 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 1 -> 2
  EXPECT_EQ(ab, Permutation::parse("(1,2,3)", 3));
  EXPECT_EQ(ab * ab.inverse(), Permutation::identity(3));
}

TEST(GroupGenerate, Orders) {
  EXPECT_EQ(group_of({"(1 2)", "(1 2 3)"}, 3).order(), 6U);
  EXPECT_EQ(group_of({"(1 2 3 4)"}, 4).order(), 4U);
  EXPECT_EQ(FiniteGroupTable::generate(gl_generators_as_permutations(FiniteField::for_order(3), 2)).order(), 48U);
  EXPECT_EQ(FiniteGroupTable::generate(gl_generators_as_permutations(FiniteField::for_order(2), 2)).order(), 6U);
  EXPECT_EQ(FiniteGroupTable::generate(gl_generators_as_permutations(FiniteField::for_order(2), 3)).order(), 168U);
  EXPECT_EQ(FiniteGroupTable::generate(gl_generators_as_permutations(FiniteField::for_order(4), 2)).order(), 180U);
  EXPECT_EQ(FiniteGroupTable::generate(std::vector<Permutation>{}).order(), 1U);
}

TEST(GroupGenerate, BreadthFirstAndDeterministic) {
  const auto g = group_of({"(1 2)", "(1 2 3)"}, 3);
  EXPECT_EQ(g.element(g.identity()), Permutation::identity(3));
  EXPECT_EQ(g.element(1), Permutation::parse("(1 2)", 3));
  EXPECT_EQ(g.element(2), Permutation::parse("(1 2 3)", 3));
  const auto h = group_of({"(1 2)", "(1 2 3)"}, 3);
  for (Id x = 0; x < g.order(); ++x) EXPECT_EQ(g.element(x), h.element(x));
}

TEST(GroupGenerate, ClosureBudget) {
  EXPECT_THROW(group_of({"(1 2)", "(1 2 3 4 5 6 7 8)"}, 8), ClosureBudgetExceeded);  // S8
  std::vector<Permutation> s7{Permutation::parse("(1 2)", 7), Permutation::parse("(1 2 3 4 5 6 7)", 7)};
  EXPECT_EQ(FiniteGroupTable::generate(s7).order(), 5040U);
  EXPECT_THROW(FiniteGroupTable::generate(s7, 100), ClosureBudgetExceeded);
}

TEST(GroupTable, ClosedAssociativeWithInverses) {
  std::mt19937_64 rng(testing::kSeed);
  for (const auto& [name, g] : corpus_groups()) {
    SCOPED_TRACE(name);
    std::uniform_int_distribution<Id> pick(0, static_cast<Id>(g.order() - 1));
    for (Id a = 0; a < g.order(); ++a) {
      ASSERT_EQ(g.product(a, g.inverse(a)), g.identity());
      ASSERT_EQ(g.product(g.identity(), a), a);
      for (Id b = 0; b < g.order(); ++b) {
        ASSERT_EQ(g.element(g.product(a, b)), g.element(a) * g.element(b));
      }
    }
    for (int trial = 0; trial < 200; ++trial) {
      const Id a = pick(rng), b = pick(rng), c = pick(rng);
      ASSERT_EQ(g.product(g.product(a, b), c), g.product(a, g.product(b, c)));
    }
  }
}

TEST(GroupTable, ElementOrderMatchesRepeatedMultiplication) {
  for (const auto& [name, g] : corpus_groups()) {
    for (Id x = 0; x < g.order(); ++x) {
      std::uint64_t order = 1;
      for (Id y = x; y != g.identity(); y = g.product(y, x)) ++order;
      ASSERT_EQ(g.element_order(x), order) << name;
    }
  }
}

TEST(GroupTable, QuaternionHasOneInvolution) {
  const auto q8 = group_of({"(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"}, 8);
  ASSERT_EQ(q8.order(), 8U);
  int involutions = 0;
  for (Id x = 0; x < q8.order(); ++x) involutions += q8.element_order(x) == 2 ? 1 : 0;
  EXPECT_EQ(involutions, 1);
}

TEST(Primes, Helpers) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(valuation(Integer(48), 2), 4);
  EXPECT_EQ(valuation(Integer(-256), 2), 8);
  EXPECT_THROW(PrimeSet({4}), InputError);
  EXPECT_EQ(PrimeSet({3, 2}).to_string(), "{2,3}");
  EXPECT_TRUE(PrimeSet({2}).coprime_to(9));
  EXPECT_FALSE(PrimeSet({2, 3}).coprime_to(6));
}

TEST(Frobenius, Examples) {
  const auto s3 = group_of({"(1 2)", "(1 2 3)"}, 3);
  const auto f2 = frobenius_count(s3, 2);
  EXPECT_EQ(f2.count, 4U);
  EXPECT_TRUE(f2.divisible);
  EXPECT_TRUE(f2.applicable);
  EXPECT_EQ(frobenius_count(s3, 3).count, 3U);
  const auto f4 = frobenius_count(s3, 4);
  EXPECT_FALSE(f4.applicable);
  for (const auto& [name, g] : corpus_groups()) {
    EXPECT_EQ(frobenius_count(g, g.order()).count, g.order()) << name;
  }
  EXPECT_THROW(frobenius_count(s3, 0), InputError);
}

TEST(Frobenius, EveryDivisorOverCorpus) {
  for (const auto& [name, g] : corpus_groups()) {
    for (std::uint64_t n = 1; n <= g.order(); ++n) {
      if (g.order() % n == 0) ASSERT_TRUE(frobenius_count(g, n).divisible) << name << " n=" << n;
    }
  }
}

TEST(Coset, Examples) {
  const auto s3 = group_of({"(1 2)", "(1 2 3)"}, 3);
  const std::vector<Id> h3{id_of(s3, "(1 2 3)", 3)};
  const auto r1 = coset_p_power_count(s3, h3, id_of(s3, "(1 2)", 3), 2);
  EXPECT_EQ(r1.p_part, 1U);
  EXPECT_EQ(r1.count, 3U);
  EXPECT_TRUE(r1.divisible);

  const auto s4 = group_of({"(1 2)", "(1 2 3 4)"}, 4);
  const std::vector<Id> klein{id_of(s4, "(1 2)(3 4)", 4), id_of(s4, "(1 3)(2 4)", 4)};
  const auto r2 = coset_p_power_count(s4, klein, s4.identity(), 2);
  EXPECT_EQ(r2.count, 4U);
  EXPECT_EQ(r2.p_part, 4U);
  EXPECT_TRUE(r2.divisible);

  // H (1 2) = {(1 2), (3 4), (1 3 2 4), (1 4 2 3)}: all of 2-power order.
  const auto r3 = coset_p_power_count(s4, klein, id_of(s4, "(1 2)", 4), 2);
  EXPECT_EQ(r3.count, 4U);
  EXPECT_TRUE(r3.divisible);
}

TEST(Coset, Preconditions) {
  const auto s3 = group_of({"(1 2)", "(1 2 3)"}, 3);
  const std::vector<Id> h2{id_of(s3, "(1 2)", 3)};
  EXPECT_THROW(coset_p_power_count(s3, h2, id_of(s3, "(1 2 3)", 3), 3), PreconditionViolated);  // not normalizing
  EXPECT_THROW(coset_p_power_count(s3, h2, id_of(s3, "(1 2 3)", 3), 2), PreconditionViolated);  // wrong order
  EXPECT_THROW(coset_p_power_count(s3, h2, s3.identity(), 4), PreconditionViolated);            // not prime
}

TEST(Coset, EveryEnumerableTripleOverCorpus) {
  std::size_t total = 0;
  for (const auto& [name, g] : corpus_groups()) {
    const auto triples = enumerate_coset_triples(g);
    ASSERT_FALSE(triples.empty()) << name;
    for (const auto& t : triples) {
      ASSERT_TRUE(coset_p_power_count(g, t.h_generators, t.x, t.p).divisible) << name;
    }
    total += triples.size();
  }
  EXPECT_GT(total, 1000U);
}

TEST(HomCount, Examples) {
  const auto s3 = group_of({"(1 2)", "(1 2 3)"}, 3);
  EXPECT_EQ(hom_count_profinite_abelian(s3, 1, PrimeSet({2})), 3);
  EXPECT_EQ(hom_count_profinite_abelian(s3, 2, PrimeSet({2})), 9);
  for (const auto& [name, g] : corpus_groups()) {
    EXPECT_EQ(hom_count_profinite_abelian(g, 1, PrimeSet()), static_cast<unsigned long>(g.order())) << name;
  }
  for (int n : {2, 5, 6, 12}) {
    std::string cycle = "(";
    for (int i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? "," : ")");
    const auto cn = FiniteGroupTable::generate(std::vector<Permutation>{Permutation::parse(cycle, n)});
    for (int k = 1; k <= 3; ++k) {
      Integer nk = 1;
      for (int i = 0; i < k; ++i) nk *= n;
      ASSERT_EQ(hom_count_profinite_abelian(cn, k, PrimeSet()), nk) << "C" << n << " k=" << k;
    }
  }
}

TEST(HomCount, MatchesNaiveEnumeration) {
  const std::vector<std::set<int>> sets{{}, {2}, {3}, {2, 3}};
  for (const auto& [name, g] : corpus_groups()) {
    for (int k = 1; k <= 3; ++k) {
      if (k == 3 && g.order() > 24) continue;
      for (const auto& s : sets) {
        const PrimeSet ps(s);
        ASSERT_EQ(hom_count_profinite_abelian(g, k, ps), static_cast<unsigned long>(naive_hom_count(g, k, ps)))
            << name << " k=" << k << " S=" << ps.to_string();
      }
    }
  }
}

TEST(HomCount, Budget) {
  const auto s3 = group_of({"(1 2)", "(1 2 3)"}, 3);
  EXPECT_THROW(hom_count_profinite_abelian(s3, 4, PrimeSet()), BudgetExceeded);
  HomLimits lifted;
  lifted.override_budget = true;
  EXPECT_EQ(hom_count_profinite_abelian(s3, 4, PrimeSet({2}), lifted), 81);
  EXPECT_THROW(hom_count_profinite_abelian(s3, 0, PrimeSet()), InvalidArity);
  const auto s7 = group_of({"(1 2)", "(1 2 3 4 5 6 7)"}, 7);
  EXPECT_THROW(hom_count_profinite_abelian(s7, 1, PrimeSet()), BudgetExceeded);
}

TEST(HomCount, MatrixGroupsMatchCountingPolynomial) {
  CountingEngine e;
  for (int q : {2, 3}) {
    const auto f = FiniteField::for_order(q);
    const auto g = FiniteGroupTable::generate(gl_generators_as_permutations(f, 2));
    for (int k = 1; k <= 3; ++k) {
      ASSERT_EQ(Rational(hom_count_profinite_abelian(g, k, PrimeSet({f.characteristic()}))),
                e.count_semisimple_tuples(2, k).poly.eval(q))
          << "q=" << q << " k=" << k;
    }
  }
}

TEST(Divisibility, Examples) {
  const auto s3 = group_of({"(1 2)", "(1 2 3)"}, 3);
  const auto r = divisibility_report(s3, 2, PrimeSet({2}));
  EXPECT_EQ(r.hom_count, 9);
  EXPECT_EQ(r.quotient, Rational(3, 2));
  ASSERT_EQ(r.checks.size(), 1U);
  EXPECT_EQ(r.checks[0].prime, 3);
  EXPECT_EQ(r.checks[0].count_valuation, 2);
  EXPECT_EQ(r.checks[0].order_valuation, 1);
  EXPECT_TRUE(r.passed);

  const auto gl23 = FiniteGroupTable::generate(gl_generators_as_permutations(FiniteField::for_order(3), 2));
  const auto r2 = divisibility_report(gl23, 2, PrimeSet({3}));
  EXPECT_EQ(r2.hom_count, 256);
  ASSERT_EQ(r2.checks.size(), 1U);
  EXPECT_EQ(r2.checks[0].count_valuation, 8);
  EXPECT_EQ(r2.checks[0].order_valuation, 4);
  EXPECT_TRUE(r2.passed);

  const Json j = divisibility_to_json(r);
  EXPECT_EQ(j.at("quotient"), Json::array({3, 2}));
  EXPECT_EQ(j.at("passed"), true);
}

TEST(Divisibility, CorpusPasses) {
  const std::vector<std::set<int>> sets{{}, {2}, {3}, {2, 3}};
  for (const auto& [name, g] : corpus_groups()) {
    for (int k = 1; k <= 3; ++k) {
      for (const auto& s : sets) {
        const auto r = divisibility_report(g, k, PrimeSet(s));
        ASSERT_TRUE(r.passed) << name << " k=" << k;
        for (const auto& c : r.checks) ASSERT_FALSE(PrimeSet(s).contains(c.prime));
      }
    }
  }
}

TEST(Corpus, DefaultContents) {
  const auto corpus = parse_corpus(default_corpus_text());
  std::vector<std::string> names;
  for (const auto& c : corpus) names.push_back(c.name);
  for (const char* required : {"S3", "S4", "A4", "D4", "Q8", "C12", "GL2F3", "C6", "C2", "C4", "C8", "C9"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), required), names.end()) << required;
  }
  const std::map<std::string, std::size_t> orders{{"S3", 6},  {"S4", 24}, {"A4", 12},    {"D4", 8},
                                                  {"Q8", 8},  {"C12", 12}, {"GL2F3", 48}, {"C6", 6}};
  for (const auto& c : corpus) {
    if (auto it = orders.find(c.name); it != orders.end()) {
      EXPECT_EQ(FiniteGroupTable::generate(c.generators).order(), it->second) << c.name;
    }
  }
}

TEST(Corpus, Parsing) {
  const auto parsed = parse_corpus("# comment\n\nV4 4 (1,2)(3,4) (1,3)(2,4)\n");
  ASSERT_EQ(parsed.size(), 1U);
  EXPECT_EQ(parsed[0].name, "V4");
  EXPECT_EQ(parsed[0].degree, 4);
  EXPECT_EQ(parsed[0].generators.size(), 2U);
  EXPECT_THROW(parse_corpus("X\n"), InputError);
  EXPECT_THROW(parse_corpus("X 3\n"), InputError);
  EXPECT_THROW(parse_corpus("X 3 (1,4)\n"), InputError);
  EXPECT_THROW(load_corpus("/nonexistent/corpus.txt"), InputError);
}

}  // namespace
}  // namespace monodromy
