#include <gtest/gtest.h>

#include <set>

#include "monodromy/typecomb.hpp"
#include "support.hpp"

namespace monodromy {
namespace {

using testing::descending;

const Poly q = Poly::variable();
const Poly one = Poly::constant(1);

TypeOfN make_type(std::vector<int> lambda, std::map<int, std::vector<int>> refinements) {
  TypeOfN t;
  t.lambda.parts = std::move(lambda);
  for (auto& [i, parts] : refinements) t.refinements[i].parts = std::move(parts);
  t.validate();
  return t;
}

const TypeOfN type_a = make_type({2}, {{2, {1}}});
const TypeOfN type_b = make_type({1, 1}, {{1, {2}}});
const TypeOfN type_c = make_type({1, 1}, {{1, {1, 1}}});
const TypeOfN type_d = make_type({1}, {{1, {1}}});

TEST(Partitions, SmallCases) {
  const auto zero = enumerate_partitions(0);
  ASSERT_EQ(zero.size(), 1U);
  EXPECT_TRUE(zero[0].parts.empty());

  const auto four = enumerate_partitions(4);
  const std::vector<std::vector<int>> expected{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  ASSERT_EQ(four.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(four[i].parts, expected[i]);

  EXPECT_EQ(enumerate_partitions(10).size(), 42U);
}

TEST(Partitions, CountsMatchRecurrence) {
  const auto expected = testing::partition_counts(20);
  for (int n = 0; n <= 20; ++n) {
    const auto parts = enumerate_partitions(n);
    ASSERT_EQ(parts.size(), expected[n]) << "n=" << n;
    std::set<std::vector<int>> distinct;
    for (const auto& p : parts) {
      ASSERT_EQ(p.weight(), n);
      ASSERT_TRUE(std::is_sorted(p.parts.rbegin(), p.parts.rend()));
      ASSERT_TRUE(std::all_of(p.parts.begin(), p.parts.end(), [](int v) { return v > 0; }));
      distinct.insert(p.parts);
    }
    ASSERT_EQ(distinct.size(), parts.size());
    ASSERT_TRUE(std::is_sorted(parts.rbegin(), parts.rend()));  // reverse-lexicographic
  }
}

TEST(Partitions, Multiplicities) {
  const Partition p{{3, 3, 3, 3, 3, 1, 1}};
  const std::vector<std::pair<int, int>> expected{{3, 5}, {1, 2}};
  EXPECT_EQ(p.multiplicities(), expected);
}

TEST(Types, SmallCases) {
  const auto one_types = enumerate_types(1);
  ASSERT_EQ(one_types.size(), 1U);
  EXPECT_EQ(one_types[0], type_d);

  const auto two = enumerate_types(2);
  ASSERT_EQ(two.size(), 3U);
  EXPECT_EQ(std::set<TypeOfN>(two.begin(), two.end()), (std::set<TypeOfN>{type_a, type_b, type_c}));

  EXPECT_EQ(enumerate_types(3).size(), 5U);
}

TEST(Types, CountsMatchGeneratingFunction) {
  const auto expected = testing::type_counts(9);
  for (int n = 1; n <= 9; ++n) {
    const auto types = enumerate_types(n);
    ASSERT_EQ(types.size(), expected[n]) << "n=" << n;
    ASSERT_EQ(std::set<TypeOfN>(types.begin(), types.end()).size(), types.size());
    ASSERT_EQ(types, enumerate_types(n));
    for (const auto& t : types) {
      ASSERT_NO_THROW(t.validate());
      int total = 0;
      for (const auto& [i, r] : type_pairs(t)) total += i * r;
      ASSERT_EQ(total, n);
    }
  }
}

TEST(Types, ValidateRejectsMismatchedRefinements) {
  TypeOfN t;
  t.lambda.parts = {2, 1};
  t.refinements[2].parts = {1};
  EXPECT_THROW(t.validate(), std::invalid_argument);  // no refinement for 1
  t.refinements[1].parts = {2};
  EXPECT_THROW(t.validate(), std::invalid_argument);  // 1 occurs once, not twice
  t.refinements[1].parts = {1};
  EXPECT_NO_THROW(t.validate());
  t.refinements[3].parts = {1};
  EXPECT_THROW(t.validate(), std::invalid_argument);  // 3 is not a part
}

TEST(TypePairs, MultiplicityConvention) {
  const TypeOfN big = make_type({3, 3, 3, 3, 3, 1, 1}, {{3, {2, 2, 1}}, {1, {2}}});
  const std::vector<TypePair> expected{{3, 2}, {3, 2}, {3, 1}, {1, 2}};
  EXPECT_EQ(type_pairs(big), expected);
  EXPECT_EQ(type_pairs(type_b), (std::vector<TypePair>{{1, 2}}));
  EXPECT_EQ(type_pairs(type_c), (std::vector<TypePair>{{1, 1}, {1, 1}}));
}

TEST(Irreducibles, Polynomials) {
  EXPECT_EQ(count_irreducibles(1, true), q - one);
  EXPECT_EQ(count_irreducibles(1, false), q);
  EXPECT_EQ(count_irreducibles(2, false), (q * q - q) * Rational(1, 2));
  EXPECT_EQ(count_irreducibles(2, true), count_irreducibles(2, false));
  const Poly quartic = (Poly::monomial(1, 4) - Poly::monomial(1, 2)) * Rational(1, 4);
  EXPECT_EQ(count_irreducibles(4, true), quartic);
  EXPECT_EQ(quartic.eval(2), 3);
}

TEST(Irreducibles, GaussIdentity) {
  // sum_{d | n} d * N_d(q) = q^n
  for (int n = 1; n <= 12; ++n) {
    Poly total;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) total += count_irreducibles(d, false) * Rational(d);
    }
    ASSERT_EQ(total, Poly::monomial(1, static_cast<std::size_t>(n))) << "n=" << n;
  }
}

TEST(AutFactor, Examples) {
  EXPECT_EQ(aut_factor(Partition{{1, 1}}), 2);
  EXPECT_EQ(aut_factor(Partition{{2, 2, 1}}), 2);
  EXPECT_EQ(aut_factor(Partition{{3}}), 1);
  EXPECT_EQ(aut_factor(Partition{{2, 2, 2, 1, 1}}), 12);
}

TEST(Psi, TwoByTwoTable) {
  EXPECT_EQ(psi(type_c), (q - one) * (q - Poly::constant(2)) * Rational(1, 2));
  EXPECT_EQ(psi(type_b), q - one);
  EXPECT_EQ(psi(type_a), (q * q - q) * Rational(1, 2));
  EXPECT_EQ(psi(type_d), q - one);
}

TEST(Psi, SumsToMonicNonzeroConstantCount) {
  for (int n = 1; n <= 8; ++n) {
    Poly total;
    for (const auto& t : enumerate_types(n)) total += psi(t);
    ASSERT_EQ(total, (q - one) * Poly::monomial(1, static_cast<std::size_t>(n - 1))) << "n=" << n;
  }
}

TEST(TypeJson, Format) {
  const TypeOfN t = make_type({2, 1, 1}, {{2, {1}}, {1, {2}}});
  const Json j = type_to_json(t);
  EXPECT_EQ(j.dump(), R"({"lambda":[2,1,1],"refinements":{"1":[2],"2":[1]}})");
  EXPECT_EQ(type_from_json(j), t);
  for (const auto& u : enumerate_types(5)) ASSERT_EQ(type_from_json(type_to_json(u)), u);
}

}  // namespace
}  // namespace monodromy
