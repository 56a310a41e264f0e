#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dgro/multiindex.hpp"

using namespace dgro;

namespace {

// Oracle binomial via Pascal's triangle, independent of GMP's routine.
long pascal(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  static std::vector<std::vector<long>> t;
  while (static_cast<int>(t.size()) <= a) {
    std::size_t n = t.size();
    std::vector<long> row(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) row[k] = t[n - 1][k - 1] + t[n - 1][k];
    t.push_back(row);
  }
  return t[a][b];
}

long oracleMultibinom(const std::vector<int>& m, const std::vector<int>& n) {
  long r = 1;
  for (std::size_t i = 0; i < m.size(); ++i) r *= pascal(m[i], n[i]);
  return r;
}

// Odometer enumeration over the box [0,p]^N, filtered by order.
std::vector<std::vector<int>> oracleJets(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(n, 0);
  while (true) {
    int s = 0;
    for (int v : c) s += v;
    if (s <= p) out.push_back(c);
    int i = n - 1;
    while (i >= 0 && c[i] == p) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return out;
}

}  // namespace

TEST(MultiIndex, RejectsNegativeComponents) {
  EXPECT_THROW(MultiIndex({1, -1}), std::invalid_argument);
  EXPECT_EQ(MultiIndex({2, 3}).order(), 5);
  EXPECT_EQ(MultiIndex::unit(3, 1).components(), (std::vector<int>{0, 1, 0}));
  EXPECT_FALSE(MultiIndex({1, 0}).minus(MultiIndex({0, 1})).has_value());
}

TEST(MultiBinom, Examples) {
  EXPECT_EQ(multibinom(MultiIndex({2, 1}), MultiIndex({1, 0})), 2);
  EXPECT_EQ(multibinom(MultiIndex({3, 2}), MultiIndex({3, 2})), 1);
  EXPECT_EQ(multibinom(MultiIndex({1, 0}), MultiIndex({0, 1})), 0);
  EXPECT_EQ(multibinom(std::vector<int>{2}, std::vector<int>{-1}), 0);
  EXPECT_THROW(multibinom(MultiIndex({1}), MultiIndex({1, 0})), std::invalid_argument);
}

TEST(MultiBinom, MatchesPascalOracle) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : oracleJets(n, 7))
      for (const auto& k : oracleJets(n, 7))
        ASSERT_EQ(multibinom(m, k), oracleMultibinom(m, k));
}

TEST(MultiBinom, UnitAndSymmetryProperties) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 5), comp(0, 15);
  for (int t = 0; t < 2000; ++t) {
    int n = dim(rng);
    std::vector<int> m(n), k(n);
    for (int i = 0; i < n; ++i) {
      m[i] = comp(rng);
      k[i] = std::uniform_int_distribution<int>(0, m[i])(rng);
    }
    MultiIndex mi(m), ki(k);
    EXPECT_EQ(multibinom(mi, MultiIndex(n)), 1);
    EXPECT_EQ(multibinom(mi, mi), 1);
    EXPECT_EQ(multibinom(mi, ki), multibinom(mi, *mi.minus(ki)));
  }
}

TEST(EnumerateJets, Examples) {
  auto one = enumerateJets(1, 2);
  ASSERT_EQ(one.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(one[i], MultiIndex(std::vector<int>{i}));
  auto two = enumerateJets(2, 1);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[0], MultiIndex({0, 0}));
  EXPECT_EQ(two[1], MultiIndex({0, 1}));
  EXPECT_EQ(two[2], MultiIndex({1, 0}));
  EXPECT_EQ(enumerateJets(3, 2).size(), 10u);
}

TEST(EnumerateJets, GradedLexNoDuplicatesAndPrefixStable) {
  for (int n = 1; n <= 4; ++n)
    for (int p = 0; p <= 6; ++p) {
      auto jets = enumerateJets(n, p);
      auto oracle = oracleJets(n, p);
      std::set<std::vector<int>> seen;
      for (const auto& m : jets) seen.insert(m.components());
      EXPECT_EQ(seen.size(), jets.size());
      EXPECT_EQ(seen, std::set<std::vector<int>>(oracle.begin(), oracle.end()));
      EXPECT_EQ(Z(static_cast<long>(jets.size())), closedFormSums(n, p).A);
      for (std::size_t i = 1; i < jets.size(); ++i) {
        const auto &a = jets[i - 1], &b = jets[i];
        EXPECT_TRUE(a.order() < b.order() || (a.order() == b.order() && a.components() < b.components()));
      }
      auto next = enumerateJets(n, p + 1);
      EXPECT_TRUE(std::equal(jets.begin(), jets.end(), next.begin()));
    }
}

TEST(BinomialLemmas, SpecificInstances) {
  // N=1 recurrence: C(2,1) + C(2,0) - C(3,1) = 0.
  EXPECT_EQ(pascal(2, 1) + pascal(2, 0) - pascal(3, 1), 0);
  EXPECT_EQ(multibinom(std::vector<int>{2}, {1}) + multibinom(std::vector<int>{2}, {0}) -
                multibinom(std::vector<int>{3}, {1}),
            0);
  // L3 with m=(2), n=(1), s=(1), mu=1: 4 = 2 + 2.
  EXPECT_EQ(multibinom(std::vector<int>{2}, {1}) * multibinom(std::vector<int>{2}, {1}), 4);
  EXPECT_EQ(multibinom(std::vector<int>{2}, {1}) * multibinom(std::vector<int>{1}, {1}) +
                multibinom(std::vector<int>{2}, {1}) * multibinom(std::vector<int>{1}, {0}),
            4);
}

TEST(BinomialLemmas, ExhaustiveAndRandomHaveNoCounterexamples) {
  auto rep = verifyBinomialLemmas(3, 4, 10000, 12345);
  EXPECT_TRUE(rep.ok()) << (rep.counterexamples.empty() ? "" : rep.counterexamples.front());
  EXPECT_GT(rep.checked, 30000);
}

TEST(BinomialLemmas, RecurrenceExhaustiveUpToEightInFourDims) {
  for (int n = 1; n <= 4; ++n) {
    auto jets = oracleJets(n, 8);
    for (const auto& m : jets)
      for (const auto& k : jets)
        for (int mu = 0; mu < n; ++mu) {
          auto km = k, mp = m;
          --km[mu];
          ++mp[mu];
          ASSERT_EQ(multibinom(m, k) + multibinom(m, km) - multibinom(mp, k), 0);
        }
  }
}

TEST(ClosedFormSums, Examples) {
  EXPECT_EQ(closedFormSums(2, 2).A, 6);
  EXPECT_EQ(closedFormSums(1, 1).B, 3);
  EXPECT_EQ(closedFormSums(1, 1).E, 8);
  EXPECT_FALSE(closedFormSums(1, 3).C.has_value());
  auto neg = closedFormSums(3, -1);
  EXPECT_EQ(neg.A, 0);
  EXPECT_EQ(neg.D, 0);
  EXPECT_EQ(neg.E, 0);
}

TEST(ClosedFormSums, AgreeWithNestedLoopOracle) {
  for (int n = 1; n <= 4; ++n)
    for (int p = -2; p <= 7; ++p) {
      auto s = closedFormSums(n, p);
      long a = 0, b = 0, c = 0, d = 0, e = 0;
      for (const auto& m : p >= 0 ? oracleJets(n, p) : std::vector<std::vector<int>>{}) {
        ++a;
        b += m[0] + 1;
        d += (m[0] + 1) * (m[0] + 1);
        e += (m[0] + 2) * (m[0] + 1);
        if (n > 1) c += (m[0] + 1) * (m[1] + 1);
      }
      long delta = 0;
      for (int k = 0; k <= p; ++k) delta += pascal(n + p - k, n);
      EXPECT_EQ(s.A, a);
      EXPECT_EQ(s.B, b);
      EXPECT_EQ(s.D, d);
      EXPECT_EQ(s.E, e);
      EXPECT_EQ(s.Delta, delta);
      if (n > 1) EXPECT_EQ(*s.C, c);
    }
}

TEST(TensorLemmas, ContractionsHold) {
  for (int n = 1; n <= 4; ++n)
    for (int p = 0; p <= 6; ++p) {
      auto rep = verifyTensorLemmas(n, p);
      EXPECT_TRUE(rep.ok()) << rep.counterexamples.front();
    }
}

TEST(AlternatingJetSum, Examples) {
  for (int n = 1; n <= 4; ++n)
    for (int p = 0; p <= 5; ++p) EXPECT_EQ(alternatingJetSum(0, p, n), pascal(n + p, n));
  EXPECT_EQ(alternatingJetSum(1, 2, 1), 1);
  EXPECT_EQ(alternatingJetSum(2, 3, 2), 1);
  EXPECT_THROW(alternatingJetSum(3, 2, 1), std::invalid_argument);
}

TEST(AlternatingJetSum, EqualsShiftedBinomialAndStagedG) {
  for (int n = 1; n <= 4; ++n)
    for (int p = 0; p <= 8; ++p)
      for (int r = 0; r <= std::min(p, 4); ++r) {
        long direct = 0;
        for (int i = 0; i <= r; ++i) direct += (i % 2 ? -1 : 1) * pascal(r, i) * pascal(n + p - i, n);
        Z v = alternatingJetSum(r, p, n);
        EXPECT_EQ(v, direct);
        EXPECT_EQ(v, pascal(n + p - r, n - r));
        std::vector<Q> k(r + 1);
        for (int i = 0; i <= r; ++i) k[i] = Q((i % 2 ? -1 : 1) * pascal(r, i));
        EXPECT_EQ(gSum(r, p, n, k), Q(v));
      }
}

TEST(GSum, Examples) {
  EXPECT_EQ(gSum(1, 2, 1, {Q(1), Q(-1)}), 1);
  EXPECT_EQ(gSum(2, 3, 2, {Q(0), Q(0), Q(0)}), 0);
  auto rep = gSumProperties(2, 3, 2, {Q(1), Q(-2), Q(1)});
  EXPECT_EQ(rep.value, 1);
  EXPECT_TRUE(rep.stagedCollapse);
  EXPECT_THROW(gSum(2, 3, 2, {Q(1)}), std::invalid_argument);
}

TEST(GSum, PropertiesOnRandomInputs) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 6);
  auto rat = [&] {
    Q v(num(rng), den(rng));
    v.canonicalize();
    return v;
  };
  for (int t = 0; t < 500; ++t) {
    int r = std::uniform_int_distribution<int>(1, 4)(rng);
    int p = std::uniform_int_distribution<int>(r, 8)(rng);
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<Q> k(r + 1), kbar(r);
    for (auto& v : k) v = rat();
    for (auto& v : kbar) v = rat();
    auto rep = gSumProperties(r, p, n, k, kbar);
    EXPECT_TRUE(rep.stagedCollapse);
    ASSERT_TRUE(rep.shiftMerge.has_value());
    EXPECT_TRUE(*rep.shiftMerge);
    EXPECT_FALSE(rep.dimensionReduction.has_value() && !rep.note.empty());

    // Force sum k = 0 and check the reduction to N-1.
    Q total = 0;
    for (int i = 0; i < r; ++i) total += k[i];
    k[r] = -total;
    auto red = gSumProperties(r, p, n, k);
    ASSERT_TRUE(red.dimensionReduction.has_value());
    EXPECT_TRUE(*red.dimensionReduction);
  }
  auto bad = gSumProperties(1, 2, 1, {Q(1), Q(1)});
  EXPECT_FALSE(bad.dimensionReduction.has_value());
  EXPECT_FALSE(bad.note.empty());
}
