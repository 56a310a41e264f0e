#include <gtest/gtest.h>

#include <random>

#include "dgro/charges.hpp"
#include "dgro/multiindex.hpp"

using namespace dgro;

namespace {

// Number of jets of order <= p in n dimensions, by enumeration: C(n+p, n).
Q jets(int n, int p) { return p < 0 ? Q(0) : Q(static_cast<long>(enumerateJets(n, p).size())); }

CentralParamsTable unitParams(const Q& c = 0) {
  CentralParamsTable t;
  t.k1 = t.k2 = t.k3 = t.k4 = t.k5 = t.k6 = t.k7 = t.k8 = 1;
  t.d0 = t.d1 = t.d2 = 1;
  t.cNp = c;
  return t;
}

CentralParamsTable randomParams(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-5, 5), den(1, 4);
  auto r = [&] {
    Q q(d(rng), den(rng));
    q.canonicalize();
    return q;
  };
  CentralParamsTable t;
  t.k1 = r(), t.k2 = r(), t.k3 = r(), t.k4 = r(), t.k5 = r(), t.k6 = r(), t.k7 = r(), t.k8 = r();
  t.d0 = r(), t.d1 = r(), t.d2 = r(), t.cNp = r();
  return t;
}

CentralParamsTable stageable(CentralParamsTable t, int r) {
  if (r == 0) t.k3 = t.k4 = t.k6 = t.d0 = 0;
  if (r == 1) t.k4 = 0;
  return t;
}

}  // namespace

TEST(Theorem1Charges, Examples) {
  const auto c = theorem1Charges(unitParams(), 2, 1);
  EXPECT_EQ(c(1), -3);
  EXPECT_EQ(c(2), -5);
  EXPECT_EQ(c(5), 3);
  EXPECT_EQ(theorem1Charges(unitParams(7), 3, 2)(4), 6 + 7);

  std::mt19937 rng(3);
  const auto t = randomParams(rng);
  for (int n = 1; n <= 3; ++n) {
    const auto p0 = theorem1Charges(t, n, 0);
    EXPECT_EQ(p0(5), t.k5);
    EXPECT_EQ(p0(8), t.k8);
    EXPECT_EQ(p0(1), 1 - t.k1);
  }
}

TEST(Theorem1Charges, MatchJetCountingOracle) {
  // C(N+p, N+1) counts jets of order <= p-1 in N+1 dimensions, and so on.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = randomParams(rng);
    for (int n = 1; n <= 3; ++n)
      for (int p = 0; p <= 4; ++p) {
        const auto c = theorem1Charges(t, n, p);
        const Q a = jets(n, p), b = jets(n + 1, p - 1), e = jets(n + 2, p - 2), f = jets(n + 2, p - 1);
        EXPECT_EQ(c(1), 1 - t.k1 * a - t.k4 * f);
        EXPECT_EQ(c(2), -t.k2 * a - 2 * t.k3 * b - t.k4 * e);
        EXPECT_EQ(c(3), 1 + t.d1 * a + t.d0 * b);
        EXPECT_EQ(c(4), 2 * n + t.cNp);
        EXPECT_EQ(c(6), t.d2 * a);
        EXPECT_EQ(c(7), t.k7 * a + t.k6 * b);
      }
  }
}

TEST(DeltaShift, Examples) {
  std::mt19937 rng(7);
  const auto t = randomParams(rng);
  EXPECT_EQ(deltaShiftCharges(0, t, 2, 2), ChargeVector{});

  CentralParamsTable a;
  a.d0 = a.k4 = 1;
  EXPECT_EQ(deltaShiftCharges(1, a, 2, 1)(4), 0);

  CentralParamsTable b;
  b.k3 = 1;
  EXPECT_EQ(deltaShiftCharges(1, b, 1, 1)(3), -4);

  const auto s = deltaShiftCharges(Q(1, 2), t, 1, 2);
  for (int j : {1, 2, 5, 7, 8}) EXPECT_EQ(s(j), 0);
}

TEST(Theorem2Charges, Examples) {
  std::mt19937 rng(9);
  const auto t = randomParams(rng);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(theorem2Charges(t, n, 2)(4), 2 * n);
  auto z = t;
  z.k6 = 0;
  EXPECT_EQ(theorem2Charges(z, 2, 3)(6), 0);

  CentralParamsTable k;
  k.k3 = k.k4 = 1;
  // 1 + 2 C(3,2) + 2 C(3,3)
  EXPECT_EQ(theorem2Charges(k, 1, 2)(3), 1 + 2 * jets(2, 1) + 2 * jets(3, 0));
  EXPECT_EQ(theorem2Charges(k, 1, 2)(3), 9);

  const auto t1 = theorem1Charges(t, 2, 2), t2 = theorem2Charges(t, 2, 2);
  for (int j : {1, 2, 5, 7, 8}) EXPECT_EQ(t1(j), t2(j));
}

TEST(Kreal, TrivialRepresentations) {
  const auto g = su2Algebra();
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p) {
      const auto k = krealParams(g, trivialRep(glAlgebra(n)), trivialRep(g), n, p);
      EXPECT_EQ(k.k4, 1);
      EXPECT_EQ(k.d0, 1);
      EXPECT_EQ(k.cNp, -jets(n, p));
      for (const Q& v : {k.k1, k.k2, k.k3, k.k5, k.k6, k.k7, k.k8, k.d1, k.d2}) EXPECT_EQ(v, 0);
    }
}

TEST(Kreal, DimensionsAndStatistics) {
  const auto g = su2Algebra();
  const auto k = krealParams(g, glVectorRep(2), su2Fundamental(), 2, 1);
  EXPECT_EQ(k.k4, 4);
  EXPECT_EQ(k.d0, 4);
  const auto b = krealParams(g, glVectorRep(2), su2Fundamental(), 2, 1, Statistics::Bosonic);
  for (auto f : {&CentralParamsTable::k1, &CentralParamsTable::k2, &CentralParamsTable::k3,
                 &CentralParamsTable::k4, &CentralParamsTable::k5, &CentralParamsTable::k6,
                 &CentralParamsTable::k7, &CentralParamsTable::k8, &CentralParamsTable::d0,
                 &CentralParamsTable::d1, &CentralParamsTable::d2, &CentralParamsTable::cNp})
    EXPECT_EQ(b.*f, -(k.*f));
}

TEST(Theorem3Stage, Examples) {
  std::mt19937 rng(11);
  const auto t = stageable(randomParams(rng), 0);
  const auto s0 = theorem3Stage(0, t);
  ASSERT_EQ(s0.perStage.size(), 1u);
  EXPECT_EQ(s0.perStage[0], t);

  const auto t3 = randomParams(rng);
  const auto s3 = theorem3Stage(3, t3);
  const long c3[] = {1, -3, 3, -1};
  for (int i = 0; i <= 3; ++i) EXPECT_EQ(s3.perStage[i].k5, c3[i] * t3.k5);

  const auto t1 = stageable(randomParams(rng), 1);
  const auto s1 = theorem3Stage(1, t1);
  EXPECT_EQ(s1.perStage[1].k6, -s1.perStage[0].k6);
  EXPECT_EQ(s1.perStage[1].k7, -t1.k7 - s1.perStage[0].k6);

  EXPECT_THROW(theorem3Stage(0, unitParams()), std::invalid_argument);
  EXPECT_THROW(theorem3Stage(1, unitParams()), std::invalid_argument);
}

TEST(Theorem3Stage, ConditionsHoldAndViolationsAreCaught) {
  std::mt19937 rng(13);
  for (int r = 0; r <= 4; ++r)
    for (int trial = 0; trial < 5; ++trial) {
      auto s = theorem3Stage(r, stageable(randomParams(rng), r));
      EXPECT_TRUE(theorem3Violations(s).empty());
      if (r >= 1) {
        s.perStage[r].k6 += 1;
        EXPECT_FALSE(theorem3Violations(s).empty());
      }
    }
}

TEST(Theorem3Charges, Examples) {
  CentralParamsTable t;
  t.k5 = 3;
  EXPECT_EQ(theorem3Charges(theorem3Stage(2, t), 1, 4)(5), 0);
  for (int p = 1; p <= 6; ++p) EXPECT_EQ(theorem3Charges(theorem3Stage(1, t), 1, p)(5), 3);
  EXPECT_EQ(theorem3Charges(theorem3Stage(1, t), 2, 3)(5), 4 * 3);
}

TEST(Theorem3Charges, TwoRoutesAgreeOnGrid) {
  std::mt19937 rng(17);
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 3; ++n) {
      const auto s = theorem3Stage(r, stageable(randomParams(rng), r));
      for (int p = r; p <= 6; ++p) {
        ChargeVector c;
        ASSERT_NO_THROW(c = theorem3Charges(s, n, p)) << "r=" << r << " n=" << n << " p=" << p;
        if (n == r && p < 6) EXPECT_EQ(c, theorem3Charges(s, n, p + 1));
        if (n < r) {
          ChargeVector base;
          base(1) = 1;
          base(3) = 1;
          base(4) = 2 * n;
          EXPECT_EQ(c, base);
        }
      }
    }
}

TEST(Theorem3Charges, CorruptedStageFailsTheRouteCheck) {
  std::mt19937 rng(19);
  auto s = theorem3Stage(2, randomParams(rng));
  s.perStage[1].k5 += 1;
  EXPECT_THROW(theorem3Charges(s, 2, 3), std::logic_error);
}

TEST(Sugawara, AbelianToy) {
  const Matrix k = {{GQ(2), GQ(1)}, {GQ(1), GQ(3)}};
  const std::vector<std::vector<std::vector<GQ>>> f(2, std::vector<std::vector<GQ>>(2, std::vector<GQ>(2)));
  const auto s = sugawara(f, k);
  ASSERT_TRUE(s.solvable);
  EXPECT_TRUE(isZero(s.residual));
  EXPECT_TRUE(isZero(matAdd(s.gamma, matScale(*inverse(k), GQ(Q(-1, 2))))));
  EXPECT_EQ(s.c, 2);
  EXPECT_TRUE(s.dVanishes);
  EXPECT_TRUE(s.casimirCondition);
  EXPECT_EQ(s.casimirQ, 0);
}

TEST(Sugawara, Su2LevelOne) {
  // k = delta/2 is the trace form in the fundamental; level one gives
  // c = 3k/(k+2) = 1 by the standard formula.
  const auto g = su2Algebra();
  const Matrix k = matScale(identityMatrix(3), GQ(Q(1, 2)));
  const auto s = sugawara(g.f, k);
  ASSERT_TRUE(s.solvable);
  EXPECT_EQ(s.c, 1);
  EXPECT_TRUE(s.cDetermined);
  EXPECT_TRUE(isZero(s.residual));
  EXPECT_TRUE(s.casimirCondition);
  EXPECT_EQ(s.casimirQ, 4);
  EXPECT_TRUE(isZero(matAdd(s.gamma, matScale(identityMatrix(3), GQ(Q(-1, 3))))));
  EXPECT_TRUE(s.dVanishes);
}

TEST(Sugawara, EnvelopingThroughFundamental) {
  const auto g = su2Algebra();
  for (int p = 0; p <= 1; ++p) {
    const auto b = uMBasis(g, su2Fundamental(), 1, p);
    EXPECT_EQ(b.k.size(), 4 * b.jets * b.jets);
    const auto s = sugawara(b.f, b.k);
    ASSERT_TRUE(s.solvable);
    EXPECT_TRUE(isZero(s.residual));
    EXPECT_TRUE(s.dVanishes);
    for (std::size_t i = 0; i < s.gamma.size(); ++i)
      for (std::size_t j = 0; j < s.gamma.size(); ++j) EXPECT_EQ(s.gamma[i][j], s.gamma[j][i]);
    // dim M times the number of jets.
    EXPECT_EQ(s.c, Q(2) * jets(1, p));
    EXPECT_TRUE(s.cDetermined);
    EXPECT_FALSE(s.casimirCondition);
  }
}

TEST(Divergence, ExponentsAndColumns) {
  std::mt19937 rng(23);
  auto t = randomParams(rng);
  t.k4 = t.k3 = t.k6 = t.d0 = t.k5 = 1;
  for (int n = 1; n <= 3; ++n) {
    const auto rep = divergenceReport(t, n, 0, n + 6);
    for (const auto& row : rep.rows) EXPECT_EQ(row.charges(5), t.k5 * jets(n, row.p));
    EXPECT_EQ(rep.exponent[0], n + 2);
    EXPECT_EQ(rep.exponent[1], n + 2);
    EXPECT_EQ(rep.exponent[2], n + 1);
    EXPECT_EQ(rep.exponent[6], n + 1);
    EXPECT_EQ(rep.exponent[4], n);
  }
  const auto zero = divergenceReport(CentralParamsTable{}, 2, 0, 5);
  for (int e : zero.exponent) EXPECT_EQ(e, -1);
  for (const auto& row : zero.rows) EXPECT_EQ(row.charges, theorem1Charges(CentralParamsTable{}, 2, 0));
}
