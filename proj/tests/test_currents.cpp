#include <gtest/gtest.h>

#include <random>

#include "dgro/currents.hpp"

using namespace dgro;

namespace {

const GQ kI(Q(0), Q(1));

Density qv(int n, int order, int mu) { return Density(Poly::var(jetVar(n, order, mu))); }

CentralParamsTable unitParams() {
  CentralParamsTable t;
  t.k1 = t.k2 = t.k3 = t.k4 = t.k5 = t.k6 = t.k7 = t.k8 = 1;
  t.d0 = t.d1 = t.d2 = 1;
  t.cNp = 1;
  return t;
}

CentralParamsTable randomParams(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  auto r = [&] { return Q(d(rng), 1 + (d(rng) + 3) % 3); };
  CentralParamsTable t;
  t.k1 = r(), t.k2 = r(), t.k3 = r(), t.k4 = r(), t.k5 = r(), t.k6 = r(), t.k7 = r(), t.k8 = r();
  t.d0 = r(), t.d1 = r(), t.d2 = r(), t.cNp = r();
  for (Q* q : {&t.k1, &t.k2, &t.k3, &t.k4, &t.k5, &t.k6, &t.k7, &t.k8, &t.d0, &t.d1, &t.d2, &t.cNp})
    q->canonicalize();
  return t;
}

struct Config {
  int n, p;
  LieAlgebraSpec g;
  std::shared_ptr<AnsatzCentral> central;
  BracketEngine engine;
  Config(int n_, int p_, const LieAlgebraSpec& base, const CentralParamsTable& t)
      : n(n_), p(p_), g(directSum(base, n_)), central(std::make_shared<AnsatzCentral>(g, std::vector{t})),
        engine(n_, g, central) {}
};

LocalOperator single(const CurrentKey& k, const Density& d) {
  LocalOperator op;
  op.addCurrent(k, d);
  return op;
}

// int a P_mu with P_mu = sum_m E^m_{m+mu}.
LocalOperator pOperator(int n, int p, int mu, const Density& a) {
  LocalOperator op;
  for (const auto& m : enumerateJets(n, p)) {
    MultiIndex s = m + MultiIndex::unit(n, mu);
    if (s.order() <= p) op.addCurrent(currentE(0, m, s), a);
  }
  return op;
}

LocalOperator dOperator(int n, int p, const Density& a) {
  LocalOperator op;
  for (const auto& m : enumerateJets(n, p)) op.addCurrent(currentE(0, m, m), a);
  return op;
}

Density randomDensity(std::mt19937& rng, int n, bool allowQ) {
  std::uniform_int_distribution<int> coef(-2, 2), mode(-1, 1), var(0, n - 1), deg(0, 2);
  Density d;
  int terms = 1 + (coef(rng) + 2) % 2;
  for (int t = 0; t < terms; ++t) {
    Poly p(GQ(coef(rng) == 0 ? 1 : coef(rng)));
    if (allowQ)
      for (int k = deg(rng); k > 0; --k) p = p * Poly::var(var(rng));
    d.add(mode(rng), p);
  }
  if (d.isZero()) d = Density(GQ(1));
  return d;
}

// One random current term of kind E, J (labelled by g) or T, or F.
CurrentKey randomKey(std::mt19937& rng, const Config& s, bool labelled) {
  auto jets = enumerateJets(s.n, s.p);
  std::uniform_int_distribution<std::size_t> pick(0, jets.size() - 1);
  const MultiIndex m = jets[pick(rng)], nn = jets[pick(rng)];
  std::uniform_int_distribution<int> kind(0, labelled ? 3 : 1);
  switch (kind(rng)) {
    case 0:
      return currentE(0, m, nn);
    case 1:
      return currentF(0);
    case 2: {
      std::uniform_int_distribution<int> a(0, static_cast<int>(s.g.gDim) - 1);
      return currentJ(0, m, nn, a(rng));
    }
    default: {
      std::uniform_int_distribution<int> mu(0, s.n - 1);
      return currentT(s.g, 0, m, nn, mu(rng), mu(rng));
    }
  }
}

LocalOperator randomOperator(std::mt19937& rng, const Config& s, bool labelled, bool trajectory) {
  LocalOperator op;
  std::uniform_int_distribution<int> count(1, 3), coin(0, 1);
  for (int t = count(rng); t > 0; --t) op.addCurrent(randomKey(rng, s, labelled), randomDensity(rng, s.n, true));
  if (trajectory) {
    if (coin(rng)) {
      std::vector<Poly> xi(s.n);
      for (auto& c : xi) c = randomDensity(rng, s.n, true).modes().begin()->second;
      op.addV(xi);
    }
    if (coin(rng)) op.kfield += randomDensity(rng, s.n, false);
  }
  return op;
}

void expectNegated(const BracketResult& ab, const BracketResult& ba, int n) {
  EXPECT_TRUE(ab.regular.sameRegular(ba.regular * GQ(-1)));
  EXPECT_TRUE(equalModTotalDerivatives(ab.extension, -ba.extension, n));
}

}  // namespace

TEST(Density, TimeDerivativeAndModes) {
  const int n = 2;
  Density f = Density::mode(2, GQ(3));
  Density df = timeDerivative(f, n);
  EXPECT_EQ(df, Density::mode(2, GQ(Q(0), Q(6))));
  Density q1 = qv(n, 0, 0);
  EXPECT_EQ(timeDerivative(q1 * q1, n), GQ(2) * q1 * qv(n, 1, 0));
  EXPECT_EQ(q1.jetOrder(n), 0);
  EXPECT_EQ(timeDerivative(q1, n, 2).jetOrder(n), 2);
  EXPECT_THROW(timeDerivative(qv(n, maxJetOrder(n), 1), n), std::out_of_range);
}

TEST(Density, CircleIntegralOfModes) {
  EXPECT_EQ(circleIntegral(Density::mode(0, GQ(5))), GQ(5));
  EXPECT_EQ(circleIntegral(Density::mode(3, GQ(5))), GQ(0));
  EXPECT_EQ(circleIntegral(Density::mode(1) * Density::mode(-1)), GQ(1));
  EXPECT_THROW(circleIntegral(qv(1, 0, 0)), std::invalid_argument);
}

TEST(Density, TotalDerivativesHaveZeroEulerImage) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    Density d = randomDensity(rng, n, true) * randomDensity(rng, n, true);
    if (trial % 2) d = d * qv(n, 1, trial % n);
    EXPECT_TRUE(eulerImage(timeDerivative(d, n), n).isZero()) << d.str(n);
  }
  // q^1 q'^2 is not exact for N = 2, but q^1 q'^1 is.
  EXPECT_FALSE(eulerImage(qv(2, 0, 0) * qv(2, 1, 1), 2).isZero());
  EXPECT_TRUE(eulerImage(qv(2, 0, 0) * qv(2, 1, 0), 2).isZero());
  EXPECT_FALSE(eulerImage(Density(GQ(1)), 2).isZero());
  EXPECT_TRUE(eulerImage(Density::mode(4), 2).isZero());
}

TEST(IntegrateDelta, Examples) {
  const int n = 1;
  Density f = Density::mode(1), g = Density::mode(-1);
  // k = 0: plain product.
  EXPECT_EQ(integrateDelta(f, g, 0, n, DeltaSlot::S), f * g);
  // f = g, k = 1: total derivative.
  Density h = Density::mode(1) + Density::mode(2, GQ(3));
  for (auto slot : {DeltaSlot::S, DeltaSlot::T})
    EXPECT_EQ(circleIntegral(integrateDelta(h, h, 1, n, slot)), GQ(0));
  // e^{is}, e^{-it}, k = 1 gives -2 pi i.
  for (auto slot : {DeltaSlot::S, DeltaSlot::T})
    EXPECT_EQ(circleIntegral(integrateDelta(f, g, 1, n, slot)), GQ(Q(0), Q(-1)));
  // Both slots agree up to total derivatives for every order.
  Density a = qv(2, 0, 0) * qv(2, 0, 1) * Density::mode(1), b = qv(2, 0, 1) + Density::mode(-2);
  for (int k = 0; k <= 3; ++k)
    EXPECT_TRUE(equalModTotalDerivatives(integrateDelta(a, b, k, 2, DeltaSlot::S),
                                         integrateDelta(a, b, k, 2, DeltaSlot::T), 2));
  EXPECT_THROW(integrateDelta(f, g, 4, n, DeltaSlot::S), std::invalid_argument);
}

TEST(BracketSymbols, FWithEIsWeightOnePrimary) {
  Config s(2, 1, u1Algebra(), unitParams());
  auto jets = enumerateJets(2, 1);
  for (const auto& m : jets)
    for (const auto& nn : jets) {
      CurrentKey e = currentE(0, m, nn);
      DeltaExpansion ex = s.engine.bracketSymbols(currentF(0), e);
      ASSERT_EQ(ex.regular.size(), 1u);
      EXPECT_EQ(ex.regular[0].key, e);
      EXPECT_TRUE(ex.regular[0].atS);
      EXPECT_EQ(ex.regular[0].order, 1);
      if (m == nn) {
        // d0 / (4 pi i) = (d0 / 2) u on delta'' and i delta'.
        ASSERT_EQ(ex.central.size(), 2u);
        EXPECT_EQ(ex.central[0].coeff, GQ(Q(1, 2)));
        EXPECT_EQ(ex.central[0].order, 2);
        EXPECT_EQ(ex.central[1].coeff, GQ(Q(0), Q(1, 2)));
        EXPECT_EQ(ex.central[1].order, 1);
      } else {
        EXPECT_TRUE(ex.central.empty());
      }
    }
}

TEST(BracketSymbols, DifferentStagesCommute) {
  LieAlgebraSpec g = directSum(u1Algebra(), 1);
  auto central = std::make_shared<AnsatzCentral>(g, std::vector{unitParams(), unitParams()});
  BracketEngine eng(1, g, central);
  MultiIndex z(1);
  auto ex = eng.bracketSymbols(currentE(0, z, z), currentE(1, z, z));
  EXPECT_TRUE(ex.regular.empty());
  EXPECT_TRUE(ex.central.empty());
  EXPECT_TRUE(eng.bracketSymbols(currentF(0), currentF(1)).central.empty());
}

TEST(BracketSymbols, CentralMatrixSymmetric) {
  std::mt19937 rng(3);
  for (const auto& base : {u1Algebra(Q(2)), su2Algebra(), sumAlgebras(u1Algebra(), su2Algebra())}) {
    Config s(2, 1, base, randomParams(rng));
    std::vector<EnvelopingLabel> labels{EnvelopingLabel::unit()};
    for (std::size_t a = 0; a < s.g.dim; ++a) labels.push_back(EnvelopingLabel::single(static_cast<int>(a)));
    auto jets = enumerateJets(2, 1);
    for (const auto& la : labels)
      for (const auto& lb : labels)
        for (const auto& m : jets)
          for (const auto& nn : jets) {
            CurrentKey a{CurrentKey::Kind::I, 0, m, nn, la}, b{CurrentKey::Kind::I, 0, nn, m, lb};
            auto ab = s.engine.bracketSymbols(a, b), ba = s.engine.bracketSymbols(b, a);
            ASSERT_EQ(ab.central.size(), ba.central.size());
            for (std::size_t i = 0; i < ab.central.size(); ++i) EXPECT_EQ(ab.central[i].coeff, ba.central[i].coeff);
          }
    auto rep = checkCentralConditions(s.g, *s.central, 0, labels);
    EXPECT_TRUE(rep.ok()) << rep.failures.front();
    EXPECT_GT(rep.checked, 0);
  }
}

TEST(CentralConditions, TraceFormSatisfiesFullConditions) {
  LieAlgebraSpec g = su2Algebra();
  TraceCentral tc(su2Fundamental(), Q(0));
  std::vector<EnvelopingLabel> labels{EnvelopingLabel::unit()};
  for (int a = 0; a < 3; ++a) labels.push_back(EnvelopingLabel::single(a));
  auto rep = checkCentralConditions(g, tc, 0, labels);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.skipped, 0);
  // A non-symmetric table is caught.
  struct Skew : CentralProvider {
    GQ k(int, const EnvelopingLabel& a, const EnvelopingLabel& b) const override {
      return GQ(static_cast<long>(a.size()) - static_cast<long>(2 * b.size()));
    }
    GQ d(int, const EnvelopingLabel&) const override { return GQ(); }
    Q c(int) const override { return Q(0); }
  } skew;
  EXPECT_FALSE(checkCentralConditions(g, skew, 0, labels).ok());
}

TEST(Brackets, PMomentaCommute) {
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p) {
      Config s(n, p, u1Algebra(), unitParams());
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          auto r = s.engine.bracket(pOperator(n, p, mu, Density::mode(1) * qv(n, 0, 0)),
                                    pOperator(n, p, nu, Density::mode(-2) + qv(n, 0, n - 1)));
          EXPECT_TRUE(r.regular.isZero());
          EXPECT_TRUE(r.extension.isZero());
        }
    }
}

TEST(Brackets, PWithEReproducesShiftRelation) {
  const int n = 2, p = 2;
  Config s(n, p, u1Algebra(), unitParams());
  Density a = Density::mode(1) * qv(n, 0, 1), b = qv(n, 0, 0) + Density::mode(-1, GQ(2));
  auto jets = enumerateJets(n, p);
  for (int mu = 0; mu < n; ++mu)
    for (const auto& m : jets)
      for (const auto& nn : jets) {
        auto r = s.engine.bracket(pOperator(n, p, mu, a), single(currentE(0, m, nn), b));
        // (E^{m-mu}_n - E^m_{n+mu}) delta + k4 u delta^m_{n+mu} delta'.
        LocalOperator expect;
        MultiIndex e = MultiIndex::unit(n, mu);
        if (auto mm = m.minus(e)) expect.addCurrent(currentE(0, *mm, nn), a * b);
        if ((nn + e).order() <= p) expect.addCurrent(currentE(0, m, nn + e), -(a * b));
        EXPECT_TRUE(r.regular.sameRegular(expect)) << r.regular.str(s.g, n);
        Density ext = m == nn + e ? a * timeDerivative(b, n) : Density();
        EXPECT_TRUE(equalModTotalDerivatives(r.extension, ext, n));
      }
}

TEST(Brackets, DiagonalSumExtensionCountsJets) {
  // [int X D, int Y D] = k4 C(N+p, N) int X Y' with D = sum_m E^m_m.
  std::mt19937 rng(11);
  for (int n = 1; n <= 3; ++n)
    for (int p = 0; p <= 2; ++p) {
      CentralParamsTable t = randomParams(rng);
      Config s(n, p, u1Algebra(), t);
      Density x = qv(n, 0, 0) * qv(n, 0, n - 1), y = qv(n, 0, n - 1) + Density::mode(1);
      auto r = s.engine.bracket(dOperator(n, p, x), dOperator(n, p, y));
      EXPECT_TRUE(r.regular.isZero());
      const Q count(binom(n + p, n));
      EXPECT_TRUE(equalModTotalDerivatives(r.extension, GQ(t.k4 * count) * (x * timeDerivative(y, n)), n));
      EXPECT_TRUE(equalModTotalDerivatives(r.extension, -GQ(t.k4 * count) * (timeDerivative(x, n) * y), n));
    }
}

TEST(Brackets, DWithCurrentsGivesCentralColumn) {
  // [D(s), I^M(t)] = k^{M0} u delta' for M = E, J, T with m = n.
  const int n = 2, p = 1;
  std::mt19937 rng(5);
  CentralParamsTable t = randomParams(rng);
  Config s(n, p, u1Algebra(Q(3)), t);
  Density a = Density::mode(2) * qv(n, 0, 0), b = qv(n, 0, 1) * qv(n, 0, 1);
  MultiIndex m = MultiIndex::unit(n, 1);
  struct Case {
    CurrentKey key;
    Q k;
  };
  std::vector<Case> cases{{currentE(0, m, m), t.k4},
                          {currentJ(0, m, m, 0), t.k6 * 3},
                          {currentT(s.g, 0, m, m, 1, 1), t.k3},
                          {currentT(s.g, 0, m, m, 0, 1), Q(0)}};
  for (const auto& c : cases) {
    auto r = s.engine.bracket(dOperator(n, p, a), single(c.key, b));
    EXPECT_TRUE(equalModTotalDerivatives(r.extension, GQ(c.k) * (a * timeDerivative(b, n)), n)) << c.key.str(s.g);
  }
}

TEST(Brackets, ConstantVectorFieldActsOnDensity) {
  const int n = 2;
  Config s(n, 0, u1Algebra(), unitParams());
  MultiIndex z(n);
  LocalOperator v;
  v.addV({Poly(GQ(5)), Poly(GQ(-2))});
  auto r = s.engine.bracket(v, single(currentE(0, z, z), qv(n, 0, 0)));
  EXPECT_TRUE(r.regular.sameRegular(single(currentE(0, z, z), Density(GQ(5)))));
  EXPECT_TRUE(r.extension.isZero());
}

TEST(Brackets, TrajectoryActionsFollowLeibniz) {
  const int n = 2;
  Config s(n, 0, u1Algebra(), unitParams());
  // [V(xi), q'^mu] = d/dt xi^mu(q); [K(f), q^mu] = -f q'^mu.
  std::vector<Poly> xi{Poly::var(0) * Poly::var(1), Poly(GQ(1))};
  Density img = s.engine.act(xi, Density(), qv(n, 1, 0));
  EXPECT_EQ(img, timeDerivative(Density(xi[0]), n));
  Density f = Density::mode(1, GQ(2));
  EXPECT_EQ(s.engine.act({}, f, qv(n, 0, 1)), -(f * qv(n, 1, 1)));
  EXPECT_EQ(s.engine.act({}, f, qv(n, 1, 1)), -(timeDerivative(f * qv(n, 1, 1), n)));
}

TEST(Brackets, AntisymmetryOnRandomOperators) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 2, p = trial % 3;
    Config s(n, p, trial % 3 == 0 ? su2Algebra() : u1Algebra(Q(2)), randomParams(rng));
    LocalOperator a = randomOperator(rng, s, true, true), b = randomOperator(rng, s, true, true);
    expectNegated(s.engine.bracket(a, b), s.engine.bracket(b, a), n);
    auto aa = s.engine.bracket(a, a);
    EXPECT_TRUE(aa.regular.isZero());
    EXPECT_TRUE(equalModTotalDerivatives(aa.extension, Density(), n));
  }
}

TEST(Brackets, JacobiOnRandomTriples) {
  std::mt19937 rng(99);
  auto nested = [](const BracketEngine& e, const LocalOperator& a, const LocalOperator& b, const LocalOperator& c) {
    BracketResult ab = e.bracket(a, b);
    LocalOperator lhs = ab.regular;
    lhs.pure += ab.extension;
    return e.bracket(lhs, c);
  };
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 2, p = trial % 3;
    const bool traj = trial % 4 == 3;
    Config s(n, p, trial % 2 ? su2Algebra() : u1Algebra(Q(2)), randomParams(rng));
    // At most one operator carries g or gl labels, so products stay inside
    // the truncated enveloping algebra.
    LocalOperator a = randomOperator(rng, s, true, traj), b = randomOperator(rng, s, false, traj),
                  c = randomOperator(rng, s, false, traj);
    BracketResult x = nested(s.engine, a, b, c), y = nested(s.engine, b, c, a), z = nested(s.engine, c, a, b);
    LocalOperator sum = x.regular + y.regular + z.regular;
    sum.pure = Density();
    EXPECT_TRUE(sum.isZero()) << sum.str(s.g, n);
    EXPECT_TRUE(equalModTotalDerivatives(x.extension + y.extension + z.extension, Density(), n)) << trial;
  }
}

TEST(Brackets, TrajectoryTableJacobi) {
  // The trajectory axioms alone: V and K generators with densities.
  std::mt19937 rng(17);
  Config s(2, 0, u1Algebra(), unitParams());
  auto nested = [&](const LocalOperator& a, const LocalOperator& b, const LocalOperator& c) {
    BracketResult ab = s.engine.bracket(a, b);
    LocalOperator lhs = ab.regular;
    lhs.pure += ab.extension;
    return s.engine.bracket(lhs, c);
  };
  for (int trial = 0; trial < 30; ++trial) {
    LocalOperator ops[3];
    for (auto& op : ops) {
      std::vector<Poly> xi(2);
      for (auto& c : xi) c = randomDensity(rng, 2, true).modes().begin()->second;
      if (trial % 3 != 0) op.addV(xi);
      if (trial % 3 != 1) op.kfield += randomDensity(rng, 2, false);
    }
    auto x = nested(ops[0], ops[1], ops[2]), y = nested(ops[1], ops[2], ops[0]), z = nested(ops[2], ops[0], ops[1]);
    LocalOperator sum = x.regular + y.regular + z.regular;
    sum.pure = Density();
    EXPECT_TRUE(sum.isZero());
    EXPECT_TRUE(equalModTotalDerivatives(x.extension + y.extension + z.extension, Density(), 2)) << trial;
  }
}
