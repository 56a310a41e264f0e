#include "dgro/dgro.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>

#include "dgro/linalg.hpp"
#include "dgro/multiindex.hpp"

namespace dgro {

namespace {

const GQ kI(Q(0), Q(1));

Poly qdot(int n, int mu) { return Poly::var(jetVar(n, 1, mu)); }

std::vector<Poly> padded(std::vector<Poly> v, int n) {
  v.resize(static_cast<std::size_t>(n));
  return v;
}

Poly divergence(const PolyVectorField& xi) {
  Poly d;
  for (std::size_t mu = 0; mu < xi.size(); ++mu) d += xi[mu].derivative(static_cast<int>(mu));
  return d;
}

int stageOrder(const RealizationConfig& cfg, int stage) {
  return cfg.variant == Variant::DirectSum ? cfg.p - stage : cfg.p;
}

void checkConfig(const RealizationConfig& cfg) {
  if (cfg.n < 1 || cfg.p < 0) throw std::invalid_argument("need N >= 1 and p >= 0");
  if (cfg.stages.empty()) throw std::invalid_argument("no central parameter table");
  if (cfg.variant != Variant::DirectSum && cfg.stages.size() != 1)
    throw std::invalid_argument("only the direct-sum variant has several stages");
  if (cfg.algebra.glN != 0) throw std::invalid_argument("cfg.algebra must be the plain algebra g");
}

Density poly(const Poly& p) { return Density(p); }

}  // namespace

RealizationConfig theorem1Config(int n, int p, const LieAlgebraSpec& g, const CentralParamsTable& k) {
  RealizationConfig cfg;
  cfg.n = n;
  cfg.p = p;
  cfg.algebra = g;
  cfg.stages = {k};
  return cfg;
}

RealizationConfig deltaFConfig(int n, int p, const LieAlgebraSpec& g, const CentralParamsTable& k,
                               const Q& lambda) {
  RealizationConfig cfg = theorem1Config(n, p, g, k);
  cfg.variant = Variant::DeltaF;
  cfg.lambda = lambda;
  return cfg;
}

RealizationConfig theorem2Config(int n, int p, const LieAlgebraSpec& g, const CentralParamsTable& k) {
  RealizationConfig cfg = theorem1Config(n, p, g, k);
  cfg.variant = Variant::Theorem2;
  const ChargeVector c = theorem2Charges(k, n, p);
  cfg.shift3 = c(3) - 1;
  cfg.shift6 = c(6);
  return cfg;
}

RealizationConfig directSumConfig(int n, int p, const LieAlgebraSpec& g, const StagedParams& s) {
  RealizationConfig cfg;
  cfg.n = n;
  cfg.p = p;
  cfg.algebra = g;
  cfg.stages = stageTables(s, n, p);
  cfg.variant = Variant::DirectSum;
  return cfg;
}

BracketEngine makeEngine(const RealizationConfig& cfg) {
  checkConfig(cfg);
  const LieAlgebraSpec full = directSum(cfg.algebra, static_cast<std::size_t>(cfg.n));
  return BracketEngine(cfg.n, full, std::make_shared<AnsatzCentral>(full, cfg.stages));
}

LocalOperator buildDiffeo(const PolyVectorField& xiIn, const RealizationConfig& cfg, bool includeTdXi) {
  checkConfig(cfg);
  const int n = cfg.n;
  const auto xi = padded(xiIn, n);
  const LieAlgebraSpec full = directSum(cfg.algebra, static_cast<std::size_t>(n));
  LocalOperator op;
  op.addV(xi);
  for (int stage = 0; stage < static_cast<int>(cfg.stages.size()); ++stage) {
    const int p = stageOrder(cfg, stage);
    if (p < 0) continue;
    const auto jets = enumerateJets(n, p);
    // -xi^mu P_mu
    for (const auto& m : jets)
      for (int mu = 0; mu < n; ++mu) {
        const MultiIndex s = m + MultiIndex::unit(n, mu);
        if (s.order() <= p) op.addCurrent(currentE(stage, m, s), poly(-xi[mu]));
      }
    for (const auto& m : jets)
      for (const auto& nn : jets) {
        const auto d = m.minus(nn);
        if (!d) continue;
        const GQ c(Q(multibinom(m, nn)));
        for (int mu = 0; mu < n; ++mu) {
          const MultiIndex s = nn + MultiIndex::unit(n, mu);
          if (s.order() <= p) op.addCurrent(currentE(stage, m, s), poly(xi[mu].derivative(d->components()) * c));
        }
        if (!includeTdXi) continue;
        for (int nu = 0; nu < n; ++nu) {
          const MultiIndex dd = *d + MultiIndex::unit(n, nu);
          for (int mu = 0; mu < n; ++mu) {
            const Poly coeff = xi[mu].derivative(dd.components()) * c;
            if (!coeff.isZero()) op.addCurrent(currentT(full, stage, m, nn, nu, mu), poly(coeff));
          }
        }
      }
  }
  if (cfg.variant == Variant::Theorem2 && cfg.shift3 != 0)
    op.pure += poly(divergence(xi)) * (GQ(Q(0), -cfg.shift3 / 2));
  return op;
}

LocalOperator buildGauge(const PolyGaugeMap& x, const RealizationConfig& cfg) {
  checkConfig(cfg);
  const int n = cfg.n;
  const std::size_t dim = cfg.algebra.dim;
  if (x.size() > dim) throw std::invalid_argument("gauge map has more components than g");
  LocalOperator op;
  for (int stage = 0; stage < static_cast<int>(cfg.stages.size()); ++stage) {
    const int p = stageOrder(cfg, stage);
    if (p < 0) continue;
    const auto jets = enumerateJets(n, p);
    for (const auto& m : jets)
      for (const auto& nn : jets) {
        const auto d = m.minus(nn);
        if (!d) continue;
        const GQ c(Q(multibinom(m, nn)));
        for (std::size_t a = 0; a < x.size(); ++a) {
          const Poly coeff = x[a].derivative(d->components()) * c;
          if (!coeff.isZero()) op.addCurrent(currentJ(stage, m, nn, static_cast<int>(a)), poly(coeff));
        }
      }
  }
  if (cfg.variant == Variant::Theorem2 && cfg.shift6 != 0) {
    Poly dx;
    for (std::size_t a = 0; a < x.size(); ++a) dx += x[a] * cfg.algebra.casimir[a];
    op.pure += poly(dx) * (GQ(Q(0), -cfg.shift6 / 2));
  }
  return op;
}

LocalOperator buildRepar(const CircleField& f, const RealizationConfig& cfg) {
  checkConfig(cfg);
  const int n = cfg.n;
  LocalOperator op;
  op.kfield = f;
  if (f.isZero()) return op;
  if (cfg.variant == Variant::Theorem2) {
    const auto jets = enumerateJets(n, cfg.p);
    for (int mu = 0; mu < n; ++mu) {
      const Density a = f * poly(qdot(n, mu));
      for (const auto& m : jets) {
        const MultiIndex s = m + MultiIndex::unit(n, mu);
        if (s.order() <= cfg.p) op.addCurrent(currentE(0, m, s), a);
      }
    }
    return op;
  }
  for (int stage = 0; stage < static_cast<int>(cfg.stages.size()); ++stage)
    if (stageOrder(cfg, stage) >= 0) op.addCurrent(currentF(stage), f);
  if (cfg.variant == Variant::DeltaF && cfg.lambda != 0) {
    const Density a = (timeDerivative(f, n) - f * kI) * GQ(cfg.lambda);
    for (const auto& m : enumerateJets(n, cfg.p)) op.addCurrent(currentE(0, m, m), a);
  }
  return op;
}

LocalOperator buildGenerator(const Generator& g, const RealizationConfig& cfg) {
  switch (g.kind) {
    case Generator::Kind::Diffeo:
      return buildDiffeo(g.field, cfg);
    case Generator::Kind::Gauge:
      return buildGauge(g.field, cfg);
    case Generator::Kind::Repar:
      return buildRepar(g.f, cfg);
  }
  throw std::logic_error("unknown generator kind");
}

PolyGaugeMap gaugeAction(const PolyVectorField& xi, const PolyGaugeMap& x) {
  PolyGaugeMap out(x.size());
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t mu = 0; mu < xi.size(); ++mu) out[a] += xi[mu] * x[a].derivative(static_cast<int>(mu));
  return out;
}

PolyGaugeMap gaugeBracket(const LieAlgebraSpec& g, const PolyGaugeMap& x, const PolyGaugeMap& y) {
  PolyGaugeMap out(g.dim);
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b) {
      const Poly xy = x[a] * y[b];
      if (xy.isZero()) continue;
      for (std::size_t c = 0; c < g.dim; ++c)
        if (!g.f[a][b][c].isZero()) out[c] += xy * (kI * g.f[a][b][c]);
    }
  return out;
}

GeneratorBracket bracketGenerators(const Generator& a, const Generator& b, const RealizationConfig& cfg) {
  return bracketGenerators(a, b, cfg, makeEngine(cfg));
}

GeneratorBracket bracketGenerators(const Generator& a, const Generator& b, const RealizationConfig& cfg,
                                   const BracketEngine& engine) {
  using K = Generator::Kind;
  const BracketResult r = engine.bracket(buildGenerator(a, cfg), buildGenerator(b, cfg));
  GeneratorBracket out;
  out.regular = r.regular;
  if (a.kind == K::Diffeo && b.kind == K::Diffeo)
    out.expected = buildDiffeo(vectorFieldBracket(padded(a.field, cfg.n), padded(b.field, cfg.n)), cfg);
  else if (a.kind == K::Diffeo && b.kind == K::Gauge)
    out.expected = buildGauge(gaugeAction(a.field, b.field), cfg);
  else if (a.kind == K::Gauge && b.kind == K::Diffeo)
    out.expected = buildGauge(gaugeAction(b.field, a.field), cfg) * GQ(-1);
  else if (a.kind == K::Gauge && b.kind == K::Gauge)
    out.expected = buildGauge(gaugeBracket(cfg.algebra, a.field, b.field), cfg);
  else if (a.kind == K::Repar && b.kind == K::Repar)
    out.expected = buildRepar(circleBracket(a.f, b.f), cfg);
  out.extension = r.extension - out.expected.pure;
  out.regularMatches = r.regular.sameRegular(out.expected);
  if (!out.regularMatches) {
    LocalOperator diff = r.regular - out.expected;
    diff.pure = Density();
    out.mismatch = diff.str(engine.algebra(), cfg.n);
  }
  return out;
}

Density diffeoOnDensity(const PolyVectorField& xi, const Density& phi, const RealizationConfig& cfg) {
  LocalOperator d;
  d.pure = phi;
  return makeEngine(cfg).bracket(buildDiffeo(xi, cfg), d).extension;
}

Density templateC1(const PolyVectorField& xi, const PolyVectorField& eta, int n) {
  const auto x = padded(xi, n), e = padded(eta, n);
  Poly t;
  for (int rho = 0; rho < n; ++rho)
    for (int nu = 0; nu < n; ++nu)
      for (int mu = 0; mu < n; ++mu)
        t += qdot(n, rho) * x[mu].derivative(rho).derivative(nu) * e[nu].derivative(mu);
  return poly(t);
}

Density templateC2(const PolyVectorField& xi, const PolyVectorField& eta, int n) {
  const Poly dx = divergence(padded(xi, n)), de = divergence(padded(eta, n));
  Poly t;
  for (int rho = 0; rho < n; ++rho) t += qdot(n, rho) * dx.derivative(rho) * de;
  return poly(t);
}

namespace {

// (f'' - i f') / 2
Density halfShape(const CircleField& f, int n) {
  return (timeDerivative(f, n, 2) - timeDerivative(f, n) * kI) * GQ(Q(1, 2));
}

Poly casimirContraction(const LieAlgebraSpec& g, const PolyGaugeMap& x) {
  Poly t;
  for (std::size_t a = 0; a < x.size(); ++a) t += x[a] * g.casimir[a];
  return t;
}

Density gaugePairTemplate(const Matrix& weight, const PolyGaugeMap& x, const PolyGaugeMap& y, int n) {
  Poly t;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (weight[a][b].isZero()) continue;
      for (int rho = 0; rho < n; ++rho) t += qdot(n, rho) * x[a].derivative(rho) * y[b] * (-weight[a][b]);
    }
  return poly(t);
}

}  // namespace

Density templateC3(const CircleField& f, const PolyVectorField& xi, int n) {
  return halfShape(f, n) * poly(divergence(padded(xi, n)));
}

Density templateC4(const CircleField& f, const CircleField& g, int n) {
  return (timeDerivative(f, n, 2) * timeDerivative(g, n) - timeDerivative(f, n) * g) * GQ(Q(1, 12));
}

Density templateC5(const LieAlgebraSpec& g, const PolyGaugeMap& x, const PolyGaugeMap& y, int n) {
  return gaugePairTemplate(g.metric, x, y, n);
}

Density templateC6(const LieAlgebraSpec& g, const CircleField& f, const PolyGaugeMap& x, int n) {
  return halfShape(f, n) * poly(casimirContraction(g, x));
}

Density templateC7(const LieAlgebraSpec& g, const PolyVectorField& xi, const PolyGaugeMap& x, int n) {
  const Poly dx = divergence(padded(xi, n)), cx = casimirContraction(g, x);
  Poly t;
  for (int rho = 0; rho < n; ++rho) t += qdot(n, rho) * cx * dx.derivative(rho);
  return poly(t * GQ(-1));
}

Density templateC8(const LieAlgebraSpec& g, const PolyGaugeMap& x, const PolyGaugeMap& y, int n) {
  Matrix w = zeroMatrix(g.dim, g.dim);
  for (std::size_t a = 0; a < g.dim; ++a)
    for (std::size_t b = 0; b < g.dim; ++b) w[a][b] = g.casimir[a] * g.casimir[b];
  return gaugePairTemplate(w, x, y, n);
}

std::vector<TestPair> testFamily(const std::string& sector, const RealizationConfig& cfg) {
  const int n = cfg.n;
  const int last = n - 1;
  const std::size_t dim = cfg.algebra.dim;
  auto x = [&](int v) { return Poly::var(v); };
  auto field = [&](int mu, const Poly& c) {
    PolyVectorField xi(n);
    xi[mu] = c;
    return Generator::diffeo(xi);
  };
  auto uniform = [&](const Poly& c) { return Generator::gauge(PolyGaugeMap(dim, c)); };
  auto along = [&](std::size_t a, const Poly& c) {
    PolyGaugeMap m(dim);
    m[a] = c;
    return Generator::gauge(m);
  };
  auto wave = [](long k) { return Generator::repar(Density::mode(k)); };

  std::vector<TestPair> out;
  // Quadratic xi has linear divergence; the cubic ones probe the second
  // derivatives of the divergence.
  std::vector<Generator> rlFields;
  if (n == 1) {
    rlFields = {field(0, x(0) * x(0)), field(0, x(0) * x(0) * x(0))};
  } else {
    rlFields = {field(0, x(0) * x(0)), field(last, x(0) * x(0) * x(last))};
  }
  if (sector == "LL") {
    if (n == 1) {
      out = {{field(0, x(0) * x(0)), field(0, x(0) * x(0) * x(0))}, {field(0, x(0)), field(0, x(0) * x(0) * x(0))}};
    } else {
      out = {{field(0, x(0) * x(0)), field(1, x(1) * x(1))},
             {field(0, x(0) * x(1)), field(1, x(0) * x(1))},
             {field(1, x(0) * x(0) * x(1)), field(0, x(0) * x(1))},
             {field(1, x(0) * x(0) * x(0)), field(0, x(1) * x(1))}};
    }
  } else if (sector == "LJ") {
    out = {{field(0, x(0) * x(0)), uniform(x(last))}, {field(0, x(0) * x(0)), uniform(x(0) * x(last))}};
    if (n > 1) out.push_back({field(last, x(0) * x(last)), uniform(x(0))});
  } else if (sector == "JJ") {
    const Poly second = n == 1 ? x(0) * x(0) : x(last);
    for (std::size_t a = 0; a < dim; ++a) out.push_back({along(a, x(0)), along(a, second)});
    if (dim > 1) out.push_back({along(0, x(0)), along(1, second)});
  } else if (sector == "RL") {
    for (long k : {2L, -1L})
      for (const auto& xi : rlFields) out.push_back({wave(k), xi});
  } else if (sector == "RJ") {
    for (long k : {2L, -1L})
      for (const Poly& c : {x(0), x(0) * x(last)}) out.push_back({wave(k), uniform(c)});
  } else if (sector == "RR") {
    for (long m : {1L, 2L}) out.push_back({wave(m), wave(-m)});
  } else {
    throw std::invalid_argument("unknown sector " + sector);
  }
  return out;
}

namespace {

using ImageKey = std::tuple<int, long, Mono>;

std::map<ImageKey, GQ> flatImage(const Density& d, int n) {
  const EulerImage img = eulerImage(d, n);
  std::map<ImageKey, GQ> out;
  for (std::size_t mu = 0; mu < img.components.size(); ++mu)
    for (const auto& [k, p] : img.components[mu].modes())
      for (const auto& [mono, c] : p.terms()) out[{static_cast<int>(mu), k, mono}] = c;
  if (!img.constant.isZero()) out[{-1, 0, Mono{}}] = img.constant;
  return out;
}

struct FitResult {
  bool consistent = false;
  std::vector<GQ> x;
  std::vector<bool> determined;
};

// Least structure: sum_j x_j image(templates[i][j]) = image(targets[i]).
FitResult fit(const std::vector<std::vector<Density>>& templates, const std::vector<Density>& targets, int n) {
  const std::size_t unknowns = templates.empty() ? 0 : templates[0].size();
  Matrix a;
  std::vector<GQ> b;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::vector<std::map<ImageKey, GQ>> cols;
    std::map<ImageKey, GQ> rhs = flatImage(targets[i], n);
    std::map<ImageKey, bool> keys;
    for (const auto& [k, v] : rhs) keys[k] = true;
    for (const auto& t : templates[i]) {
      cols.push_back(flatImage(t, n));
      for (const auto& [k, v] : cols.back()) keys[k] = true;
    }
    for (const auto& [k, unused] : keys) {
      std::vector<GQ> row(unknowns);
      for (std::size_t j = 0; j < unknowns; ++j) {
        auto it = cols[j].find(k);
        if (it != cols[j].end()) row[j] = it->second;
      }
      a.push_back(row);
      auto it = rhs.find(k);
      b.push_back(it == rhs.end() ? GQ() : it->second);
    }
  }
  FitResult r;
  if (a.empty()) {
    r.consistent = true;
    r.x.assign(unknowns, GQ());
    r.determined.assign(unknowns, false);
    return r;
  }
  const LinearSolution s = solveLinear(a, b);
  r.consistent = s.consistent;
  r.x = s.x;
  r.determined = s.determined;
  if (r.x.size() < unknowns) r.x.resize(unknowns);
  if (r.determined.size() < unknowns) r.determined.resize(unknowns, false);
  return r;
}

std::vector<int> sectorCharges(const std::string& s) {
  if (s == "LL") return {1, 2};
  if (s == "LJ") return {7};
  if (s == "JJ") return {5, 8};
  if (s == "RL") return {3};
  if (s == "RJ") return {6};
  if (s == "RR") return {4};
  throw std::invalid_argument("unknown sector " + s);
}

std::vector<Density> sectorTemplates(const std::string& s, const TestPair& t, const RealizationConfig& cfg) {
  const int n = cfg.n;
  const auto& g = cfg.algebra;
  if (s == "LL") return {templateC1(t.a.field, t.b.field, n), templateC2(t.a.field, t.b.field, n)};
  if (s == "LJ") return {templateC7(g, t.a.field, t.b.field, n)};
  if (s == "JJ") return {templateC5(g, t.a.field, t.b.field, n), templateC8(g, t.a.field, t.b.field, n)};
  if (s == "RL") return {templateC3(t.a.f, t.b.field, n)};
  if (s == "RJ") return {templateC6(g, t.a.f, t.b.field, n)};
  return {templateC4(t.a.f, t.b.f, n)};
}

// The f'' and -i f' halves of the reparametrization templates.
std::vector<Density> splitTemplates(const std::string& s, const TestPair& t, const RealizationConfig& cfg) {
  const int n = cfg.n;
  const Poly w = s == "RL" ? divergence(padded(t.b.field, n)) : casimirContraction(cfg.algebra, t.b.field);
  const Density f2 = timeDerivative(t.a.f, n, 2) * GQ(Q(1, 2));
  const Density f1 = timeDerivative(t.a.f, n) * GQ(Q(0), Q(-1, 2));
  return {f2 * poly(w), f1 * poly(w)};
}

}  // namespace

ChargeExtraction extractCharges(const RealizationConfig& cfg) {
  return extractCharges(cfg, {"LL", "LJ", "JJ", "RL", "RJ", "RR"});
}

ChargeExtraction extractCharges(const RealizationConfig& cfg, const std::vector<std::string>& sectors) {
  const BracketEngine engine = makeEngine(cfg);
  ChargeExtraction out;
  out.consistent = true;
  for (const auto& name : sectors) {
    SectorFit sf;
    sf.sector = name;
    sf.charges = sectorCharges(name);
    std::vector<std::vector<Density>> temps, split;
    std::vector<Density> targets;
    for (const auto& pair : testFamily(name, cfg)) {
      const GeneratorBracket gb = bracketGenerators(pair.a, pair.b, cfg, engine);
      ++sf.brackets;
      if (!gb.regularMatches) out.failures.push_back(name + " regular part mismatch: " + gb.mismatch);
      targets.push_back(gb.extension);
      temps.push_back(sectorTemplates(name, pair, cfg));
      if (name == "RL" || name == "RJ") split.push_back(splitTemplates(name, pair, cfg));
    }
    const FitResult r = fit(temps, targets, cfg.n);
    sf.consistent = r.consistent;
    sf.values = r.x;
    sf.determined = r.determined;
    if (!split.empty()) {
      const FitResult s2 = fit(split, targets, cfg.n);
      sf.splitConsistent = s2.consistent;
      if (s2.consistent) sf.splitValues = s2.x;
    }
    if (!r.consistent) {
      out.consistent = false;
      out.failures.push_back("extension not of DGRO cocycle shape in sector " + name);
    }
    for (std::size_t j = 0; j < sf.charges.size(); ++j) {
      const int c = sf.charges[j];
      if (!r.consistent || !sf.determined[j]) continue;
      if (!sf.values[j].isReal()) {
        out.failures.push_back("charge c" + std::to_string(c) + " is not real");
        continue;
      }
      out.charges(c) = sf.values[j].re;
      out.determined[c - 1] = true;
    }
    out.sectors.push_back(std::move(sf));
  }
  return out;
}

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix zeroPoly(std::size_t r, std::size_t c) { return PolyMatrix(r, std::vector<Poly>(c)); }

PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out = zeroPoly(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].isZero()) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j)
        if (!b[k][j].isZero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

// xi^mu d_mu applied entrywise.
PolyMatrix transport(const PolyVectorField& xi, const PolyMatrix& a) {
  PolyMatrix out = zeroPoly(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      for (std::size_t mu = 0; mu < xi.size(); ++mu)
        if (!a[i][j].isZero()) out[i][j] += xi[mu] * a[i][j].derivative(static_cast<int>(mu));
  return out;
}

// xi d A(eta) - eta d A(xi) + [A(xi), A(eta)] - A([xi, eta])
PolyMatrix closureDefect(const PolyVectorField& xi, const PolyVectorField& eta, const PolyMatrix& ax,
                         const PolyMatrix& ae, const PolyMatrix& ab) {
  PolyMatrix out = transport(xi, ae);
  const PolyMatrix t2 = transport(eta, ax), xe = mul(ax, ae), ex = mul(ae, ax);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] += xe[i][j] - ex[i][j] - t2[i][j] - ab[i][j];
  return out;
}

const Matrix& glMatrix(const RepSpec& rho, int n, int nu, int mu) { return rho.gens.at(nu * n + mu); }

// d_nu xi^mu rho(T^nu_mu)
PolyMatrix lembMatrix(const PolyVectorField& xi, const RepSpec& rho, int n) {
  PolyMatrix out = zeroPoly(rho.dim, rho.dim);
  for (int nu = 0; nu < n; ++nu)
    for (int mu = 0; mu < n; ++mu) {
      const Poly c = xi[mu].derivative(nu);
      if (c.isZero()) continue;
      const Matrix& t = glMatrix(rho, n, nu, mu);
      for (std::size_t i = 0; i < rho.dim; ++i)
        for (std::size_t j = 0; j < rho.dim; ++j)
          if (!t[i][j].isZero()) out[i][j] += c * t[i][j];
    }
  return out;
}

struct JetMatrix {
  PolyMatrix a;
  std::vector<std::string> orderRaising;
};

// Rows m with |m| <= p, columns k with |k| <= p + 1 before truncation.
JetMatrix jetMatrix(const PolyVectorField& xiIn, int n, int p, const RepSpec& rho) {
  const auto xi = padded(xiIn, n);
  const auto rows = enumerateJets(n, p), cols = enumerateJets(n, p + 1);
  const std::size_t d = rho.dim;
  std::map<MultiIndex, std::size_t> colIndex;
  for (std::size_t i = 0; i < cols.size(); ++i) colIndex[cols[i]] = i;
  PolyMatrix big = zeroPoly(rows.size() * d, cols.size() * d);
  auto addScalar = [&](std::size_t r, std::size_t c, const Poly& v) {
    for (std::size_t i = 0; i < d; ++i) big[r * d + i][c * d + i] += v;
  };
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const MultiIndex& m = rows[r];
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const MultiIndex& k = cols[c];
      if (auto diff = m.minus(k)) {
        const GQ bin(Q(multibinom(m, k)));
        for (int nu = 0; nu < n; ++nu)
          for (int mu = 0; mu < n; ++mu) {
            const Poly v = xi[mu].derivative((*diff + MultiIndex::unit(n, nu)).components()) * bin;
            if (v.isZero()) continue;
            const Matrix& t = glMatrix(rho, n, nu, mu);
            for (std::size_t i = 0; i < d; ++i)
              for (std::size_t j = 0; j < d; ++j)
                if (!t[i][j].isZero()) big[r * d + i][c * d + j] += v * t[i][j];
          }
      }
      for (int mu = 0; mu < n; ++mu) {
        const auto kmu = k.minus(MultiIndex::unit(n, mu));
        if (!kmu) continue;
        const auto diff = m.minus(*kmu);
        if (!diff) continue;
        const Poly v = xi[mu].derivative(diff->components()) * GQ(Q(multibinom(m, *kmu)));
        addScalar(r, c, v);
      }
    }
    for (int mu = 0; mu < n; ++mu) addScalar(r, colIndex.at(m + MultiIndex::unit(n, mu)), -xi[mu]);
  }
  JetMatrix out;
  const std::size_t keep = enumerateJets(n, p).size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = keep; c < cols.size(); ++c)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (!big[r * d + i][c * d + j].isZero())
            out.orderRaising.push_back("T^" + cols[c].str() + "_" + rows[r].str());
  out.a = zeroPoly(rows.size() * d, keep * d);
  for (std::size_t i = 0; i < rows.size() * d; ++i)
    for (std::size_t j = 0; j < keep * d; ++j) out.a[i][j] = big[i][j];
  // Entries with |k| > |m| inside the kept block must vanish as well.
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < keep; ++c) {
      if (cols[c].order() <= rows[r].order()) continue;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (!big[r * d + i][c * d + j].isZero())
            out.orderRaising.push_back("T^" + cols[c].str() + "_" + rows[r].str());
    }
  return out;
}

}  // namespace

JetActionReport verifyJetAction(const PolyVectorField& xiIn, const PolyVectorField& etaIn, int n, int p,
                                const RepSpec& rho) {
  if (rho.gens.size() != static_cast<std::size_t>(n * n))
    throw std::invalid_argument("rho must be a representation of gl(N)");
  const auto xi = padded(xiIn, n), eta = padded(etaIn, n);
  const auto bracket = vectorFieldBracket(xi, eta);
  const JetMatrix ax = jetMatrix(xi, n, p, rho), ae = jetMatrix(eta, n, p, rho), ab = jetMatrix(bracket, n, p, rho);
  JetActionReport rep;
  for (const auto* jm : {&ax, &ae, &ab})
    rep.orderRaising.insert(rep.orderRaising.end(), jm->orderRaising.begin(), jm->orderRaising.end());
  const PolyMatrix defect = closureDefect(xi, eta, ax.a, ae.a, ab.a);
  const auto rows = enumerateJets(n, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    ++rep.rowsChecked;
    bool ok = true;
    for (std::size_t i = 0; i < rho.dim; ++i)
      for (const Poly& v : defect[r * rho.dim + i]) ok = ok && v.isZero();
    if (!ok) rep.failures.push_back("closure fails at jet " + rows[r].str());
  }
  return rep;
}

bool verifyLembClosure(const PolyVectorField& xiIn, const PolyVectorField& etaIn, const RepSpec& rho) {
  const int n = static_cast<int>(std::max(xiIn.size(), etaIn.size()));
  const auto xi = padded(xiIn, n), eta = padded(etaIn, n);
  const PolyMatrix d = closureDefect(xi, eta, lembMatrix(xi, rho, n), lembMatrix(eta, rho, n),
                                     lembMatrix(vectorFieldBracket(xi, eta), rho, n));
  for (const auto& row : d)
    for (const Poly& v : row)
      if (!v.isZero()) return false;
  return true;
}

}  // namespace dgro
