#include "dgro/liealgebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgro {

namespace {

using Tensor3 = std::vector<std::vector<std::vector<GQ>>>;

Tensor3 zeroTensor(std::size_t n) {
  return Tensor3(n, std::vector<std::vector<GQ>>(n, std::vector<GQ>(n)));
}

std::string triple(std::size_t a, std::size_t b, std::size_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Q realOrThrow(const GQ& z, const std::string& what) {
  if (!z.isReal())
    throw std::invalid_argument("representation outside the ansatz: " + what + " is not real");
  return z.re;
}

}  // namespace

std::string LieAlgebraSpec::generatorName(std::size_t a) const {
  if (!isGl(a)) return "J" + std::to_string(a);
  auto [mu, nu] = glPair(a);
  return "T" + std::to_string(mu) + "_" + std::to_string(nu);
}

ValidationReport validateAlgebra(const LieAlgebraSpec& g) {
  ValidationReport rep;
  const std::size_t n = g.dim;
  auto bad = [&](const std::string& s) { rep.failures.push_back(s); };
  if (g.f.size() != n || g.metric.size() != n || g.casimir.size() != n) {
    bad("shape: arrays do not match dimension " + std::to_string(n));
    return rep;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (g.f[a].size() != n || g.metric[a].size() != n) {
      bad("shape: row " + std::to_string(a));
      return rep;
    }
    for (std::size_t b = 0; b < n; ++b)
      if (g.f[a][b].size() != n) {
        bad("shape: f" + triple(a, b, 0));
        return rep;
      }
  }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c)
        if (g.f[a][b][c] != -g.f[b][a][c]) bad("antisymmetry " + triple(a, b, c));
      if (g.metric[a][b] != g.metric[b][a]) bad("metric symmetry (" + std::to_string(a) + "," + std::to_string(b) + ")");
      GQ cas;
      for (std::size_t c = 0; c < n; ++c) cas += g.f[a][b][c] * g.casimir[c];
      if (!cas.isZero()) bad("linear Casimir (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t e = 0; e < n; ++e) {
          GQ s;
          for (std::size_t d = 0; d < n; ++d)
            s += g.f[a][b][d] * g.f[d][c][e] + g.f[b][c][d] * g.f[d][a][e] + g.f[c][a][d] * g.f[d][b][e];
          if (!s.isZero()) {
            bad("Jacobi " + triple(a, b, c));
            break;
          }
        }
        GQ inv;
        for (std::size_t d = 0; d < n; ++d)
          inv += g.f[c][a][d] * g.metric[d][b] + g.f[c][b][d] * g.metric[a][d];
        if (!inv.isZero()) bad("ad-invariance " + triple(a, b, c));
      }
  return rep;
}

ValidationReport validateRep(const LieAlgebraSpec& g, const RepSpec& rep) {
  ValidationReport out;
  if (rep.gens.size() != g.dim) {
    out.failures.push_back("representation has " + std::to_string(rep.gens.size()) +
                           " generators, algebra has " + std::to_string(g.dim));
    return out;
  }
  for (const auto& m : rep.gens)
    if (m.size() != rep.dim || (rep.dim && m[0].size() != rep.dim)) {
      out.failures.push_back("generator matrix is not " + std::to_string(rep.dim) + "x" + std::to_string(rep.dim));
      return out;
    }
  for (std::size_t a = 0; a < g.dim; ++a)
    for (std::size_t b = a + 1; b < g.dim; ++b) {
      Matrix rhs = zeroMatrix(rep.dim, rep.dim);
      for (std::size_t c = 0; c < g.dim; ++c)
        if (!g.f[a][b][c].isZero()) rhs = matAdd(rhs, matScale(rep.gens[c], GQ::I() * g.f[a][b][c]));
      if (commutator(rep.gens[a], rep.gens[b]) != rhs)
        out.failures.push_back("bracket (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  return out;
}

LieAlgebraSpec u1Algebra(const Q& delta) {
  LieAlgebraSpec g;
  g.name = "u1";
  g.dim = g.gDim = 1;
  g.f = zeroTensor(1);
  g.metric = identityMatrix(1);
  g.casimir = {GQ(delta)};
  return g;
}

LieAlgebraSpec su2Algebra() {
  LieAlgebraSpec g;
  g.name = "su2";
  g.dim = g.gDim = 3;
  g.f = zeroTensor(3);
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    g.f[a][b][c] = 1;
    g.f[b][a][c] = -1;
  }
  g.metric = identityMatrix(3);
  g.casimir.assign(3, GQ());
  return g;
}

LieAlgebraSpec glAlgebra(std::size_t n) {
  LieAlgebraSpec g;
  g.name = "gl" + std::to_string(n);
  g.glN = n;
  g.dim = n * n;
  g.f = zeroTensor(g.dim);
  g.metric = zeroMatrix(g.dim, g.dim);
  g.casimir.assign(g.dim, GQ());
  const GQ i = GQ::I();
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu) {
      std::size_t a = g.glIndex(mu, nu);
      g.casimir[a] = mu == nu ? 1 : 0;
      for (std::size_t rho = 0; rho < n; ++rho)
        for (std::size_t sg = 0; sg < n; ++sg) {
          std::size_t b = g.glIndex(rho, sg);
          // [T^mu_nu, T^rho_sg] = d^rho_nu T^mu_sg - d^mu_sg T^rho_nu = i f T.
          if (rho == nu) g.f[a][b][g.glIndex(mu, sg)] -= i;
          if (mu == sg) g.f[a][b][g.glIndex(rho, nu)] += i;
          if (mu == sg && rho == nu) g.metric[a][b] = 1;
        }
    }
  return g;
}

LieAlgebraSpec sumAlgebras(const LieAlgebraSpec& x, const LieAlgebraSpec& y) {
  if (x.glN || y.glN) throw std::invalid_argument("sumAlgebras: inputs must not contain gl(N) blocks");
  LieAlgebraSpec g;
  g.name = x.name + "+" + y.name;
  g.dim = g.gDim = x.dim + y.dim;
  g.f = zeroTensor(g.dim);
  g.metric = zeroMatrix(g.dim, g.dim);
  g.casimir.assign(g.dim, GQ());
  auto place = [&](const LieAlgebraSpec& s, std::size_t off) {
    for (std::size_t a = 0; a < s.dim; ++a) {
      g.casimir[off + a] = s.casimir[a];
      for (std::size_t b = 0; b < s.dim; ++b) {
        g.metric[off + a][off + b] = s.metric[a][b];
        for (std::size_t c = 0; c < s.dim; ++c) g.f[off + a][off + b][off + c] = s.f[a][b][c];
      }
    }
  };
  place(x, 0);
  place(y, x.dim);
  return g;
}

LieAlgebraSpec directSum(const LieAlgebraSpec& g, std::size_t n) {
  if (g.glN) throw std::invalid_argument("directSum: input already has a gl(N) block");
  LieAlgebraSpec gl = glAlgebra(n);
  LieAlgebraSpec s;
  s.name = g.name + "+gl" + std::to_string(n);
  s.gDim = g.dim;
  s.glN = n;
  s.dim = g.dim + gl.dim;
  s.f = zeroTensor(s.dim);
  s.metric = zeroMatrix(s.dim, s.dim);
  s.casimir.assign(s.dim, GQ());
  for (std::size_t a = 0; a < g.dim; ++a) {
    s.casimir[a] = g.casimir[a];
    for (std::size_t b = 0; b < g.dim; ++b) {
      s.metric[a][b] = g.metric[a][b];
      for (std::size_t c = 0; c < g.dim; ++c) s.f[a][b][c] = g.f[a][b][c];
    }
  }
  const std::size_t o = g.dim;
  for (std::size_t a = 0; a < gl.dim; ++a) {
    s.casimir[o + a] = gl.casimir[a];
    for (std::size_t b = 0; b < gl.dim; ++b) {
      s.metric[o + a][o + b] = gl.metric[a][b];
      for (std::size_t c = 0; c < gl.dim; ++c) s.f[o + a][o + b][o + c] = gl.f[a][b][c];
    }
  }
  return s;
}

RepSpec trivialRep(const LieAlgebraSpec& g, std::size_t dim) {
  RepSpec r;
  r.name = "trivial" + std::to_string(dim);
  r.dim = dim;
  r.gens.assign(g.dim, zeroMatrix(dim, dim));
  return r;
}

RepSpec su2Fundamental() {
  RepSpec r;
  r.name = "su2-fundamental";
  r.dim = 2;
  const Q h(1, 2);
  Matrix j1 = zeroMatrix(2, 2), j2 = zeroMatrix(2, 2), j3 = zeroMatrix(2, 2);
  j1[0][1] = j1[1][0] = GQ(h);
  j2[0][1] = GQ(Q(0), -h);
  j2[1][0] = GQ(Q(0), h);
  j3[0][0] = GQ(h);
  j3[1][1] = GQ(-h);
  r.gens = {j1, j2, j3};
  return r;
}

RepSpec u1Rep(const Q& charge) {
  RepSpec r;
  r.name = "u1-charge";
  r.dim = 1;
  r.gens = {Matrix{{GQ(charge)}}};
  return r;
}

RepSpec glVectorRep(std::size_t n) {
  RepSpec r;
  r.name = "gl" + std::to_string(n) + "-vector";
  r.dim = n;
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu) {
      Matrix e = zeroMatrix(n, n);
      e[mu][nu] = 1;
      r.gens.push_back(e);
    }
  return r;
}

RepSpec concatRep(const RepSpec& a, const RepSpec& b) {
  if (a.dim != b.dim) throw std::invalid_argument("concatRep: dimension mismatch");
  RepSpec r;
  r.name = a.name + "+" + b.name;
  r.dim = a.dim;
  r.gens = a.gens;
  r.gens.insert(r.gens.end(), b.gens.begin(), b.gens.end());
  return r;
}

EnvelopingLabel EnvelopingLabel::single(int a) {
  EnvelopingLabel l;
  l.idx = {a};
  return l;
}

EnvelopingLabel EnvelopingLabel::pair(int a, int b) {
  EnvelopingLabel l;
  l.idx = {std::min(a, b), std::max(a, b)};
  return l;
}

std::string EnvelopingLabel::str(const LieAlgebraSpec& g) const {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + g.generatorName(idx[i]);
  return s + ")";
}

LabelCoeffs envelopingProduct(const LieAlgebraSpec& g, const EnvelopingLabel& a, const EnvelopingLabel& b) {
  if (a.size() == 0) return {{b, GQ(1)}};
  if (b.size() == 0) return {{a, GQ(1)}};
  if (a.size() + b.size() > 2) throw std::out_of_range("truncation order exceeded");
  const int x = a.idx[0], y = b.idx[0];
  LabelCoeffs out;
  const GQ half_i(Q(0), Q(1, 2));
  for (std::size_t c = 0; c < g.dim; ++c)
    if (!g.f[x][y][c].isZero()) out[EnvelopingLabel::single(static_cast<int>(c))] += half_i * g.f[x][y][c];
  out[EnvelopingLabel::pair(x, y)] += GQ(1);
  return out;
}

Matrix labelMatrix(const RepSpec& rep, const EnvelopingLabel& a) {
  if (a.size() == 0) return identityMatrix(rep.dim);
  if (a.size() == 1) return rep.gens.at(a.idx[0]);
  if (a.size() == 2) {
    const Matrix &x = rep.gens.at(a.idx[0]), &y = rep.gens.at(a.idx[1]);
    return matScale(matAdd(matMul(x, y), matMul(y, x)), GQ(Q(1, 2)));
  }
  throw std::out_of_range("truncation order exceeded");
}

TraceParams traceParams(const LieAlgebraSpec& g, const RepSpec& m, std::size_t n, const RepSpec& rho) {
  if (g.glN) throw std::invalid_argument("traceParams: pass the plain algebra g");
  if (m.gens.size() != g.dim) throw std::invalid_argument("traceParams: M does not match g");
  if (rho.gens.size() != n * n) throw std::invalid_argument("traceParams: rho is not a gl(N) representation");

  TraceParams tp;
  tp.dimM = m.dim;
  tp.dimRho = rho.dim;
  const GQ dM(static_cast<long>(m.dim)), dR(static_cast<long>(rho.dim));
  const Matrix oneM = identityMatrix(m.dim), oneR = identityMatrix(rho.dim);
  std::vector<Matrix> J, T;
  for (const auto& x : m.gens) J.push_back(kron(x, oneR));
  for (const auto& x : rho.gens) T.push_back(kron(oneM, x));
  auto tIdx = [&](std::size_t mu, std::size_t nu) { return mu * n + nu; };
  auto delta = [](std::size_t a, std::size_t b) { return GQ(a == b ? 1 : 0); };

  // Each block is a linear system in its own unknowns.
  auto solve = [&](const Matrix& a, const std::vector<GQ>& b, const std::vector<std::string>& names,
                   const std::string& what) {
    auto s = solveLinear(a, b);
    if (!s.consistent) throw std::invalid_argument("representation outside the ansatz: " + what);
    std::vector<Q> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
      out.push_back(realOrThrow(s.x[i], names[i]));
      if (!s.determined[i]) tp.undetermined.push_back(names[i]);
    }
    return out;
  };

  if (trace(kron(oneM, oneR)) != dM * dR) throw std::logic_error("traceParams: tr 1");

  Matrix a;
  std::vector<GQ> b;
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu) {
      a.push_back({delta(mu, nu) * dM});
      b.push_back(trace(T[tIdx(mu, nu)]));
    }
  tp.k0 = solve(a, b, {"k0"}, "tr T")[0];

  a.clear();
  b.clear();
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu)
      for (std::size_t sg = 0; sg < n; ++sg)
        for (std::size_t tau = 0; tau < n; ++tau) {
          a.push_back({delta(mu, tau) * delta(sg, nu) * dM, delta(mu, nu) * delta(sg, tau) * dM});
          b.push_back(trace(matMul(T[tIdx(mu, nu)], T[tIdx(sg, tau)])));
        }
  auto k12 = solve(a, b, {"k1rho", "k2rho"}, "tr T T");
  tp.k1rho = k12[0];
  tp.k2rho = k12[1];

  a.clear();
  b.clear();
  for (std::size_t x = 0; x < g.dim; ++x) {
    a.push_back({dR * g.casimir[x]});
    b.push_back(trace(J[x]));
  }
  tp.zM = solve(a, b, {"zM"}, "tr J")[0];

  a.clear();
  b.clear();
  for (std::size_t x = 0; x < g.dim; ++x)
    for (std::size_t y = 0; y < g.dim; ++y) {
      a.push_back({dR * g.metric[x][y], dR * g.casimir[x] * g.casimir[y]});
      b.push_back(trace(matMul(J[x], J[y])));
    }
  auto yw = solve(a, b, {"yM", "wM"}, "tr J J");
  tp.yM = yw[0];
  tp.wM = yw[1];

  for (std::size_t x = 0; x < g.dim; ++x)
    for (std::size_t mu = 0; mu < n; ++mu)
      for (std::size_t nu = 0; nu < n; ++nu) {
        GQ expect = GQ(tp.zM * tp.k0) * delta(mu, nu) * g.casimir[x];
        if (trace(matMul(J[x], T[tIdx(mu, nu)])) != expect)
          throw std::invalid_argument("representation outside the ansatz: tr J T");
      }
  return tp;
}

GQ parseComplex(const nlohmann::json& j) {
  auto part = [](const nlohmann::json& v) -> Q {
    if (v.is_string()) return parseRational(v.get<std::string>());
    if (v.is_number_integer()) return Q(v.get<long>());
    throw std::invalid_argument("expected rational string or integer, got " + v.dump());
  };
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
    return GQ(part(j[0]), part(j[1]));
  }
  return GQ(part(j));
}

LieAlgebraSpec loadAlgebra(const nlohmann::json& j) {
  if (j.contains("preset")) {
    std::string p = j["preset"].get<std::string>();
    LieAlgebraSpec g;
    if (p == "su2") g = su2Algebra();
    else if (p == "u1") g = u1Algebra(j.contains("delta") ? parseComplex(j["delta"]).re : Q(1));
    else if (p == "u1+su2") g = sumAlgebras(u1Algebra(j.contains("delta") ? parseComplex(j["delta"]).re : Q(1)), su2Algebra());
    else throw std::invalid_argument("unknown algebra preset '" + p + "'");
    return g;
  }
  LieAlgebraSpec g;
  g.name = j.value("name", "custom");
  g.dim = g.gDim = j.at("dim").get<std::size_t>();
  g.f = zeroTensor(g.dim);
  const auto& f = j.at("structure_constants");
  const auto& met = j.at("metric");
  const auto& cas = j.at("casimir");
  if (f.size() != g.dim || met.size() != g.dim || cas.size() != g.dim)
    throw std::invalid_argument("algebra arrays do not match dim");
  g.metric = zeroMatrix(g.dim, g.dim);
  for (std::size_t a = 0; a < g.dim; ++a) {
    g.casimir.push_back(parseComplex(cas[a]));
    if (f[a].size() != g.dim || met[a].size() != g.dim) throw std::invalid_argument("algebra arrays do not match dim");
    for (std::size_t b = 0; b < g.dim; ++b) {
      g.metric[a][b] = parseComplex(met[a][b]);
      if (f[a][b].size() != g.dim) throw std::invalid_argument("algebra arrays do not match dim");
      for (std::size_t c = 0; c < g.dim; ++c) g.f[a][b][c] = parseComplex(f[a][b][c]);
    }
  }
  return g;
}

RepSpec loadRep(const nlohmann::json& j) {
  if (j.contains("preset")) {
    std::string p = j["preset"].get<std::string>();
    if (p == "su2-fundamental") return su2Fundamental();
    if (p == "gl-vector") return glVectorRep(j.at("n").get<std::size_t>());
    if (p == "u1-charge") return u1Rep(parseComplex(j.at("charge")).re);
    throw std::invalid_argument("unknown representation preset '" + p + "'");
  }
  RepSpec r;
  r.name = j.value("name", "custom");
  r.dim = j.at("dim").get<std::size_t>();
  for (const auto& m : j.at("matrices")) {
    if (m.size() != r.dim) throw std::invalid_argument("matrix row count != dim");
    Matrix x = zeroMatrix(r.dim, r.dim);
    for (std::size_t i = 0; i < r.dim; ++i) {
      if (m[i].size() != r.dim) throw std::invalid_argument("matrix column count != dim");
      for (std::size_t k = 0; k < r.dim; ++k) x[i][k] = parseComplex(m[i][k]);
    }
    r.gens.push_back(x);
  }
  return r;
}

nlohmann::json toJson(const LieAlgebraSpec& g) {
  auto c = [](const GQ& z) {
    return z.isReal() ? nlohmann::json(toString(z.re)) : nlohmann::json::array({toString(z.re), toString(z.im)});
  };
  nlohmann::json j;
  j["name"] = g.name;
  j["dim"] = g.dim;
  auto& f = j["structure_constants"] = nlohmann::json::array();
  auto& met = j["metric"] = nlohmann::json::array();
  auto& cas = j["casimir"] = nlohmann::json::array();
  for (std::size_t a = 0; a < g.dim; ++a) {
    cas.push_back(c(g.casimir[a]));
    nlohmann::json fa = nlohmann::json::array(), ma = nlohmann::json::array();
    for (std::size_t b = 0; b < g.dim; ++b) {
      ma.push_back(c(g.metric[a][b]));
      nlohmann::json fab = nlohmann::json::array();
      for (std::size_t k = 0; k < g.dim; ++k) fab.push_back(c(g.f[a][b][k]));
      fa.push_back(fab);
    }
    f.push_back(fa);
    met.push_back(ma);
  }
  return j;
}

}  // namespace dgro
