#include "dgro/charges.hpp"

#include "dgro/multiindex.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace dgro {

namespace {

Q bq(long a, long b) { return Q(binom(a, b)); }

Q sign(int i) { return i % 2 == 0 ? Q(1) : Q(-1); }

// (-1)^i C(r, i)
Q alt(int r, int i) { return sign(i) * bq(r, i); }

using Field = Q CentralParamsTable::*;

const std::array<std::pair<const char*, Field>, 12> kFields = {{
    {"k1", &CentralParamsTable::k1},
    {"k2", &CentralParamsTable::k2},
    {"k3", &CentralParamsTable::k3},
    {"k4", &CentralParamsTable::k4},
    {"k5", &CentralParamsTable::k5},
    {"k6", &CentralParamsTable::k6},
    {"k7", &CentralParamsTable::k7},
    {"k8", &CentralParamsTable::k8},
    {"d0", &CentralParamsTable::d0},
    {"d1", &CentralParamsTable::d1},
    {"d2", &CentralParamsTable::d2},
    {"c", &CentralParamsTable::cNp},
}};

std::vector<Q> family(const StagedParams& s, Field f) {
  std::vector<Q> out;
  for (const auto& t : s.perStage) out.push_back(t.*f);
  return out;
}

// sum_{j=0}^{upto} v[j]; empty for upto < 0.
Q prefix(const std::vector<Q>& v, int upto) {
  Q s = 0;
  for (int j = 0; j <= upto && j < static_cast<int>(v.size()); ++j) s += v[j];
  return s;
}

// sum_{j=0}^{upto} sum_{l=0}^{j} v[l]
Q doublePrefix(const std::vector<Q>& v, int upto) {
  Q s = 0;
  for (int j = 0; j <= upto; ++j) s += prefix(v, j);
  return s;
}

}  // namespace

std::string ChargeVector::str() const {
  std::ostringstream os;
  for (int j = 1; j <= 8; ++j) os << (j > 1 ? " " : "") << "c" << j << "=" << toString((*this)(j));
  return os.str();
}

ChargeVector operator+(const ChargeVector& a, const ChargeVector& b) {
  ChargeVector r;
  for (int j = 0; j < 8; ++j) r.c[j] = a.c[j] + b.c[j];
  return r;
}

ChargeVector theorem1Charges(const CentralParamsTable& k, int n, int p) {
  const Q c0 = bq(n + p, n), c1 = bq(n + p, n + 1), c2 = bq(n + p, n + 2);
  ChargeVector c;
  c(1) = 1 - k.k1 * c0 - k.k4 * bq(n + p + 1, n + 2);
  c(2) = -k.k2 * c0 - 2 * k.k3 * c1 - k.k4 * c2;
  c(3) = 1 + k.d1 * c0 + k.d0 * c1;
  c(4) = 2 * n + k.cNp;
  c(5) = k.k5 * c0;
  c(6) = k.d2 * c0;
  c(7) = k.k7 * c0 + k.k6 * c1;
  c(8) = k.k8 * c0;
  return c;
}

ChargeVector deltaShiftCharges(const Q& lambda, const CentralParamsTable& k, int n, int p) {
  const Q c0 = bq(n + p, n), c1 = bq(n + p, n + 1);
  ChargeVector c;
  c(3) = -2 * lambda * (k.k3 * c0 + k.k4 * c1);
  c(4) = 12 * (lambda * k.d0 - lambda * lambda * k.k4) * c0;
  c(6) = -2 * lambda * k.k6 * c0;
  return c;
}

ChargeVector theorem2Charges(const CentralParamsTable& k, int n, int p) {
  ChargeVector c = theorem1Charges(k, n, p);
  c(3) = 1 + 2 * k.k3 * bq(n + p, n + 1) + 2 * k.k4 * bq(n + p, n + 2);
  c(4) = 2 * n;
  c(6) = 2 * k.k6 * bq(n + p, n + 1);
  return c;
}

CentralParamsTable krealParams(const LieAlgebraSpec& g, const RepSpec& rho, const RepSpec& m, int n,
                               int p, Statistics stats) {
  const TraceParams t = traceParams(g, m, static_cast<std::size_t>(n), rho);
  const Q dr(static_cast<long>(t.dimRho)), dm(static_cast<long>(t.dimM));
  CentralParamsTable k;
  k.k1 = t.k1rho * dm;
  k.k2 = t.k2rho * dm;
  k.k3 = t.k0 * dm;
  k.k4 = dr * dm;
  k.k5 = t.yM * dr;
  k.k6 = t.zM * dr;
  k.k7 = t.zM * t.k0;
  k.k8 = t.wM * dr;
  k.d0 = dr * dm;
  k.d1 = t.k0 * dm;
  k.d2 = t.zM * dr;
  k.cNp = -dr * dm * bq(n + p, n);
  if (stats == Statistics::Bosonic)
    for (const auto& [name, f] : kFields) k.*f = -(k.*f);
  return k;
}

std::vector<std::string> theorem3Violations(const StagedParams& s) {
  std::vector<std::string> bad;
  const int r = s.r;
  if (static_cast<int>(s.perStage.size()) != r + 1) return {"stage count is not r+1"};
  auto fam = [&](Field f) { return family(s, f); };
  const auto k1 = fam(&CentralParamsTable::k1), k2 = fam(&CentralParamsTable::k2),
             k3 = fam(&CentralParamsTable::k3), k4 = fam(&CentralParamsTable::k4),
             k5 = fam(&CentralParamsTable::k5), k6 = fam(&CentralParamsTable::k6),
             k7 = fam(&CentralParamsTable::k7), k8 = fam(&CentralParamsTable::k8),
             d0 = fam(&CentralParamsTable::d0), d1 = fam(&CentralParamsTable::d1),
             d2 = fam(&CentralParamsTable::d2), c = fam(&CentralParamsTable::cNp);
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  // 2 k3^(j) + kbar4^(j-1)
  auto mixed = [&](int j) -> Q { return 2 * k3[j] + prefix(k4, j - 1); };
  Q mixedSum = 0;
  for (int i = 0; i <= r; ++i) mixedSum += mixed(i);
  Q k4Double = 0;
  for (int i = 0; i <= r - 1; ++i) k4Double += prefix(k4, i);

  for (int i = 0; i <= r; ++i) {
    const std::string at = " at i=" + std::to_string(i);
    check(k1[i] + doublePrefix(k4, i - 1) == alt(r, i) * k1[0], "k1 profile" + at);
    Q m = 0;
    for (int j = 0; j <= i - 1; ++j) m += mixed(j);
    check(k2[i] + m == alt(r, i) * k2[0], "k2 profile" + at);
    check(k5[i] == alt(r, i) * k5[0], "k5 profile" + at);
    check(k7[i] + prefix(k6, i - 1) == alt(r, i) * k7[0], "k7 profile" + at);
    check(k8[i] == alt(r, i) * k8[0], "k8 profile" + at);
    check(d1[i] + prefix(d0, i - 1) == alt(r, i) * d1[0], "d1 profile" + at);
    check(d2[i] == alt(r, i) * d2[0], "d2 profile" + at);
    check(c[i] == alt(r, i) * c[0], "c profile" + at);
  }
  check(mixedSum == 0, "sum of 2k3 + kbar4 vanishes");
  check(prefix(k4, r) == 0, "sum of k4 vanishes");
  check(k4Double == 0, "double sum of k4 vanishes");
  check(prefix(k6, r) == 0, "sum of k6 vanishes");
  check(prefix(d0, r) == 0, "sum of d0 vanishes");
  return bad;
}

StagedParams theorem3Stage(int r, const CentralParamsTable& t) {
  if (r < 0) throw std::invalid_argument("r must be non-negative");
  if (r == 0 && (t.k3 != 0 || t.k4 != 0 || t.k6 != 0 || t.d0 != 0))
    throw std::invalid_argument("r = 0 requires k3 = k4 = k6 = d0 = 0");
  if (r == 1 && t.k4 != 0) throw std::invalid_argument("r = 1 requires k4 = 0");

  StagedParams s;
  s.r = r;
  s.perStage.resize(r + 1);
  for (int i = 0; i <= r; ++i) {
    auto& st = s.perStage[i];
    for (const auto& [name, f] : kFields) st.*f = alt(r, i) * (t.*f);
  }
  std::vector<Q> k3, k4, k6, d0;
  for (const auto& st : s.perStage) {
    k3.push_back(st.k3);
    k4.push_back(st.k4);
    k6.push_back(st.k6);
    d0.push_back(st.d0);
  }
  for (int i = 0; i <= r; ++i) {
    auto& st = s.perStage[i];
    st.k1 = alt(r, i) * t.k1 - doublePrefix(k4, i - 1);
    Q m = 0;
    for (int j = 0; j <= i - 1; ++j) m += 2 * k3[j] + prefix(k4, j - 1);
    st.k2 = alt(r, i) * t.k2 - m;
    st.k7 = alt(r, i) * t.k7 - prefix(k6, i - 1);
    st.d1 = alt(r, i) * t.d1 - prefix(d0, i - 1);
  }
  const auto bad = theorem3Violations(s);
  if (!bad.empty()) throw std::logic_error("staging failed: " + bad.front());
  return s;
}

std::vector<CentralParamsTable> stageTables(const StagedParams& s, int n, int p) {
  std::vector<CentralParamsTable> out = s.perStage;
  for (int i = 0; i <= s.r; ++i) out[i].cNp = s.perStage[i].cNp * bq(n + p - i, n);
  return out;
}

ChargeVector theorem3Charges(const StagedParams& s, int n, int p) {
  if (p < s.r) throw std::invalid_argument("theorem3Charges needs p >= r");
  const auto& t = s.perStage.at(0);
  const Q b = bq(n + p - s.r, n - s.r);
  ChargeVector c;
  c(1) = 1 - t.k1 * b;
  c(2) = -t.k2 * b;
  c(3) = 1 + t.d1 * b;
  c(4) = 2 * n + t.cNp * b;
  c(5) = t.k5 * b;
  c(6) = t.d2 * b;
  c(7) = t.k7 * b;
  c(8) = t.k8 * b;

  // The baselines 1, 1 and 2N come from the trajectory sector and are
  // counted once.
  ChargeVector base;
  base(1) = 1;
  base(3) = 1;
  base(4) = 2 * n;
  ChargeVector summed = base;
  const auto tables = stageTables(s, n, p);
  for (int i = 0; i <= s.r; ++i) {
    ChargeVector ci = theorem1Charges(tables[i], n, p - i);
    for (int j = 0; j < 8; ++j) summed.c[j] += ci.c[j] - base.c[j];
  }
  if (!(summed == c))
    throw std::logic_error("closed form " + c.str() + " differs from stagewise sum " + summed.str());
  return c;
}

SugawaraResult sugawara(const std::vector<std::vector<std::vector<GQ>>>& f, const Matrix& k) {
  const std::size_t d = k.size();
  SugawaraResult res;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) pairs.emplace_back(a, b);

  // ff[(n*d + r)*d*d + m*d + t] = f^{NR}_S f^{SM}_T
  std::vector<GQ> ff(d * d * d * d);
  for (std::size_t nI = 0; nI < d; ++nI)
    for (std::size_t rI = 0; rI < d; ++rI)
      for (std::size_t s = 0; s < d; ++s) {
        if (f[nI][rI][s].isZero()) continue;
        for (std::size_t mI = 0; mI < d; ++mI)
          for (std::size_t tI = 0; tI < d; ++tI)
            if (!f[s][mI][tI].isZero()) ff[((nI * d + rI) * d + mI) * d + tI] += f[nI][rI][s] * f[s][mI][tI];
      }
  // Coefficient of gamma_MN in equation (R, T).
  auto coeff = [&](std::size_t mI, std::size_t nI, std::size_t rI, std::size_t tI) {
    GQ v = ff[((nI * d + rI) * d + mI) * d + tI];
    if (mI == tI) v += GQ(2) * k[nI][rI];
    return v;
  };
  Matrix a = zeroMatrix(d * d, pairs.size());
  std::vector<GQ> rhs(d * d);
  for (std::size_t rI = 0; rI < d; ++rI)
    for (std::size_t tI = 0; tI < d; ++tI) {
      const std::size_t row = rI * d + tI;
      rhs[row] = rI == tI ? GQ(1) : GQ(0);
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        auto [m, n] = pairs[j];
        a[row][j] = coeff(m, n, rI, tI);
        if (m != n) a[row][j] += coeff(n, m, rI, tI);
      }
    }
  const LinearSolution sol = solveLinear(a, rhs);
  if (!sol.consistent) {
    res.note = "no Sugawara form for this k-matrix";
    return res;
  }
  res.solvable = true;
  res.gamma = zeroMatrix(d, d);
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    auto [m, n] = pairs[j];
    res.gamma[m][n] = res.gamma[n][m] = sol.x[j];
  }
  // c is fixed by the relation when its functional lies in the row space.
  std::vector<GQ> cRow(pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    auto [m, n] = pairs[j];
    cRow[j] = m == n ? GQ(2) * k[m][m] : GQ(2) * (k[m][n] + k[n][m]);
  }
  Matrix aug = a;
  aug.push_back(cRow);
  res.cDetermined = rank(aug) == sol.rank;

  if (auto kinv = inverse(k)) {
    Matrix w = zeroMatrix(d, d);
    for (std::size_t rI = 0; rI < d; ++rI)
      for (std::size_t tI = 0; tI < d; ++tI)
        for (std::size_t m = 0; m < d; ++m)
          for (std::size_t n = 0; n < d; ++n)
            if (!(*kinv)[m][n].isZero()) w[rI][tI] += (*kinv)[m][n] * ff[((n * d + rI) * d + m) * d + tI];
    const GQ q = d ? w[0][0] : GQ(0);
    if (q.isReal() && isZero(matAdd(w, matScale(identityMatrix(d), -q)))) {
      res.casimirCondition = true;
      res.casimirQ = q.re;
      if (q.re != -2) res.gamma = matScale(*kinv, GQ(1) / (GQ(2) + q));
    }
  }
  if (!res.casimirCondition && sol.rank < pairs.size())
    res.note = "gamma not unique; free components set to zero";

  res.residual = zeroMatrix(d, d);
  GQ c2 = 0;
  for (std::size_t rI = 0; rI < d; ++rI)
    for (std::size_t tI = 0; tI < d; ++tI) {
      GQ v = rI == tI ? GQ(-1) : GQ(0);
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) v += res.gamma[m][n] * coeff(m, n, rI, tI);
      res.residual[rI][tI] = v;
    }
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) c2 += res.gamma[m][n] * k[m][n];
  c2 *= GQ(2);
  if (!c2.isReal()) throw std::logic_error("Sugawara central charge is not real");
  res.c = c2.re;

  res.dVanishes = true;
  for (std::size_t rI = 0; rI < d; ++rI) {
    GQ v = 0;
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t n = 0; n < d; ++n)
        for (std::size_t s = 0; s < d; ++s) v += res.gamma[m][n] * f[n][rI][s] * k[s][m];
    if (!v.isZero()) res.dVanishes = false;
  }

  return res;
}

namespace {

std::vector<GQ> flatten(const Matrix& m) {
  std::vector<GQ> v;
  for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
  return v;
}

// Coordinates of target in the span of the flattened basis.
std::vector<GQ> coordinates(const std::vector<std::vector<GQ>>& basis, const std::vector<GQ>& target) {
  Matrix a = zeroMatrix(target.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < target.size(); ++i) a[i][j] = basis[j][i];
  const LinearSolution s = solveLinear(a, target);
  if (!s.consistent) throw std::logic_error("matrix outside the spanned algebra");
  return s.x;
}

}  // namespace

SugawaraBasis uMBasis(const LieAlgebraSpec& g, const RepSpec& m, int n, int p) {
  const std::size_t dm = m.dim;
  // Matrix algebra generated by the image of g, built by closing under
  // products.
  std::vector<Matrix> alg;
  std::vector<std::vector<GQ>> flat;
  auto tryAdd = [&](const Matrix& x) {
    auto candidate = flat;
    candidate.push_back(flatten(x));
    Matrix a = zeroMatrix(candidate.size(), dm * dm);
    for (std::size_t i = 0; i < candidate.size(); ++i) a[i] = candidate[i];
    if (rank(a) == candidate.size()) {
      alg.push_back(x);
      flat = std::move(candidate);
      return true;
    }
    return false;
  };
  tryAdd(identityMatrix(dm));
  for (std::size_t a = 0; a < g.dim; ++a) tryAdd(m.gens.at(a));
  for (bool grew = true; grew;) {
    grew = false;
    const auto snapshot = alg;
    for (const auto& x : snapshot)
      for (const auto& y : snapshot) grew = tryAdd(matMul(x, y)) || grew;
  }

  const auto jets = enumerateJets(static_cast<std::size_t>(n), p);
  const std::size_t nj = jets.size(), na = alg.size();
  SugawaraBasis out;
  out.dimM = dm;
  out.jets = nj;
  // Basis index (r, a, s) of e_{rs} (x) A_a.
  auto index = [&](std::size_t r, std::size_t a, std::size_t s) { return (r * na + a) * nj + s; };
  const std::size_t d = nj * na * nj;
  out.f.assign(d, std::vector<std::vector<GQ>>(d, std::vector<GQ>(d)));
  out.k = zeroMatrix(d, d);
  const GQ minusI(Q(0), Q(-1));
  std::map<std::pair<std::size_t, std::size_t>, std::vector<GQ>> products;
  auto productCoords = [&](std::size_t a, std::size_t b) -> const std::vector<GQ>& {
    auto it = products.find({a, b});
    if (it == products.end()) it = products.emplace(std::pair{a, b}, coordinates(flat, flatten(matMul(alg[a], alg[b])))).first;
    return it->second;
  };
  // (e_{rs} A_a)(e_{tu} A_b) = delta_st e_{ru} A_a A_b.
  for (std::size_t r = 0; r < nj; ++r)
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t s = 0; s < nj; ++s)
        for (std::size_t t = 0; t < nj; ++t)
          for (std::size_t b = 0; b < na; ++b)
            for (std::size_t u = 0; u < nj; ++u) {
              const std::size_t x = index(r, a, s), y = index(t, b, u);
              if (r == u && s == t) out.k[x][y] = trace(matMul(alg[a], alg[b]));
              if (s == t) {
                const auto& ab = productCoords(a, b);
                for (std::size_t c = 0; c < na; ++c) out.f[x][y][index(r, c, u)] += minusI * ab[c];
              }
              if (u == r) {
                const auto& ba = productCoords(b, a);
                for (std::size_t c = 0; c < na; ++c) out.f[x][y][index(t, c, s)] -= minusI * ba[c];
              }
            }
  return out;
}

DivergenceReport divergenceReport(const CentralParamsTable& k, int n, int pMin, int pMax) {
  DivergenceReport rep;
  for (int p = pMin; p <= pMax; ++p) rep.rows.push_back({p, theorem1Charges(k, n, p)});
  const ChargeVector base = theorem1Charges(CentralParamsTable{}, n, 0);
  for (int j = 0; j < 8; ++j) {
    std::vector<Q> col;
    for (const auto& row : rep.rows) col.push_back(row.charges.c[j] - base.c[j]);
    int deg = -1;
    for (int order = 0; !col.empty(); ++order) {
      bool zero = true;
      for (const auto& v : col) zero = zero && v == 0;
      if (zero) break;
      deg = order;
      std::vector<Q> next;
      for (std::size_t i = 1; i < col.size(); ++i) next.push_back(col[i] - col[i - 1]);
      col = std::move(next);
    }
    rep.exponent[j] = deg;
  }
  return rep;
}

}  // namespace dgro
