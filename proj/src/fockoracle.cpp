#include "dgro/fockoracle.hpp"

#include <memory>
#include <stdexcept>

#include "dgro/multiindex.hpp"

namespace dgro {

namespace {

const GQ kI(Q(0), Q(1));

bool allowed(long twice, Moding moding) { return (twice % 2 == 0) == (moding == Moding::Periodic); }

bool piAnnihilates(long r2) { return r2 > 0; }

bool phiAnnihilates(long u2, Moding moding) { return moding == Moding::Periodic ? u2 >= 0 : u2 > 0; }

GQ traceProduct(const Matrix& a, const Matrix& b) {
  GQ t;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!a[i][j].isZero() && !b[j][i].isZero()) t += a[i][j] * b[j][i];
  return t;
}

GQ contraction(const Bilinear& a, const Bilinear& b, Moding moding) {
  GQ t;
  for (const auto& [key, x] : a.terms) {
    const auto [r2, u2] = key;
    if (!piAnnihilates(r2) || !phiAnnihilates(u2, moding)) continue;
    const auto it = b.terms.find({-u2, -r2});
    if (it != b.terms.end()) t += traceProduct(x, it->second);
  }
  return t;
}

Matrix unitMatrix(std::size_t dim, std::size_t i, std::size_t j) {
  Matrix e = zeroMatrix(dim, dim);
  e[i][j] = GQ(1);
  return e;
}

// Everything one cutoff needs.
class Measurer {
 public:
  Measurer(const FockSetup& s, int cutoff) : s_(s), cutoff_(cutoff) {
    full_ = directSum(s.g, static_cast<std::size_t>(s.n));
    jets_ = enumerateJets(static_cast<std::size_t>(s.n), s.p);
    const Matrix oneM = identityMatrix(s.m.dim), oneR = identityMatrix(s.rho.dim);
    rep_.name = "M x rho";
    rep_.dim = s.m.dim * s.rho.dim;
    for (const auto& x : s.m.gens) rep_.gens.push_back(kron(x, oneR));
    for (const auto& x : s.rho.gens) rep_.gens.push_back(kron(oneM, x));
    dim_ = jets_.size() * rep_.dim;
  }

  const LieAlgebraSpec& full() const { return full_; }
  const RepSpec& rep() const { return rep_; }
  std::size_t jetCount() const { return jets_.size(); }
  std::size_t dim() const { return dim_; }
  long sums() const { return sums_; }

  Matrix embed(std::size_t m, std::size_t n, const Matrix& x) const { return kron(unitMatrix(jets_.size(), m, n), x); }
  Matrix label(const EnvelopingLabel& a) const { return labelMatrix(rep_, a); }

  Bilinear mode(const Matrix& x, long k, bool weighted = false) const {
    return currentMode(x, k, cutoff_, s_.moding, weighted);
  }

  GQ vacuum(const Bilinear& a, const Bilinear& b) const {
    ++sums_;
    return vacuumCommutator(a, b, s_.moding);
  }

  // Vacuum part of [X_k, Y_-k].
  GQ central(const Matrix& x, const Matrix& y, long k) const { return vacuum(mode(x, k), mode(y, -k)); }
  // Vacuum part of [F_k, X_-k].
  GQ virasoroWith(const Matrix& x, long k) const {
    return vacuum(mode(identityMatrix(dim_), k, true), mode(x, -k));
  }

 private:
  FockSetup s_;
  int cutoff_;
  LieAlgebraSpec full_;
  RepSpec rep_;
  std::vector<MultiIndex> jets_;
  std::size_t dim_ = 0;
  mutable long sums_ = 0;
};

// Vacuum value of [E_1, E_-1] for one trivial fermion pair.
GQ calibrationUnit(Moding moding) {
  const Matrix one = identityMatrix(1);
  return vacuumCommutator(currentMode(one, 1, 2, moding), currentMode(one, -1, 2, moding), moding);
}

class MeasuredCentral : public CentralProvider {
 public:
  MeasuredCentral(const Measurer& m, GQ unit) : m_(m), unit_(std::move(unit)) {}
  GQ k(int, const EnvelopingLabel& a, const EnvelopingLabel& b) const override {
    const auto key = std::make_pair(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const GQ v = m_.central(m_.embed(0, 0, m_.label(a)), m_.embed(0, 0, m_.label(b)), 1) / unit_;
    cache_.emplace(key, v);
    return v;
  }
  GQ d(int, const EnvelopingLabel& a) const override {
    return m_.virasoroWith(m_.embed(0, 0, m_.label(a)), 2) / (-unit_ * kI);
  }
  Q c(int) const override { return 0; }

 private:
  const Measurer& m_;
  GQ unit_;
  mutable std::map<std::pair<EnvelopingLabel, EnvelopingLabel>, GQ> cache_;
};

using Field = Q CentralParamsTable::*;
const Field kParams[] = {&CentralParamsTable::k1, &CentralParamsTable::k2, &CentralParamsTable::k3,
                         &CentralParamsTable::k4, &CentralParamsTable::k5, &CentralParamsTable::k6,
                         &CentralParamsTable::k7, &CentralParamsTable::k8};
const Field dParams[] = {&CentralParamsTable::d0, &CentralParamsTable::d1, &CentralParamsTable::d2};

std::vector<EnvelopingLabel> basicLabels(const LieAlgebraSpec& full) {
  std::vector<EnvelopingLabel> out{EnvelopingLabel::unit()};
  for (std::size_t a = 0; a < full.dim; ++a) out.push_back(EnvelopingLabel::single(static_cast<int>(a)));
  return out;
}

struct Raw {
  std::map<std::pair<EnvelopingLabel, EnvelopingLabel>, GQ> k;
  std::map<EnvelopingLabel, GQ> d;
  long sums = 0;
};

Raw measureAt(const FockSetup& s, int cutoff, const GQ& unit, std::vector<std::string>& failures) {
  const Measurer me(s, cutoff);
  const auto labels = basicLabels(me.full());
  Raw out;

  for (const auto& a : labels) {
    const Matrix xa = me.embed(0, 0, me.label(a));
    for (const auto& b : labels) {
      const Matrix xb = me.embed(0, 0, me.label(b));
      const GQ v1 = me.central(xa, xb, 1);
      // The delta' term grows linearly in the mode number.
      if (me.central(xa, xb, 2) != v1 * GQ(2))
        failures.push_back("central term of " + a.str(me.full()) + ", " + b.str(me.full()) +
                           " is not linear in the mode");
      out.k[{a, b}] = v1 / unit;
    }
    // (delta'' + i delta') vanishes at mode 1 and is -i unit d at mode 2.
    if (!me.virasoroWith(xa, 1).isZero())
      failures.push_back("[F_1, I_-1] of " + a.str(me.full()) + " has a vacuum part");
    const GQ d = me.virasoroWith(xa, 2) / (-unit * kI);
    if (me.virasoroWith(xa, 3) != -unit * kI * d * GQ(3))
      failures.push_back("[F, I] of " + a.str(me.full()) + " is not of the weight-one shape");
    out.d[a] = d;

    // Regular part of [F_k, I_l] is i l I_{k+l}, compared where no mode
    // was cut away.
    for (const auto& [k, l] : {std::pair<long, long>{1, 1}, {2, -1}, {-1, 2}}) {
      const Bilinear got =
          regularCommutator(me.mode(identityMatrix(me.dim()), k, true), me.mode(xa, l));
      const Bilinear want = me.mode(matScale(xa, kI * GQ(l)), k + l);
      const long w = 2 * (cutoff - std::abs(k) - std::abs(l));
      for (long r2 = -w; r2 <= w; ++r2) {
        const long v2 = 2 * (k + l) - r2;
        if (std::abs(v2) > w) continue;
        const auto g = got.terms.find({r2, v2});
        const auto e = want.terms.find({r2, v2});
        const Matrix zero = zeroMatrix(me.dim(), me.dim());
        if ((g == got.terms.end() ? zero : g->second) != (e == want.terms.end() ? zero : e->second)) {
          failures.push_back("I of " + a.str(me.full()) + " is not a weight-one primary");
          break;
        }
      }
    }
  }

  // Jet structure delta^r_n delta^m_s of the E currents.
  const std::size_t nj = me.jetCount();
  const Matrix one = identityMatrix(me.rep().dim);
  const GQ k4 = out.k[{EnvelopingLabel::unit(), EnvelopingLabel::unit()}];
  for (std::size_t m = 0; m < nj; ++m)
    for (std::size_t n = 0; n < nj; ++n)
      for (std::size_t r = 0; r < nj; ++r)
        for (std::size_t ss = 0; ss < nj; ++ss) {
          const GQ v = me.central(me.embed(m, n, one), me.embed(r, ss, one), 1) / unit;
          if (v != (r == n && m == ss ? k4 : GQ(0))) failures.push_back("jet structure of the E central term");
        }

  const MeasuredCentral provider(me, unit);
  const auto cond = checkCentralConditions(me.full(), provider, 0, labels);
  for (const auto& f : cond.failures) failures.push_back("central conditions: " + f);
  out.sums = me.sums();
  return out;
}

}  // namespace

Bilinear currentMode(const Matrix& x, long k, int cutoff, Moding moding, bool weighted) {
  Bilinear b;
  const long c2 = 2L * cutoff;
  for (long r2 = -c2; r2 <= c2; ++r2) {
    const long u2 = 2 * k - r2;
    if (!allowed(r2, moding) || !allowed(u2, moding) || std::abs(u2) > c2) continue;
    b.terms[{r2, u2}] = weighted ? matScale(x, GQ(Q(0), Q(-u2) / 2)) : x;
  }
  return b;
}

Bilinear regularCommutator(const Bilinear& a, const Bilinear& b) {
  Bilinear out;
  auto compose = [&](const Bilinear& x, const Bilinear& y, const GQ& sign) {
    for (const auto& [kx, mx] : x.terms)
      for (const auto& [ky, my] : y.terms) {
        if (ky.first != -kx.second) continue;
        const auto key = std::make_pair(kx.first, ky.second);
        const Matrix prod = matScale(matMul(mx, my), sign);
        auto it = out.terms.find(key);
        if (it == out.terms.end())
          out.terms.emplace(key, prod);
        else
          it->second = matAdd(it->second, prod);
      }
  };
  compose(a, b, GQ(1));
  compose(b, a, GQ(-1));
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = isZero(it->second) ? out.terms.erase(it) : std::next(it);
  return out;
}

GQ vacuumCommutator(const Bilinear& a, const Bilinear& b, Moding moding) {
  return contraction(a, b, moding) - contraction(b, a, moding);
}

CentralMeasurement measureCentralMatrix(const FockSetup& s) {
  if (s.cutoff < 3) throw std::invalid_argument("measureCentralMatrix: cutoff must be at least 3");
  CentralMeasurement out;
  out.calibration = calibrationUnit(s.moding);
  if (out.calibration.isZero()) throw std::logic_error("calibration unit vanishes");

  std::vector<std::string> failures;
  const Raw a = measureAt(s, s.cutoff, out.calibration, failures);
  std::vector<std::string> ignored;
  const Raw b = measureAt(s, s.cutoff + 1, out.calibration, ignored);
  if (a.k != b.k || a.d != b.d) failures.push_back("vacuum sums depend on the cutoff");
  out.k = a.k;
  out.d = a.d;
  out.vacuumSums = a.sums + b.sums;

  // Fit the isotropic ansatz; column j is the ansatz with parameter j = 1.
  const LieAlgebraSpec full = directSum(s.g, static_cast<std::size_t>(s.n));
  auto column = [&](Field f) {
    CentralParamsTable t;
    t.*f = 1;
    return AnsatzCentral(full, {t});
  };
  Matrix ak;
  std::vector<GQ> bk;
  std::vector<AnsatzCentral> kc, dc;
  for (Field f : kParams) kc.push_back(column(f));
  for (Field f : dParams) dc.push_back(column(f));
  for (const auto& [key, v] : out.k) {
    std::vector<GQ> row;
    for (const auto& c : kc) row.push_back(c.k(0, key.first, key.second));
    ak.push_back(row);
    bk.push_back(v);
  }
  Matrix ad;
  std::vector<GQ> bd;
  for (const auto& [key, v] : out.d) {
    std::vector<GQ> row;
    for (const auto& c : dc) row.push_back(c.d(0, key));
    ad.push_back(row);
    bd.push_back(v);
  }
  const auto sk = solveLinear(ak, bk);
  const auto sd = solveLinear(ad, bd);
  if (!sk.consistent || !sd.consistent) failures.push_back("realization breaks isotropy assumption");
  for (std::size_t j = 0; j < 8 && sk.consistent; ++j) {
    if (!sk.x[j].isReal()) failures.push_back("complex central parameter");
    out.params.*kParams[j] = sk.x[j].re;
    out.determined[j] = sk.determined[j];
  }
  for (std::size_t j = 0; j < 3 && sd.consistent; ++j) {
    if (!sd.x[j].isReal()) failures.push_back("complex d parameter");
    out.params.*dParams[j] = sd.x[j].re;
    out.determined[8 + j] = sd.determined[j];
  }
  out.params.cNp = measureVirasoro(s).c;
  out.failures = std::move(failures);
  return out;
}

VirasoroMeasurement measureVirasoro(const FockSetup& s) {
  if (s.cutoff < 3) throw std::invalid_argument("measureVirasoro: cutoff must be at least 3");
  VirasoroMeasurement out;
  const GQ unit = calibrationUnit(s.moding);
  auto raw = [&](int cutoff, long k) {
    const Measurer me(s, cutoff);
    const Matrix one = identityMatrix(me.dim());
    return me.vacuum(me.mode(one, k, true), me.mode(one, -k, true));
  };
  // The vacuum part of [F_k, F_-k] is -unit (a k^3 + b k) / 12; the
  // Virasoro shape has b = -a and then c = a.
  std::vector<GQ> v;
  for (long k = 1; k <= 3; ++k) v.push_back(raw(s.cutoff, k) / (-unit) * GQ(12));
  for (long k = 1; k <= 3; ++k)
    if (raw(s.cutoff + 1, k) / (-unit) * GQ(12) != v[k - 1]) out.failures.push_back("vacuum sums depend on the cutoff");
  const auto sol = solveLinear({{GQ(1), GQ(1)}, {GQ(8), GQ(2)}}, {v[0], v[1]});
  const GQ a = sol.x[0], b = sol.x[1];
  if (!a.isReal() || !b.isReal()) {
    out.failures.push_back("complex Virasoro vacuum part");
    return out;
  }
  out.cubic = a.re;
  out.linear = b.re;
  if (a * GQ(27) + b * GQ(3) != v[2]) out.failures.push_back("Virasoro vacuum part is not cubic in the mode");
  if (out.linear != -out.cubic) out.failures.push_back("Virasoro vacuum part is not of the (k^3 - k) shape");
  out.c = out.cubic;
  const auto jets = static_cast<long>(enumerateJets(static_cast<std::size_t>(s.n), s.p).size());
  out.predicted = -Q(static_cast<long>(s.rho.dim * s.m.dim)) * Q(jets);
  if (out.predicted != 0) out.ratio = out.c / out.predicted;
  return out;
}

}  // namespace dgro
