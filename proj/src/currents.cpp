#include "dgro/currents.hpp"

#include <sstream>
#include <stdexcept>

namespace dgro {

namespace {

const GQ kI(Q(0), Q(1));

GQ sgn(int k) { return GQ(k % 2 ? -1 : 1); }

Density partial(const Density& d, int v) {
  Density r;
  for (const auto& [k, p] : d.modes()) r.add(k, p.derivative(v));
  return r;
}

Density poly(const Poly& p) { return Density(p); }

}  // namespace

int maxJetOrder(int n) {
  if (n < 1 || n > kMaxVars) throw std::invalid_argument("dimension out of range");
  return kMaxVars / n - 1;
}

int jetVar(int n, int order, int mu) {
  if (order < 0 || order > maxJetOrder(n)) throw std::out_of_range("jet order exceeds the variable budget");
  if (mu < 0 || mu >= n) throw std::out_of_range("jet component out of range");
  return order * n + mu;
}

Density::Density(const Poly& p) { add(0, p); }
Density::Density(const GQ& c) { add(0, Poly(c)); }

Density Density::mode(long k, const GQ& c) {
  Density d;
  d.add(k, Poly(c));
  return d;
}

int Density::jetOrder(int n) const {
  int best = -1;
  for (const auto& [k, p] : modes_)
    for (const auto& [m, c] : p.terms())
      for (int v = 0; v < kMaxVars; ++v)
        if (m[v]) best = std::max(best, v / n);
  return best;
}

void Density::add(long k, const Poly& p) {
  if (p.isZero()) return;
  auto [it, inserted] = modes_.try_emplace(k, p);
  if (!inserted) {
    it->second += p;
    if (it->second.isZero()) modes_.erase(it);
  }
}

Density& Density::operator+=(const Density& o) {
  for (const auto& [k, p] : o.modes_) add(k, p);
  return *this;
}

Density& Density::operator-=(const Density& o) {
  for (const auto& [k, p] : o.modes_) add(k, -p);
  return *this;
}

Density& Density::operator*=(const GQ& c) {
  if (c.isZero()) {
    modes_.clear();
    return *this;
  }
  for (auto& [k, p] : modes_) p *= c;
  return *this;
}

std::string Density::str(int n) const {
  if (modes_.empty()) return "0";
  std::vector<std::string> names;
  for (int v = 0; v < kMaxVars; ++v) {
    int order = v / n, mu = v % n + 1;
    names.push_back("q" + std::string(order, '\'') + "^" + std::to_string(mu));
  }
  std::string s;
  for (const auto& [k, p] : modes_) {
    if (!s.empty()) s += " + ";
    s += k == 0 ? "[" + p.str(names) + "]" : "e^{" + std::to_string(k) + "it}[" + p.str(names) + "]";
  }
  return s;
}

Density operator+(Density a, const Density& b) { return a += b; }
Density operator-(Density a, const Density& b) { return a -= b; }
Density operator-(Density a) { return a *= GQ(-1); }

Density operator*(const Density& a, const Density& b) {
  Density r;
  for (const auto& [ka, pa] : a.modes())
    for (const auto& [kb, pb] : b.modes()) r.add(ka + kb, pa * pb);
  return r;
}

Density operator*(Density a, const GQ& c) { return a *= c; }
Density operator*(const GQ& c, Density a) { return a *= c; }

Density timeDerivative(const Density& d, int n, int times) {
  Density cur = d;
  const int top = maxJetOrder(n);
  for (int t = 0; t < times && !cur.isZero(); ++t) {
    Density next;
    for (const auto& [k, p] : cur.modes()) {
      Poly out = p * GQ(Q(0), Q(k));
      for (int v = 0; v < kMaxVars; ++v) {
        if (p.degreeIn(v) <= 0) continue;
        int order = v / n;
        if (order >= top) throw std::out_of_range("jet order exceeds the variable budget");
        out += p.derivative(v) * Poly::var(v + n);
      }
      next.add(k, out);
    }
    cur = std::move(next);
  }
  return cur;
}

Density onTrajectory(const Poly& phi) { return Density(phi); }

GQ circleIntegral(const Density& d) {
  for (const auto& [k, p] : d.modes())
    if (p.totalDegree() > 0) throw std::invalid_argument("circleIntegral: density depends on the trajectory");
  auto it = d.modes().find(0);
  return it == d.modes().end() ? GQ() : it->second.constantTerm();
}

bool EulerImage::isZero() const {
  if (!constant.isZero()) return false;
  for (const auto& c : components)
    if (!c.isZero()) return false;
  return true;
}

EulerImage eulerImage(const Density& d, int n) {
  EulerImage e;
  const int top = d.jetOrder(n);
  for (int mu = 0; mu < n; ++mu) {
    Density sum;
    for (int j = 0; j <= top; ++j) {
      Density pj = partial(d, jetVar(n, j, mu));
      if (pj.isZero()) continue;
      sum += sgn(j) * timeDerivative(pj, n, j);
    }
    e.components.push_back(sum);
  }
  auto it = d.modes().find(0);
  if (it != d.modes().end()) e.constant = it->second.constantTerm();
  return e;
}

bool equalModTotalDerivatives(const Density& a, const Density& b, int n) {
  return eulerImage(a - b, n).isZero();
}

Density integrateDelta(const Density& a, const Density& b, int k, int n, DeltaSlot slot) {
  if (k < 0 || k > 3) throw std::invalid_argument("unsupported delta order");
  if (slot == DeltaSlot::S) return a * timeDerivative(b, n, k);
  return sgn(k) * (timeDerivative(a, n, k) * b);
}

std::string CurrentKey::str(const LieAlgebraSpec& g) const {
  std::string st = stage ? "(" + std::to_string(stage) + ")" : "";
  if (kind == Kind::F) return "F" + st;
  std::string base = "I";
  std::string lab;
  if (label.size() == 0) {
    base = "E";
  } else if (label.size() == 1 && g.isGl(label.idx[0])) {
    base = "T";
    lab = " " + label.str(g);
  } else {
    base = label.size() == 1 ? "J" : "I";
    lab = " " + label.str(g);
  }
  return base + st + "^{" + m.str() + lab + "}_{" + n.str() + "}";
}

CurrentKey currentE(int stage, const MultiIndex& m, const MultiIndex& n) {
  return CurrentKey{CurrentKey::Kind::I, stage, m, n, EnvelopingLabel::unit()};
}

CurrentKey currentJ(int stage, const MultiIndex& m, const MultiIndex& n, int a) {
  return CurrentKey{CurrentKey::Kind::I, stage, m, n, EnvelopingLabel::single(a)};
}

CurrentKey currentT(const LieAlgebraSpec& g, int stage, const MultiIndex& m, const MultiIndex& n, int mu,
                    int nu) {
  return CurrentKey{CurrentKey::Kind::I, stage, m, n,
                    EnvelopingLabel::single(static_cast<int>(g.glIndex(mu, nu)))};
}

CurrentKey currentF(int stage) { return CurrentKey{CurrentKey::Kind::F, stage, {}, {}, {}}; }

AnsatzCentral::AnsatzCentral(LieAlgebraSpec algebra, std::vector<CentralParamsTable> stages)
    : g_(std::move(algebra)), stages_(std::move(stages)) {}

const CentralParamsTable& AnsatzCentral::table(int stage) const {
  if (stage < 0 || stage >= static_cast<int>(stages_.size())) throw std::out_of_range("no parameters for stage");
  return stages_[stage];
}

GQ AnsatzCentral::k(int stage, const EnvelopingLabel& a, const EnvelopingLabel& b) const {
  const auto& t = table(stage);
  if (a.size() > 1 || b.size() > 1) throw std::out_of_range("central entry outside the ansatz");
  if (a.size() < b.size()) return k(stage, b, a);
  auto delta = [](std::size_t x, std::size_t y) { return x == y ? Q(1) : Q(0); };
  if (a.size() == 0) return GQ(t.k4);
  const std::size_t x = a.idx[0];
  if (b.size() == 0) {
    if (g_.isGl(x)) {
      auto [mu, nu] = g_.glPair(x);
      return GQ(t.k3 * delta(mu, nu));
    }
    return GQ(t.k6) * g_.casimir[x];
  }
  const std::size_t y = b.idx[0];
  if (g_.isGl(x) && g_.isGl(y)) {
    auto [mu, nu] = g_.glPair(x);
    auto [rho, sigma] = g_.glPair(y);
    return GQ(t.k1 * delta(mu, sigma) * delta(rho, nu) + t.k2 * delta(mu, nu) * delta(rho, sigma));
  }
  if (g_.isGl(x) != g_.isGl(y)) {
    const std::size_t gl = g_.isGl(x) ? x : y, ga = g_.isGl(x) ? y : x;
    auto [mu, nu] = g_.glPair(gl);
    return GQ(t.k7 * delta(mu, nu)) * g_.casimir[ga];
  }
  return GQ(t.k5) * g_.metric[x][y] + GQ(t.k8) * g_.casimir[x] * g_.casimir[y];
}

GQ AnsatzCentral::d(int stage, const EnvelopingLabel& a) const {
  const auto& t = table(stage);
  if (a.size() == 0) return GQ(t.d0);
  if (a.size() > 1) throw std::out_of_range("central entry outside the ansatz");
  const std::size_t x = a.idx[0];
  if (g_.isGl(x)) {
    auto [mu, nu] = g_.glPair(x);
    return GQ(mu == nu ? t.d1 : Q(0));
  }
  return GQ(t.d2) * g_.casimir[x];
}

Q AnsatzCentral::c(int stage) const { return table(stage).cNp; }

TraceCentral::TraceCentral(RepSpec rep, Q c) : rep_(std::move(rep)), c_(std::move(c)) {}

GQ TraceCentral::k(int, const EnvelopingLabel& a, const EnvelopingLabel& b) const {
  return trace(matMul(labelMatrix(rep_, a), labelMatrix(rep_, b)));
}

GQ TraceCentral::d(int, const EnvelopingLabel& a) const { return trace(labelMatrix(rep_, a)); }

Q TraceCentral::c(int) const { return c_; }

void LocalOperator::addCurrent(const CurrentKey& key, const Density& d) {
  if (d.isZero()) return;
  auto [it, inserted] = currents.try_emplace(key, d);
  if (!inserted) {
    it->second += d;
    if (it->second.isZero()) currents.erase(it);
  }
}

void LocalOperator::addV(const std::vector<Poly>& xi) {
  if (vfield.size() < xi.size()) vfield.resize(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) vfield[i] += xi[i];
}

LocalOperator& LocalOperator::operator+=(const LocalOperator& o) {
  for (const auto& [k, d] : o.currents) addCurrent(k, d);
  addV(o.vfield);
  kfield += o.kfield;
  pure += o.pure;
  return *this;
}

LocalOperator& LocalOperator::operator*=(const GQ& c) {
  if (c.isZero()) {
    *this = LocalOperator{};
    return *this;
  }
  for (auto& [k, d] : currents) d *= c;
  for (auto& p : vfield) p *= c;
  kfield *= c;
  pure *= c;
  return *this;
}

namespace {
bool vzero(const std::vector<Poly>& v) {
  for (const auto& p : v)
    if (!p.isZero()) return false;
  return true;
}
}  // namespace

bool LocalOperator::isZero() const { return currents.empty() && vzero(vfield) && kfield.isZero() && pure.isZero(); }

bool LocalOperator::sameRegular(const LocalOperator& o) const {
  if (currents != o.currents || !(kfield == o.kfield)) return false;
  const std::size_t n = std::max(vfield.size(), o.vfield.size());
  for (std::size_t i = 0; i < n; ++i) {
    Poly a = i < vfield.size() ? vfield[i] : Poly();
    Poly b = i < o.vfield.size() ? o.vfield[i] : Poly();
    if (!(a == b)) return false;
  }
  return true;
}

std::string LocalOperator::str(const LieAlgebraSpec& g, int n) const {
  std::ostringstream os;
  for (const auto& [k, d] : currents) os << k.str(g) << " * " << d.str(n) << "\n";
  std::vector<std::string> names;
  for (int mu = 0; mu < n; ++mu) names.push_back("q^" + std::to_string(mu + 1));
  for (std::size_t i = 0; i < vfield.size(); ++i)
    if (!vfield[i].isZero()) os << "V^" << i + 1 << " * " << vfield[i].str(names) << "\n";
  if (!kfield.isZero()) os << "K * " << kfield.str(n) << "\n";
  if (!pure.isZero()) os << "u * " << pure.str(n) << "\n";
  return os.str();
}

LocalOperator operator+(LocalOperator a, const LocalOperator& b) { return a += b; }
LocalOperator operator-(LocalOperator a, const LocalOperator& b) { return a += b * GQ(-1); }
LocalOperator operator*(LocalOperator a, const GQ& c) { return a *= c; }

std::vector<Poly> vectorFieldBracket(const std::vector<Poly>& xi, const std::vector<Poly>& eta) {
  const std::size_t n = std::max(xi.size(), eta.size());
  auto at = [](const std::vector<Poly>& v, std::size_t i) { return i < v.size() ? v[i] : Poly(); };
  std::vector<Poly> r(n);
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu) {
      const int v = static_cast<int>(nu);
      r[mu] += at(xi, nu) * at(eta, mu).derivative(v) - at(eta, nu) * at(xi, mu).derivative(v);
    }
  return r;
}

Density circleBracket(const Density& f, const Density& g) {
  return f * timeDerivative(g, 1) - timeDerivative(f, 1) * g;
}

BracketEngine::BracketEngine(int n, LieAlgebraSpec algebra, std::shared_ptr<const CentralProvider> central)
    : n_(n), g_(std::move(algebra)), central_(std::move(central)) {
  maxJetOrder(n);
}

DeltaExpansion BracketEngine::bracketSymbols(const CurrentKey& a, const CurrentKey& b) const {
  DeltaExpansion out;
  if (a.stage != b.stage) return out;
  using K = CurrentKey::Kind;
  const int st = a.stage;
  if (a.kind == K::I && b.kind == K::I) {
    if (b.m == a.n)
      for (const auto& [c, coeff] : envelopingProduct(g_, a.label, b.label))
        out.regular.push_back({coeff, CurrentKey{K::I, st, a.m, b.n, c}, true, 0});
    if (a.m == b.n)
      for (const auto& [c, coeff] : envelopingProduct(g_, b.label, a.label))
        out.regular.push_back({-coeff, CurrentKey{K::I, st, b.m, a.n, c}, true, 0});
    if (a.m == b.n && b.m == a.n) out.central.push_back({central_->k(st, a.label, b.label), 1});
    return out;
  }
  if (a.kind == K::F && b.kind == K::F) {
    out.regular.push_back({GQ(1), a, true, 1});
    out.regular.push_back({GQ(1), b, false, 1});
    GQ c12 = GQ(central_->c(st) / 12);
    out.central.push_back({c12, 3});
    out.central.push_back({c12, 1});
    return out;
  }
  const GQ half(Q(1, 2));
  if (a.kind == K::F) {
    out.regular.push_back({GQ(1), b, true, 1});
    if (b.m == b.n) {
      GQ d = central_->d(st, b.label) * half;
      out.central.push_back({d, 2});
      out.central.push_back({kI * d, 1});
    }
    return out;
  }
  out.regular.push_back({GQ(1), a, false, 1});
  if (a.m == a.n) {
    GQ d = central_->d(st, a.label) * half;
    out.central.push_back({-d, 2});
    out.central.push_back({kI * d, 1});
  }
  return out;
}

Density BracketEngine::act(const std::vector<Poly>& xi, const Density& f, const Density& d) const {
  Density r;
  const int top = d.jetOrder(n_);
  for (int mu = 0; mu < n_; ++mu) {
    Density image;
    if (mu < static_cast<int>(xi.size())) image += poly(xi[mu]);
    if (!f.isZero()) image -= f * poly(Poly::var(jetVar(n_, 1, mu)));
    if (image.isZero()) continue;
    for (int j = 0; j <= top; ++j) {
      Density pj = partial(d, jetVar(n_, j, mu));
      if (pj.isZero()) continue;
      r += timeDerivative(image, n_, j) * pj;
    }
  }
  return r;
}

namespace {

Density divergence(const std::vector<Poly>& xi) {
  Poly r;
  for (std::size_t mu = 0; mu < xi.size(); ++mu) r += xi[mu].derivative(static_cast<int>(mu));
  return Density(r);
}

// q'^rho d_rho d_nu xi^mu d_mu eta^nu
Density vvCocycle(const std::vector<Poly>& xi, const std::vector<Poly>& eta, int n) {
  Poly r;
  for (int rho = 0; rho < n; ++rho)
    for (int nu = 0; nu < n; ++nu)
      for (int mu = 0; mu < n; ++mu) {
        if (mu >= static_cast<int>(xi.size()) || nu >= static_cast<int>(eta.size())) continue;
        r += Poly::var(jetVar(n, 1, rho)) * xi[mu].derivative(rho).derivative(nu) * eta[nu].derivative(mu);
      }
  return Density(r);
}

}  // namespace

BracketResult BracketEngine::bracket(const LocalOperator& a, const LocalOperator& b) const {
  BracketResult res;
  for (const auto& [ka, da] : a.currents)
    for (const auto& [kb, db] : b.currents) {
      DeltaExpansion ex = bracketSymbols(ka, kb);
      for (const auto& r : ex.regular) {
        Density d = r.atS ? da * timeDerivative(db, n_, r.order)
                          : sgn(r.order) * (timeDerivative(da, n_, r.order) * db);
        res.regular.addCurrent(r.key, r.coeff * d);
      }
      if (ex.central.empty()) continue;
      DeltaSlot slot = da.jetOrder(n_) <= db.jetOrder(n_) ? DeltaSlot::T : DeltaSlot::S;
      for (const auto& c : ex.central)
        if (!c.coeff.isZero()) res.extension += c.coeff * integrateDelta(da, db, c.order, n_, slot);
    }

  const bool aTraj = !vzero(a.vfield) || !a.kfield.isZero();
  const bool bTraj = !vzero(b.vfield) || !b.kfield.isZero();
  if (aTraj) {
    for (const auto& [kb, db] : b.currents) res.regular.addCurrent(kb, act(a.vfield, a.kfield, db));
    res.extension += act(a.vfield, a.kfield, b.pure);
  }
  if (bTraj) {
    for (const auto& [ka, da] : a.currents) res.regular.addCurrent(ka, -act(b.vfield, b.kfield, da));
    res.extension -= act(b.vfield, b.kfield, a.pure);
  }

  const GQ half(Q(1, 2));
  if (!vzero(a.vfield) && !vzero(b.vfield)) {
    res.regular.addV(vectorFieldBracket(a.vfield, b.vfield));
    res.extension += vvCocycle(a.vfield, b.vfield, n_);
  }
  if (!a.kfield.isZero() && !b.kfield.isZero()) {
    res.regular.kfield += circleBracket(a.kfield, b.kfield);
    const Density& f = a.kfield;
    const Density& g = b.kfield;
    Density vir = timeDerivative(f, n_, 2) * timeDerivative(g, n_) - timeDerivative(f, n_) * g;
    res.extension += GQ(Q(2 * n_) / 12) * vir;
  }
  auto kv = [&](const Density& f, const std::vector<Poly>& xi) {
    Density w = timeDerivative(f, n_, 2) - kI * timeDerivative(f, n_);
    return half * (w * divergence(xi));
  };
  if (!a.kfield.isZero() && !vzero(b.vfield)) res.extension += kv(a.kfield, b.vfield);
  if (!vzero(a.vfield) && !b.kfield.isZero()) res.extension -= kv(b.kfield, a.vfield);
  return res;
}

CentralConditionReport checkCentralConditions(const LieAlgebraSpec& g, const CentralProvider& k, int stage,
                                              const std::vector<EnvelopingLabel>& labels) {
  CentralConditionReport rep;
  for (const auto& a : labels)
    for (const auto& b : labels) {
      try {
        ++rep.checked;
        if (k.k(stage, a, b) != k.k(stage, b, a))
          rep.failures.push_back("k not symmetric at " + a.str(g) + "," + b.str(g));
      } catch (const std::out_of_range&) {
        --rep.checked;
        ++rep.skipped;
      }
    }
  // sum_D g^{XY}_D k^{DZ}, optionally antisymmetrized in X, Y.
  auto contract = [&](const EnvelopingLabel& x, const EnvelopingLabel& y, const EnvelopingLabel& z, bool odd) {
    LabelCoeffs p = envelopingProduct(g, x, y);
    if (odd)
      for (const auto& [c, v] : envelopingProduct(g, y, x)) p[c] -= v;
    GQ s;
    for (const auto& [c, v] : p)
      if (!v.isZero()) s += v * k.k(stage, c, z);
    return s;
  };
  for (const auto& a : labels)
    for (const auto& b : labels)
      for (const auto& c : labels)
        for (bool odd : {true, false}) {
          try {
            GQ x = contract(a, b, c, odd), y = contract(b, c, a, odd), z = contract(c, a, b, odd);
            ++rep.checked;
            if (x != y || y != z)
              rep.failures.push_back(std::string(odd ? "odd" : "full") + " condition fails at " + a.str(g) + "," +
                                     b.str(g) + "," + c.str(g));
          } catch (const std::out_of_range&) {
            ++rep.skipped;
          }
        }
  return rep;
}

}  // namespace dgro
