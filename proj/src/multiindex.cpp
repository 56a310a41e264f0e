#include "dgro/multiindex.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dgro/poly.hpp"

namespace dgro {

MultiIndex::MultiIndex(std::vector<int> comps) : c_(std::move(comps)) {
  for (int v : c_)
    if (v < 0) throw std::invalid_argument("MultiIndex: negative component");
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t mu) {
  if (mu >= dim) throw std::out_of_range("MultiIndex::unit direction");
  MultiIndex m(dim);
  m.c_[mu] = 1;
  return m;
}

int MultiIndex::order() const {
  int s = 0;
  for (int v : c_) s += v;
  return s;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < dim(); ++i) r.c_[i] += o.c_[i];
  return r;
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    r.c_[i] -= o.c_[i];
    if (r.c_[i] < 0) return std::nullopt;
  }
  return r;
}

bool MultiIndex::leq(const MultiIndex& o) const { return o.minus(*this).has_value(); }

std::string MultiIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
  return s + ")";
}

Z multibinom(const std::vector<int>& m, const std::vector<int>& n) {
  if (m.size() != n.size()) throw std::invalid_argument("multibinom: dimension mismatch");
  Z r = 1;
  for (std::size_t i = 0; i < m.size() && r != 0; ++i) r *= binom(m[i], n[i]);
  return r;
}

Z multibinom(const MultiIndex& m, const MultiIndex& n) {
  return multibinom(m.components(), n.components());
}

std::vector<MultiIndex> enumerateJets(std::size_t n, int p) {
  if (n < 1) throw std::invalid_argument("enumerateJets: N must be >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.emplace_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  for (int g = 0; g <= p; ++g) rec(0, g);
  return out;
}

namespace {

using IV = std::vector<int>;

IV add(IV a, const IV& b, int sign = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += sign * b[i];
  return a;
}

IV unitVec(std::size_t n, std::size_t mu) {
  IV u(n, 0);
  u[mu] = 1;
  return u;
}

std::string fmt(const IV& v) { return MultiIndex(v).str(); }

std::string fmtRaw(const IV& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct Checker {
  LemmaReport& rep;
  void record(bool ok, const std::function<std::string()>& what) {
    ++rep.checked;
    if (!ok && rep.counterexamples.size() < 50) rep.counterexamples.push_back(what());
  }
};

bool checkL0(const IV& m, const IV& n, const IV& r) {
  return multibinom(m, n) * multibinom(n, r) ==
         multibinom(m, r) * multibinom(add(m, r, -1), add(m, n, -1));
}

bool checkL2(const IV& m, const IV& n, std::size_t mu) {
  IV u = unitVec(m.size(), mu);
  return multibinom(m, n) + multibinom(m, add(n, u, -1)) - multibinom(add(m, u), n) == 0;
}

bool checkL3(const IV& m, const IV& n, const IV& s, std::size_t mu) {
  IV u = unitVec(m.size(), mu);
  Z lhs = multibinom(m, n) * multibinom(add(n, u), s);
  Z rhs = multibinom(m, s) * multibinom(add(m, s, -1), add(m, n, -1)) +
          multibinom(m, n) * multibinom(n, add(s, u, -1));
  return lhs == rhs;
}

Poly randomPoly(std::size_t nv, int maxDeg, int terms, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, maxDeg);
  std::uniform_int_distribution<std::size_t> var(0, nv - 1);
  Poly f;
  for (int t = 0; t < terms; ++t) {
    Mono m{};
    int d = deg(rng);
    for (int k = 0; k < d; ++k) ++m[var(rng)];
    int c = coef(rng);
    f.addTerm(m, GQ(Q(c == 0 ? 1 : c), Q(coef(rng))));
  }
  return f;
}

// For fixed m, r: sum_n C(m,n) C(n,r) d_{m-n} f d_{n-r} g = C(m,r) d_{m-r}(fg).
// Summing over m and r gives L1; checking each pair is stronger.
bool checkL1(const IV& m, const IV& r, const Poly& f, const Poly& g, const Poly& fg) {
  auto diff = MultiIndex(m).minus(MultiIndex(r));
  Poly rhs;
  if (diff) rhs = fg.derivative(diff->components()) * GQ(Q(multibinom(m, r)));
  Poly lhs;
  for (const auto& n : enumerateJets(m.size(), MultiIndex(m).order())) {
    const IV& nv = n.components();
    Z c = multibinom(m, nv) * multibinom(nv, r);
    if (c == 0) continue;
    Poly df = f.derivative(add(m, nv, -1));
    Poly dg = g.derivative(add(nv, r, -1));
    lhs += df * dg * GQ(Q(c));
  }
  return lhs == rhs;
}

}  // namespace

LemmaReport verifyBinomialLemmas(int maxN, int maxP, int trials, std::uint32_t seed) {
  if (maxN < 1 || maxP < 1 || trials < 0)
    throw std::invalid_argument("verifyBinomialLemmas: bounds must be >= 1");
  LemmaReport rep;
  Checker ck{rep};
  std::mt19937 rng(seed);

  for (int n = 1; n <= maxN; ++n) {
    auto jets = enumerateJets(n, maxP);
    for (const auto& mi : jets) {
      const IV& m = mi.components();
      for (const auto& ni : jets) {
        const IV& nn = ni.components();
        for (int mu = 0; mu < n; ++mu)
          ck.record(checkL2(m, nn, mu),
                    [&] { return "L2 m=" + fmt(m) + " n=" + fmt(nn) + " mu=" + std::to_string(mu); });
        for (const auto& ri : jets) {
          const IV& r = ri.components();
          ck.record(checkL0(m, nn, r), [&] {
            return "L0 m=" + fmt(m) + " n=" + fmt(nn) + " r=" + fmt(r);
          });
          for (int mu = 0; mu < n; ++mu)
            ck.record(checkL3(m, nn, r, mu), [&] {
              return "L3 m=" + fmt(m) + " n=" + fmt(nn) + " s=" + fmt(r) +
                     " mu=" + std::to_string(mu);
            });
        }
      }
    }
    Poly f = randomPoly(n, maxP + 2, 5, rng);
    Poly g = randomPoly(n, maxP + 2, 5, rng);
    Poly fg = f * g;
    for (const auto& mi : jets)
      for (const auto& ri : jets)
        ck.record(checkL1(mi.components(), ri.components(), f, g, fg), [&] {
          return "L1 m=" + mi.str() + " r=" + ri.str();
        });
  }

  // Random larger instances, including negative shifted arguments.
  std::uniform_int_distribution<int> dimD(1, 4), comp(0, 12), shift(-2, 14), muD(0, 3);
  for (int t = 0; t < trials; ++t) {
    int n = dimD(rng);
    IV m(n), nn(n), r(n), raw(n);
    for (int i = 0; i < n; ++i) {
      m[i] = comp(rng);
      nn[i] = comp(rng);
      r[i] = comp(rng);
      raw[i] = shift(rng);
    }
    std::size_t mu = static_cast<std::size_t>(muD(rng) % n);
    ck.record(checkL0(m, nn, r), [&] { return "L0 random m=" + fmt(m) + " n=" + fmt(nn) + " r=" + fmt(r); });
    ck.record(checkL2(m, raw, mu), [&] { return "L2 random m=" + fmt(m) + " n=" + fmtRaw(raw); });
    ck.record(checkL3(m, nn, r, mu), [&] { return "L3 random m=" + fmt(m) + " n=" + fmt(nn) + " s=" + fmt(r); });
    if (t % 50 == 0) {
      int ln = std::min(n, 3);
      IV lm(ln), lr(ln);
      std::uniform_int_distribution<int> small(0, 4);
      for (int i = 0; i < ln; ++i) {
        lm[i] = small(rng);
        lr[i] = small(rng) / 2;
      }
      Poly f = randomPoly(ln, 8, 4, rng), g = randomPoly(ln, 8, 4, rng);
      ck.record(checkL1(lm, lr, f, g, f * g), [&] { return "L1 random m=" + fmt(lm) + " r=" + fmt(lr); });
    }
  }
  return rep;
}

ClosedFormSums closedFormSums(int n, int p) {
  if (n < 1) throw std::invalid_argument("closedFormSums: N must be >= 1");
  auto jets = p >= 0 ? enumerateJets(n, p) : std::vector<MultiIndex>{};
  Z a = 0, b = 0, c = 0, d = 0, e = 0, delta = 0;
  for (const auto& m : jets) {
    Z m1 = m[0];
    a += 1;
    b += m1 + 1;
    d += (m1 + 1) * (m1 + 1);
    e += (m1 + 2) * (m1 + 1);
    if (n >= 2) c += (m1 + 1) * (m[1] + 1);
  }
  for (int k = 0; k <= p; ++k) delta += static_cast<long>(enumerateJets(n, p - k).size());

  ClosedFormSums out{binom(n + p, n), binom(n + p + 1, n + 1), binom(n + p + 1, n + 1),
                     binom(n + p + 2, n + 2) + binom(n + p + 1, n + 2),
                     2 * binom(n + p + 2, n + 2), std::nullopt};
  if (n >= 2) out.C = binom(n + p + 2, n + 2);

  auto need = [&](const Z& brute, const Z& closed, const char* name) {
    if (brute != closed) {
      std::ostringstream os;
      os << "closedFormSums: " << name << "(" << n << "," << p << ") brute " << brute
         << " != closed " << closed;
      throw std::logic_error(os.str());
    }
  };
  need(a, out.A, "A");
  need(b, out.B, "B");
  need(delta, out.Delta, "Delta");
  need(d, out.D, "D");
  need(e, out.E, "E");
  if (out.C) need(c, *out.C, "C");
  return out;
}

LemmaReport verifyTensorLemmas(int n, int p) {
  if (n < 1) throw std::invalid_argument("verifyTensorLemmas: N must be >= 1");
  LemmaReport rep;
  Checker ck{rep};
  auto jetsUpTo = [&](int q) { return q >= 0 ? enumerateJets(n, q) : std::vector<MultiIndex>{}; };
  auto tag = [&](const char* name, int mu, int nu) {
    return [=] {
      return std::string(name) + " N=" + std::to_string(n) + " p=" + std::to_string(p) +
             " mu=" + std::to_string(mu) + " nu=" + std::to_string(nu);
    };
  };

  for (int mu = 0; mu < n; ++mu) {
    IV u = unitVec(n, mu);
    Z lhs = 0;
    for (const auto& m : jetsUpTo(p - 1)) lhs += multibinom(add(m.components(), u), m.components());
    ck.record(lhs == binom(n + p, n + 1), tag("LB", mu, mu));
  }

  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      IV u = unitVec(n, mu), v = unitVec(n, nu);
      Z first = 0, second = 0, e = 0;
      for (const auto& m : jetsUpTo(p - 1)) {
        const IV& mc = m.components();
        first += multibinom(add(mc, u), mc) * multibinom(add(mc, v), mc);
      }
      if (mu != nu)
        for (const auto& r : jetsUpTo(p - 2)) {
          IV ruv = add(add(r.components(), u), v);
          second += multibinom(ruv, add(r.components(), v)) * multibinom(ruv, add(r.components(), u));
        }
      for (const auto& m : jetsUpTo(p - 2))
        e += multibinom(add(add(m.components(), u), v), m.components());

      Z c1 = binom(n + p + 1, n + 2), c2 = binom(n + p, n + 2);
      if (mu == nu) {
        // phi^{mm}_{mm} is hit by both contractions.
        ck.record(first == c1 + c2, tag("LC", mu, nu));
      } else {
        ck.record(first == c1, tag("LC swapped", mu, nu));
        ck.record(second == c2, tag("LC direct", mu, nu));
      }
      ck.record(e == c2, tag("LE", mu, nu));
    }
  return rep;
}

Z alternatingJetSum(int r, int p, int n) {
  if (r < 0 || r > p) throw std::invalid_argument("alternatingJetSum: need 0 <= r <= p");
  Z s = 0;
  for (int i = 0; i <= r; ++i) {
    Z t = binom(r, i) * binom(n + p - i, n);
    s += (i % 2 ? -t : t);
  }
  return s;
}

Q gSum(int r, int p, int n, const std::vector<Q>& k) {
  if (r < -1 || static_cast<int>(k.size()) != r + 1)
    throw std::invalid_argument("gSum: need r+1 coefficients");
  Q s = 0;
  for (int i = 0; i <= r; ++i) s += k[i] * Q(binom(n + p - i, n));
  return s;
}

GSumReport gSumProperties(int r, int p, int n, const std::vector<Q>& k,
                          const std::optional<std::vector<Q>>& kbar) {
  GSumReport rep;
  rep.value = gSum(r, p, n, k);

  Q k0 = k.empty() || k[0] == 0 ? Q(1) : k[0];
  std::vector<Q> staged(r + 1);
  for (int i = 0; i <= r; ++i) staged[i] = Q(binom(r, i)) * (i % 2 ? -k0 : k0);
  rep.stagedCollapse = gSum(r, p, n, staged) == Q(binom(n + p - r, n - r)) * k0;

  if (kbar && r >= 1) {
    if (static_cast<int>(kbar->size()) != r) throw std::invalid_argument("gSumProperties: kbar needs r entries");
    std::vector<Q> merged = k;
    for (int i = 1; i <= r; ++i) merged[i] += (*kbar)[i - 1];
    rep.shiftMerge = rep.value + gSum(r - 1, p - 1, n, *kbar) == gSum(r, p, n, merged);
  }

  Q total = 0;
  for (const auto& v : k) total += v;
  if (total != 0) {
    rep.note = "dimension reduction needs sum k = 0, got " + toString(total);
  } else if (n >= 1) {
    std::vector<Q> prefix(r);
    Q acc = 0;
    for (int j = 0; j < r; ++j) prefix[j] = (acc += k[j]);
    rep.dimensionReduction = rep.value == gSum(r - 1, p, n - 1, prefix);
  }
  return rep;
}

}  // namespace dgro
