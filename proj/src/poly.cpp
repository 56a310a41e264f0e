#include "dgro/poly.hpp"

#include <stdexcept>

namespace dgro {

int degree(const Mono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

bool operator<(const GQ& a, const GQ& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

Poly::Poly(const GQ& c) {
  if (!c.isZero()) terms_[Mono{}] = c;
}

Poly Poly::var(int v, const GQ& c) {
  if (v < 0 || v >= kMaxVars) throw std::out_of_range("Poly::var index");
  Mono m{};
  m[v] = 1;
  return monomial(m, c);
}

Poly Poly::monomial(const Mono& m, const GQ& c) {
  Poly p;
  p.addTerm(m, c);
  return p;
}

int Poly::totalDegree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, degree(m));
  return d;
}

int Poly::degreeIn(int v) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[v]));
  return d;
}

GQ Poly::constantTerm() const {
  auto it = terms_.find(Mono{});
  return it == terms_.end() ? GQ() : it->second;
}

void Poly::addTerm(const Mono& m, const GQ& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

Poly& Poly::operator*=(const GQ& c) {
  if (c.isZero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::derivative(int v) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    Mono n = m;
    --n[v];
    r.addTerm(n, c * GQ(static_cast<long>(m[v])));
  }
  return r;
}

Poly Poly::derivative(const std::vector<int>& counts) const {
  Poly r = *this;
  for (std::size_t v = 0; v < counts.size(); ++v)
    for (int k = 0; k < counts[v] && !r.isZero(); ++k) r = r.derivative(static_cast<int>(v));
  return r;
}

Poly Poly::substitute(int v, const Poly& replacement) const {
  Poly r;
  std::vector<Poly> powers{Poly(GQ(1))};
  for (const auto& [m, c] : terms_) {
    while (static_cast<int>(powers.size()) <= m[v]) powers.push_back(powers.back() * replacement);
    Mono rest = m;
    rest[v] = 0;
    r += monomial(rest, c) * powers[m[v]];
  }
  return r;
}

bool Poly::operator<(const Poly& o) const {
  auto a = terms_.begin(), b = o.terms_.begin();
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (a->first != b->first) return a->first < b->first;
    if (a->second != b->second) return a->second < b->second;
  }
  return a == terms_.end() && b != o.terms_.end();
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + toString(c) + ")";
    for (int v = 0; v < kMaxVars; ++v) {
      if (m[v] == 0) continue;
      std::string nm = v < static_cast<int>(names.size()) ? names[v] : "x" + std::to_string(v);
      s += "*" + nm;
      if (m[v] > 1) s += "^" + std::to_string(m[v]);
    }
  }
  return s;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator-(Poly a) { return a *= GQ(-1); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Mono m;
      for (int v = 0; v < kMaxVars; ++v) {
        int e = ma[v] + mb[v];
        if (e > 255) throw std::overflow_error("Poly exponent overflow");
        m[v] = static_cast<std::uint8_t>(e);
      }
      r.addTerm(m, ca * cb);
    }
  return r;
}

Poly operator*(Poly a, const GQ& c) { return a *= c; }
Poly operator*(const GQ& c, Poly a) { return a *= c; }

}  // namespace dgro
