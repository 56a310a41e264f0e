#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dgro/rational.hpp"

namespace dgro {

inline constexpr int kMaxVars = 16;

using Mono = std::array<std::uint8_t, kMaxVars>;

int degree(const Mono& m);

// Sparse multivariate polynomial with Gaussian-rational coefficients.
// Zero coefficients are never stored.
class Poly {
 public:
  Poly() = default;
  Poly(const GQ& c);
  static Poly var(int v, const GQ& c = GQ(1));
  static Poly monomial(const Mono& m, const GQ& c);

  const std::map<Mono, GQ>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  int totalDegree() const;
  int degreeIn(int v) const;
  GQ constantTerm() const;

  void addTerm(const Mono& m, const GQ& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GQ& c);

  Poly derivative(int v) const;
  // Derivative by the multi-index counts over variables 0..counts.size()-1.
  Poly derivative(const std::vector<int>& counts) const;
  // Substitutes variable v -> replacement everywhere.
  Poly substitute(int v, const Poly& replacement) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator<(const Poly& o) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  std::map<Mono, GQ> terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(Poly a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, const GQ& c);
Poly operator*(const GQ& c, Poly a);

bool operator<(const GQ& a, const GQ& b);

}  // namespace dgro
