#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace dgro {

using Q = mpq_class;
using Z = mpz_class;

// Exact complex number with rational parts.
struct GQ {
  Q re, im;

  GQ() = default;
  GQ(long v) : re(v) {}
  GQ(const Q& r) : re(r) {}
  GQ(const Q& r, const Q& i) : re(r), im(i) {}

  static GQ I() { return GQ(Q(0), Q(1)); }

  bool isZero() const { return re == 0 && im == 0; }
  bool isReal() const { return im == 0; }
  GQ conj() const { return GQ(re, -im); }

  GQ& operator+=(const GQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GQ& operator-=(const GQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GQ& operator*=(const GQ& o);
  GQ& operator/=(const GQ& o);
};

GQ operator+(GQ a, const GQ& b);
GQ operator-(GQ a, const GQ& b);
GQ operator-(const GQ& a);
GQ operator*(GQ a, const GQ& b);
GQ operator/(GQ a, const GQ& b);
bool operator==(const GQ& a, const GQ& b);
inline bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

// Exact binomial C(a, b); zero when b < 0 or b > a, including negative a.
Z binom(long a, long b);

// "p/q" or "p" canonical form.
std::string toString(const Q& q);
// "p/q" for real values, "re+im*i" style otherwise.
std::string toString(const GQ& z);
Q parseRational(const std::string& s);

}  // namespace dgro
