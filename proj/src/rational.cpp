#include "dgro/rational.hpp"

#include <stdexcept>

namespace dgro {

GQ& GQ::operator*=(const GQ& o) {
  Q r = re * o.re - im * o.im;
  Q i = re * o.im + im * o.re;
  re = r;
  im = i;
  return *this;
}

GQ& GQ::operator/=(const GQ& o) {
  Q n = o.re * o.re + o.im * o.im;
  if (n == 0) throw std::domain_error("division by zero");
  Q r = (re * o.re + im * o.im) / n;
  Q i = (im * o.re - re * o.im) / n;
  re = r;
  im = i;
  return *this;
}

GQ operator+(GQ a, const GQ& b) { return a += b; }
GQ operator-(GQ a, const GQ& b) { return a -= b; }
GQ operator-(const GQ& a) { return GQ(-a.re, -a.im); }
GQ operator*(GQ a, const GQ& b) { return a *= b; }
GQ operator/(GQ a, const GQ& b) { return a /= b; }
bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }

Z binom(long a, long b) {
  if (b < 0 || a < 0 || b > a) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a),
               static_cast<unsigned long>(b));
  return r;
}

std::string toString(const Q& q) {
  Q c = q;
  c.canonicalize();
  return c.get_str();
}

std::string toString(const GQ& z) {
  if (z.im == 0) return toString(z.re);
  std::string s;
  if (z.re != 0) s = toString(z.re) + (z.im > 0 ? "+" : "");
  return s + toString(z.im) + "i";
}

Q parseRational(const std::string& s) {
  Q q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace dgro
