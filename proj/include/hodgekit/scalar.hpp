// Exact scalar arithmetic: arbitrary-precision rationals and the field Q(i).
//
// Provides:
//  - Rational: boost::multiprecision::cpp_rational (always canonical p/q,
//    gcd(p,q)=1, q>0)
//  - Scalar:   a + bi with rational a, b — the coefficient field for every
//    matrix in this library
//  - conj / is_real / parsing and printing in the "p/q" wire format
//
// Scalar is an exact field: no epsilons, no rounding, equality is equality.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <sstream>
#include <string>
#include <utility>

#include "hodgekit/error.hpp"

namespace hodgekit {

using Rational = boost::multiprecision::cpp_rational;

struct Scalar {
  Rational re, im;

  Scalar() : re(0), im(0) {}
  Scalar(int v) : re(v), im(0) {}                 // NOLINT: implicit by design
  Scalar(long long v) : re(v), im(0) {}           // NOLINT
  Scalar(Rational r) : re(std::move(r)), im(0) {} // NOLINT
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return {a.re + b.re, a.im + b.im}; }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return {a.re - b.re, a.im - b.im}; }
  friend Scalar operator-(const Scalar& a) { return {-a.re, -a.im}; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw PreconditionError("division by zero scalar");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
  Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
};

inline Scalar conj(const Scalar& s) { return {s.re, -s.im}; }

// i^k for any integer k (period 4).
inline Scalar i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Scalar(1);
    case 1: return Scalar::i();
    case 2: return Scalar(-1);
    default: return -Scalar::i();
  }
}

// --- wire format -----------------------------------------------------------
//
// Rationals travel as canonical strings "p/q" (q > 0, gcd(p,q) = 1) or "p"
// when q = 1. Parsing rejects anything non-canonical enough to be ambiguous
// (empty strings, zero denominators, trailing garbage).

std::string to_string(const Rational& r);
std::string to_string(const Scalar& s);
Rational parse_rational(const std::string& text);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace hodgekit
