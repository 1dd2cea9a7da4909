// Dense univariate polynomials over the exact scalar field.
//
// Frames moved by a nilpotent exponential have entries polynomial in the
// group parameter, so membership and limit questions about such frames reduce
// to exact polynomial arithmetic: evaluation, division, and gcds.
#pragma once

#include <vector>

#include "hodgekit/scalar.hpp"

namespace hodgekit {

class Poly {
 public:
  Poly() = default;  // the zero polynomial
  explicit Poly(std::vector<Scalar> coeffs);
  static Poly constant(const Scalar& c);
  static Poly variable();

  bool is_zero() const { return coeffs_.empty(); }
  // Degree, with degree(0) = -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Coefficient of z^k (zero beyond the stored degree).
  Scalar coeff(int k) const;
  Scalar eval(const Scalar& z) const;
  // Scale to leading coefficient 1; the zero polynomial stays zero.
  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& c, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim();
  std::vector<Scalar> coeffs_;  // ascending powers; empty encodes zero
};

// Euclidean division a = q·b + r with deg r < deg b; b must be nonzero.
struct PolyDivision {
  Poly quotient;
  Poly remainder;
};
PolyDivision divide(const Poly& a, const Poly& b);

// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);

}  // namespace hodgekit
