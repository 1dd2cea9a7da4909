#include "hodgekit/polynomial.hpp"

#include "hodgekit/error.hpp"

namespace hodgekit {

Poly::Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Scalar& c) { return Poly({c}); }

Poly Poly::variable() { return Poly({Scalar(0), Scalar(1)}); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Scalar(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Scalar Poly::eval(const Scalar& z) const {
  Scalar value(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) value = value * z + *it;
  return value;
}

Poly Poly::monic() const {
  if (is_zero()) return Poly();
  const Scalar lead = coeffs_.back();
  std::vector<Scalar> scaled = coeffs_;
  for (Scalar& c : scaled) c = c / lead;
  return Poly(std::move(scaled));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Scalar> sum(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar(0));
  for (std::size_t k = 0; k < sum.size(); ++k)
    sum[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return Poly(std::move(sum));
}

Poly operator-(const Poly& a, const Poly& b) { return a + Scalar(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Scalar> prod(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      prod[i + j] = prod[i + j] + a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(prod));
}

Poly operator*(const Scalar& c, const Poly& p) {
  std::vector<Scalar> scaled = p.coeffs_;
  for (Scalar& x : scaled) x = c * x;
  return Poly(std::move(scaled));
}

PolyDivision divide(const Poly& a, const Poly& b) {
  require(!b.is_zero(), "polynomial division by zero");
  Poly r = a;
  std::vector<Scalar> q(
      static_cast<std::size_t>(std::max(a.degree() - b.degree() + 1, 0)), Scalar(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const Scalar factor = r.coeff(r.degree()) / b.coeff(b.degree());
    q[static_cast<std::size_t>(shift)] = factor;
    std::vector<Scalar> term(static_cast<std::size_t>(shift + 1), Scalar(0));
    term.back() = factor;
    r = r - Poly(std::move(term)) * b;
  }
  return {Poly(std::move(q)), r};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace hodgekit
