// Mixed Hodge structures as exact data: weight and Hodge filtrations,
// polarization forms, and the purity test that defines a MHS.
//
// Provides:
//  - WeightFiltration:  increasing W_k, normalized so W_k = 0 below lowest()
//    and W_k = everything from highest() on, with a recorded weight center
//  - HodgeFiltration:   decreasing F^p, full below lowest(), zero above
//    highest()
//  - PolarizationForm:  a real (-1)^m-symmetric nondegenerate bilinear form
//  - MixedHodgeStructure and purity_witness: (W, F) is a MHS iff the
//    filtration induced by F on every Gr_k^W is pure of weight k; the witness
//    reports the first (k, p) where purity fails
//  - polarized_pure_check: first bilinear relation + positivity of the
//    Hermitian form i^{p-q} Q(v, conj v) on each H^{p,q}
//
// The real structure is always entrywise conjugation of coordinates: weight
// filtrations and polarization forms are required to be real.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "hodgekit/subspace.hpp"

namespace hodgekit {

class WeightFiltration {
 public:
  // Steps are the recorded jumps: W_k equals the step at the greatest
  // recorded key <= k, the zero subspace below every key. The top recorded
  // step must be the full space (the filtration is exhaustive); steps must be
  // increasing.
  WeightFiltration(int center, const std::map<int, Subspace>& steps);

  // The pure-weight-m filtration: W_{m-1} = 0, W_m = everything.
  static WeightFiltration pure(int m, Index ambient);

  Index ambient() const { return ambient_; }
  int center() const { return center_; }
  // W_k = 0 for k < lowest(); W_k = full for k >= highest().
  int lowest() const { return lo_; }
  int highest() const { return lo_ + static_cast<int>(steps_.size()) - 1; }
  Subspace at(int k) const;

  friend bool operator==(const WeightFiltration& a, const WeightFiltration& b);
  friend bool operator!=(const WeightFiltration& a, const WeightFiltration& b) {
    return !(a == b);
  }

 private:
  int center_;
  Index ambient_;
  int lo_;                       // first weight with W_k != 0
  std::vector<Subspace> steps_;  // W_{lo_}, ..., W_{hi_} with W_{hi_} full
};

class HodgeFiltration {
 public:
  // Steps are the recorded jumps: F^p equals the step at the least recorded
  // key >= p, the full space below every key, zero above every key. Steps
  // must be decreasing.
  explicit HodgeFiltration(const std::map<int, Subspace>& steps);

  Index ambient() const { return ambient_; }
  // F^p = full for p < lowest(); F^p = 0 for p > highest().
  int lowest() const { return lo_; }
  int highest() const { return lo_ + static_cast<int>(steps_.size()) - 1; }
  Subspace at(int p) const;

  friend bool operator==(const HodgeFiltration& a, const HodgeFiltration& b);
  friend bool operator!=(const HodgeFiltration& a, const HodgeFiltration& b) {
    return !(a == b);
  }

 private:
  Index ambient_;
  int lo_;                       // first p with F^p != full
  std::vector<Subspace> steps_;  // F^{lo_}, ..., F^{hi_} with F^{hi_} != 0
};

// Entrywise conjugate filtration conj(F)^p = conj(F^p).
HodgeFiltration conjugate(const HodgeFiltration& f);

struct PolarizationForm {
  // Validates: square, real entries, Q^T = (-1)^weight_parity Q,
  // nondegenerate.
  PolarizationForm(Mat matrix, int weight_parity);

  Scalar apply(const Vec& u, const Vec& v) const;

  Mat matrix;
  int weight_parity;
};

class MixedHodgeStructure {
 public:
  // Validates: matching ambient dimensions, W real (each step equal to its
  // conjugate). Does NOT validate purity of the graded pieces; that is what
  // purity_witness / is_mhs are for, so invalid candidates can be diagnosed.
  MixedHodgeStructure(WeightFiltration w, HodgeFiltration f,
                      std::optional<PolarizationForm> q = std::nullopt);

  Index ambient() const { return w_.ambient(); }
  const WeightFiltration& w() const { return w_; }
  const HodgeFiltration& f() const { return f_; }
  const std::optional<PolarizationForm>& q() const { return q_; }

 private:
  WeightFiltration w_;
  HodgeFiltration f_;
  std::optional<PolarizationForm> q_;
};

// The filtration induced by F on the quotient Gr = inside/sub (coordinates of
// a QuotientMap): (induced F)^p = image of F^p ∩ inside.
HodgeFiltration induced_filtration(const HodgeFiltration& f, const Subspace& sub,
                                   const Subspace& inside);

struct PurityWitness {
  int k;  // weight whose graded piece fails
  int p;  // filtration degree where F^p Gr and conj F^{k+1-p} Gr fail to split
};

// nullopt iff (W, F) is a mixed Hodge structure: every Gr_k^W, with the
// induced filtration, satisfies F^p ⊕ conj(F^{k+1-p}) = Gr_k for all p.
// Otherwise the first failing (k, p) in increasing order.
std::optional<PurityWitness> purity_witness(const WeightFiltration& w,
                                            const HodgeFiltration& f);

bool is_mhs(const MixedHodgeStructure& mhs);

struct PureCheck {
  bool ok;
  std::string reason;  // empty when ok; otherwise which clause failed, where
};

// Is (Q(i)^n, Q, F) a polarized pure Hodge structure of weight m?
//  1. F^p ⊕ conj(F^{m+1-p}) = V for every p (Hodge decomposition);
//  2. first bilinear relation Q(F^p, F^{m+1-p}) = 0;
//  3. i^{p-q} Q(v, conj v) positive definite on every H^{p,q} = F^p ∩ conj F^q.
PureCheck polarized_pure_check(const PolarizationForm& q, const HodgeFiltration& f, int m);

inline bool is_polarized_pure(const PolarizationForm& q, const HodgeFiltration& f, int m) {
  return polarized_pure_check(q, f, m).ok;
}

}  // namespace hodgekit
