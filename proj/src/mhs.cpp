#include "hodgekit/mhs.hpp"

#include <algorithm>
#include <utility>

namespace hodgekit {

WeightFiltration::WeightFiltration(int center, const std::map<int, Subspace>& steps)
    : center_(center) {
  require(!steps.empty(), "weight filtration: no steps given");
  ambient_ = steps.begin()->second.ambient();
  const Subspace full = Subspace::full(ambient_);
  const Subspace* prev = nullptr;
  for (const auto& [k, s] : steps) {
    require(s.ambient() == ambient_, "weight filtration: ambient dimension mismatch");
    if (prev) require(s.contains(*prev), "weight filtration: steps not increasing");
    prev = &s;
  }
  require(steps.rbegin()->second == full, "weight filtration: top step must be the full space");
  if (full.dim() == 0) {  // degenerate ambient: every step is 0 = full
    lo_ = center;
    steps_.push_back(full);
    return;
  }
  auto value = [&](int k) -> Subspace {
    auto it = steps.upper_bound(k);  // greatest key <= k; zero below all keys
    if (it == steps.begin()) return Subspace::zero(ambient_);
    return std::prev(it)->second;
  };
  int lo = steps.begin()->first;
  while (value(lo).dim() == 0) ++lo;
  int hi = lo;
  while (value(hi) != full) ++hi;
  lo_ = lo;
  for (int k = lo; k <= hi; ++k) steps_.push_back(value(k));
}

WeightFiltration WeightFiltration::pure(int m, Index ambient) {
  return WeightFiltration(m, {{m, Subspace::full(ambient)}});
}

Subspace WeightFiltration::at(int k) const {
  if (k < lo_) return Subspace::zero(ambient_);
  if (k >= highest()) return steps_.back();
  return steps_[static_cast<std::size_t>(k - lo_)];
}

bool operator==(const WeightFiltration& a, const WeightFiltration& b) {
  return a.center_ == b.center_ && a.ambient_ == b.ambient_ && a.lo_ == b.lo_ &&
         a.steps_ == b.steps_;
}

HodgeFiltration::HodgeFiltration(const std::map<int, Subspace>& steps) {
  require(!steps.empty(), "hodge filtration: no steps given");
  ambient_ = steps.begin()->second.ambient();
  const Subspace full = Subspace::full(ambient_);
  const Subspace* prev = nullptr;
  for (const auto& [p, s] : steps) {
    require(s.ambient() == ambient_, "hodge filtration: ambient dimension mismatch");
    if (prev) require(prev->contains(s), "hodge filtration: steps not decreasing");
    prev = &s;
  }
  auto value = [&](int p) -> Subspace {
    auto it = steps.lower_bound(p);  // least key >= p; zero above all keys
    if (it == steps.end()) return Subspace::zero(ambient_);
    return it->second;
  };
  const int min_key = steps.begin()->first;
  const int max_key = steps.rbegin()->first;
  int lo = min_key;
  while (lo <= max_key && value(lo) == full) ++lo;
  int hi = max_key;
  while (hi >= lo && value(hi).dim() == 0) --hi;
  lo_ = lo;
  for (int p = lo; p <= hi; ++p) steps_.push_back(value(p));
}

Subspace HodgeFiltration::at(int p) const {
  if (p < lo_) return Subspace::full(ambient_);
  if (p > highest()) return Subspace::zero(ambient_);
  return steps_[static_cast<std::size_t>(p - lo_)];
}

bool operator==(const HodgeFiltration& a, const HodgeFiltration& b) {
  return a.ambient_ == b.ambient_ && a.lo_ == b.lo_ && a.steps_ == b.steps_;
}

HodgeFiltration conjugate(const HodgeFiltration& f) {
  std::map<int, Subspace> steps;
  for (int p = f.lowest(); p <= f.highest(); ++p) steps.emplace(p, conjugate(f.at(p)));
  if (steps.empty()) steps.emplace(f.lowest(), Subspace::zero(f.ambient()));
  return HodgeFiltration(steps);
}

PolarizationForm::PolarizationForm(Mat m, int parity)
    : matrix(std::move(m)), weight_parity(parity) {
  require(matrix.rows() == matrix.cols(), "polarization: matrix not square");
  require(is_real(matrix), "polarization: form must have real entries");
  const Scalar sign = (((parity % 2) + 2) % 2 == 0) ? Scalar(1) : Scalar(-1);
  require(is_zero(Mat(matrix.transpose() - sign * matrix)),
          "polarization: symmetry does not match weight parity");
  require(rank(matrix) == matrix.rows(), "polarization: form is degenerate");
}

Scalar PolarizationForm::apply(const Vec& u, const Vec& v) const {
  require(u.size() == matrix.rows() && v.size() == matrix.rows(),
          "polarization: vector size mismatch");
  return (u.transpose() * matrix * v)(0, 0);
}

MixedHodgeStructure::MixedHodgeStructure(WeightFiltration w, HodgeFiltration f,
                                         std::optional<PolarizationForm> q)
    : w_(std::move(w)), f_(std::move(f)), q_(std::move(q)) {
  require(w_.ambient() == f_.ambient(), "mhs: filtration ambient dimensions differ");
  for (int k = w_.lowest(); k <= w_.highest(); ++k)
    require(is_real(w_.at(k).basis()), "mhs: weight filtration must be defined over the reals");
  if (q_) require(q_->matrix.rows() == w_.ambient(), "mhs: polarization dimension mismatch");
}

HodgeFiltration induced_filtration(const HodgeFiltration& f, const Subspace& sub,
                                   const Subspace& inside) {
  const QuotientMap qm = quotient_map(sub, inside);
  std::map<int, Subspace> steps;
  for (int p = f.lowest() - 1; p <= f.highest() + 1; ++p)
    steps.emplace(p, image(qm.projection, meet(f.at(p), inside)));
  return HodgeFiltration(steps);
}

std::optional<PurityWitness> purity_witness(const WeightFiltration& w,
                                            const HodgeFiltration& f) {
  require(w.ambient() == f.ambient(), "purity: ambient dimensions differ");
  for (int k = w.lowest(); k <= w.highest(); ++k) {
    const Subspace wk = w.at(k);
    const Subspace wk1 = w.at(k - 1);
    const Index g = wk.dim() - wk1.dim();
    if (g == 0) continue;
    const HodgeFiltration fg = induced_filtration(f, wk1, wk);
    const HodgeFiltration fgc = induced_filtration(conjugate(f), wk1, wk);
    const int p_lo = std::min(fg.lowest(), k + 1 - fgc.highest()) - 1;
    const int p_hi = std::max(fg.highest(), k + 1 - fgc.lowest()) + 1;
    for (int p = p_lo; p <= p_hi; ++p) {
      const Subspace a = fg.at(p);
      const Subspace b = fgc.at(k + 1 - p);
      if (meet(a, b).dim() != 0 || join(a, b).dim() != g) return PurityWitness{k, p};
    }
  }
  return std::nullopt;
}

bool is_mhs(const MixedHodgeStructure& mhs) {
  return !purity_witness(mhs.w(), mhs.f()).has_value();
}

PureCheck polarized_pure_check(const PolarizationForm& q, const HodgeFiltration& f, int m) {
  const Index n = f.ambient();
  require(q.matrix.rows() == n, "polarized pure: form/filtration dimension mismatch");
  require(((q.weight_parity - m) % 2) == 0, "polarized pure: form parity does not match weight");
  const HodgeFiltration fc = conjugate(f);
  const int p_lo = std::min(f.lowest(), m + 1 - fc.highest()) - 1;
  const int p_hi = std::max(f.highest(), m + 1 - fc.lowest()) + 1;
  for (int p = p_lo; p <= p_hi; ++p) {
    const Subspace a = f.at(p);
    const Subspace b = fc.at(m + 1 - p);
    if (meet(a, b).dim() != 0 || join(a, b).dim() != n)
      return {false, "graded decomposition fails at p = " + std::to_string(p)};
  }
  for (int p = p_lo; p <= p_hi; ++p) {
    const Mat rel = f.at(p).basis().transpose() * q.matrix * f.at(m + 1 - p).basis();
    if (!is_zero(rel))
      return {false, "first relation fails: Q(F^p, F^{m+1-p}) != 0 at p = " + std::to_string(p)};
  }
  for (int p = m - f.highest(); p <= f.highest(); ++p) {
    const int qdeg = m - p;
    const Subspace h = meet(f.at(p), fc.at(qdeg));
    if (h.dim() == 0) continue;
    const Mat b = h.basis();
    const Mat gram = i_power(p - qdeg) * Mat(b.transpose() * q.matrix * conjugate(Mat(b)));
    if (!is_positive_definite_hermitian(gram))
      return {false,
              "positivity fails on H^{" + std::to_string(p) + "," + std::to_string(qdeg) + "}"};
  }
  return {true, ""};
}

}  // namespace hodgekit
