#include "hodgekit/limit_period.hpp"

#include <cstddef>
#include <utility>

#include "hodgekit/error.hpp"

namespace hodgekit {

namespace {

Vec vec_of(const Mat& m) {
  Vec v(m.rows() * m.cols());
  for (Index j = 0; j < m.cols(); ++j) v.segment(j * m.rows(), m.rows()) = m.col(j);
  return v;
}

// Matrices realizing the columns of an n^2 x g vec-coordinate basis.
std::vector<Mat> algebra_matrices(const Mat& gbasis, Index n) {
  std::vector<Mat> bas;
  bas.reserve(static_cast<std::size_t>(gbasis.cols()));
  for (Index a = 0; a < gbasis.cols(); ++a) {
    Mat m(n, n);
    for (Index j = 0; j < n; ++j) m.col(j) = gbasis.col(a).segment(j * n, n);
    bas.push_back(m);
  }
  return bas;
}

// {x : (Σ x_a B_a)·F^p ⊆ F^{p+shift} for all p}, in the coordinates of bas.
Subspace flag_shift_subspace(const std::vector<Mat>& bas, const HodgeFiltration& f, int shift) {
  const Index g = static_cast<Index>(bas.size());
  const Index n = f.ambient();
  Subspace s = Subspace::full(g);
  for (int p = f.lowest(); p <= f.highest(); ++p) {
    const Subspace src = f.at(p);
    const Subspace dst = f.at(p + shift);
    if (src.dim() == 0 || dst.dim() == n) continue;
    const Mat ann = quotient_matrix(dst, Subspace::full(n));
    Mat m(ann.rows() * src.dim(), g);
    for (Index a = 0; a < g; ++a)
      m.col(a) = vec_of(Mat(ann * bas[static_cast<std::size_t>(a)] * src.basis()));
    s = meet(s, Subspace::span(kernel(m)));
  }
  return s;
}

// One column of a frame as trimmed ascending coefficient vectors.
std::vector<Vec> column_coefficients(const PolynomialFrame& frame, Index j) {
  std::vector<Vec> c;
  c.reserve(frame.coeff.size());
  for (const Mat& m : frame.coeff) c.push_back(m.col(j));
  while (!c.empty() && is_zero(Mat(c.back()))) c.pop_back();
  return c;
}

}  // namespace

Index PolynomialFrame::rows() const { return coeff.empty() ? 0 : coeff.front().rows(); }

Index PolynomialFrame::cols() const { return coeff.empty() ? 0 : coeff.front().cols(); }

int PolynomialFrame::degree() const {
  for (std::size_t d = coeff.size(); d > 0; --d)
    if (!is_zero(coeff[d - 1])) return static_cast<int>(d) - 1;
  return -1;
}

Mat PolynomialFrame::eval(const Scalar& z) const {
  require(!coeff.empty(), "frame: no coefficients");
  Mat out = coeff.back();
  for (std::size_t d = coeff.size() - 1; d > 0; --d) out = Mat(out * z) + coeff[d - 1];
  return out;
}

PolynomialFrame polynomial_frame(std::vector<Mat> coeff) {
  require(!coeff.empty(), "frame: at least one coefficient matrix is required");
  const Index r = coeff.front().rows(), c = coeff.front().cols();
  for (const Mat& m : coeff)
    require(m.rows() == r && m.cols() == c, "frame: coefficient shapes differ");
  while (coeff.size() > 1 && is_zero(coeff.back())) coeff.pop_back();
  PolynomialFrame frame{std::move(coeff)};
  if (c > 0) {
    // Rank over Q(i)(z) equals the rank at some sample point; every c x c
    // minor has degree at most c * deg, so c * deg + 1 points decide.
    const int samples = static_cast<int>(c) * std::max(frame.degree(), 0) + 1;
    bool independent = false;
    for (int t = 0; t < samples && !independent; ++t)
      independent = rank(frame.eval(Scalar(t))) == c;
    require(independent, "frame: columns are dependent over the rational-function field");
  }
  return frame;
}

PolynomialFrame exp_orbit_frame(const Mat& n, const Mat& basis) {
  const NilpotentEndomorphism ne = nilpotent_endomorphism(n);
  require(basis.rows() == n.rows(), "frame: basis rows must match the endomorphism");
  std::vector<Mat> coeff;
  coeff.push_back(basis);
  Mat term = basis;
  Scalar factorial(1);
  for (int d = 1; d < ne.index; ++d) {
    term = Mat(ne.matrix * term);
    factorial = factorial * Scalar(d);
    coeff.push_back(Mat(term * (Scalar(1) / factorial)));
  }
  return polynomial_frame(std::move(coeff));
}

Subspace grassmannian_limit(const PolynomialFrame& frame) {
  require(!frame.coeff.empty(), "frame: no coefficients");
  const Index rows = frame.rows(), cols = frame.cols();
  if (cols == 0) return Subspace::zero(rows);

  std::vector<std::vector<Vec>> col(static_cast<std::size_t>(cols));
  int total_degree = 0;
  for (Index j = 0; j < cols; ++j) {
    col[static_cast<std::size_t>(j)] = column_coefficients(frame, j);
    require(!col[static_cast<std::size_t>(j)].empty(),
            "frame: columns are dependent over the rational-function field");
    total_degree += static_cast<int>(col[static_cast<std::size_t>(j)].size()) - 1;
  }

  for (int round = 0; round <= total_degree + 1; ++round) {
    Mat leads(rows, cols);
    for (Index j = 0; j < cols; ++j) leads.col(j) = col[static_cast<std::size_t>(j)].back();
    const Mat dep = kernel(leads);
    if (dep.cols() == 0) return Subspace::span(leads);

    // Rewrite the participating column of largest degree as the dependency
    // combination; its top coefficient cancels, so its degree drops.
    const Vec alpha = dep.col(0);
    Index j0 = -1;
    std::size_t d0 = 0;
    for (Index j = 0; j < cols; ++j) {
      const std::size_t dj = col[static_cast<std::size_t>(j)].size() - 1;
      if (!alpha(j).is_zero() && (j0 < 0 || dj > d0)) {
        j0 = j;
        d0 = dj;
      }
    }
    std::vector<Vec> repl(d0 + 1, Vec::Zero(rows));
    for (Index j = 0; j < cols; ++j) {
      if (alpha(j).is_zero()) continue;
      const auto& cj = col[static_cast<std::size_t>(j)];
      const std::size_t shift = d0 - (cj.size() - 1);
      for (std::size_t t = 0; t < cj.size(); ++t) repl[t + shift] += Vec(cj[t] * alpha(j));
    }
    while (!repl.empty() && is_zero(Mat(repl.back()))) repl.pop_back();
    if (repl.empty())
      throw PreconditionError("frame: columns are dependent over the rational-function field");
    col[static_cast<std::size_t>(j0)] = std::move(repl);
  }
  throw InternalError("leading-term reduction failed to terminate");
}

BoundaryFlag reduced_lpm(const NilpotentOrbitData& orbit, const Mat& n) {
  const OrbitVerdict verdict = lmhs_check(orbit, n);
  require(verdict.ok, verdict.reason);
  if (is_zero(n)) return BoundaryFlag{orbit.f, true};

  std::map<int, Subspace> steps;
  for (int p = orbit.f.lowest(); p <= orbit.f.highest(); ++p) {
    const Subspace fp = orbit.f.at(p);
    if (fp.dim() == 0) continue;
    steps.emplace(p, grassmannian_limit(exp_orbit_frame(n, fp.basis())));
  }
  BoundaryFlag flag{HodgeFiltration(steps), false};
  for (int p = orbit.f.lowest(); p <= orbit.f.highest(); ++p) {
    const Subspace lim = flag.f_infinity.at(p);
    if (lim.dim() != orbit.f.at(p).dim()) throw InternalError("limit flag changed a dimension");
    if (!lim.contains(image(n, lim)))
      throw InternalError("limit flag is not stable under the cone direction");
  }
  return flag;
}

QuadrantReport lie_quadrants(const NilpotentOrbitData& orbit, const Mat& n) {
  const OrbitVerdict verdict = lmhs_check(orbit, n);
  require(verdict.ok, "quadrant report needs a passing orbit: " + verdict.reason);
  MixedHodgeStructure mhs(weight_filtration(n, orbit.center), orbit.f, orbit.q);
  if (!is_r_split(mhs)) mhs = r_split(mhs);
  const LieAlgebraMhs g = lie_algebra_mhs(mhs);
  const DeligneBigrading bg = deligne_bigrading(g.mhs);

  QuadrantReport report;
  for (const auto& [pq, piece] : bg.pieces) {
    if (piece.dim() == 0) continue;
    report.pieces.emplace(pq, piece.dim());
    const int p = pq.first, q = pq.second;
    if (p <= -1 && q <= 0)
      report.kernel_dim += piece.dim();
    else if (p <= -1)
      report.transported_dim += piece.dim();
    else if (q >= 1)
      report.cokernel_dim += piece.dim();
    else
      report.stabilizer_dim += piece.dim();
  }
  return report;
}

Index orbit_tangent_dim(const BoundaryFlag& flag, const PolarizationForm& q) {
  const HodgeFiltration& f = flag.f_infinity;
  require(q.matrix.rows() == f.ambient(), "orbit dimension: form and flag sizes differ");
  const Mat gbasis = infinitesimal_isometries(q.matrix);
  const Index g = gbasis.cols();
  const std::vector<Mat> bas = algebra_matrices(gbasis, f.ambient());
  const Subspace stab = flag_shift_subspace(bas, f, 0);

  // The defining equations of the algebra are real, so its canonical basis is
  // real and the real points of the stabilizer have the complex dimension of
  // stab ∩ conj(stab).
  const Index by_intersection = g - meet(stab, conjugate(stab)).dim();

  const QuotientMap qm = quotient_map(stab, Subspace::full(g));
  const Index c = qm.projection.rows();
  Mat realified(2 * c, g);
  for (Index a = 0; a < g; ++a) {
    const Mat cls = qm.projection.col(a);
    realified.block(0, a, c, 1) = real_part(cls);
    realified.block(c, a, c, 1) = imag_part(cls);
  }
  const Index by_image = rank(realified);

  if (by_image != by_intersection) throw InternalError("orbit dimension computations disagree");
  return by_image;
}

std::map<std::pair<int, int>, Index> orbit_invariants(const BoundaryFlag& flag) {
  const HodgeFiltration& f = flag.f_infinity;
  std::map<std::pair<int, int>, Index> table;
  for (int p = f.lowest() - 1; p <= f.highest() + 1; ++p)
    for (int q = f.lowest() - 1; q <= f.highest() + 1; ++q)
      table.emplace(std::make_pair(p, q), meet(f.at(p), conjugate(f.at(q))).dim());
  return table;
}

ResidualTangentReport residual_tangent_data(const NilpotentOrbitData& orbit) {
  const Index n = orbit.f.ambient();
  const Mat gbasis = infinitesimal_isometries(orbit.q.matrix);
  const std::vector<Mat> bas = algebra_matrices(gbasis, n);
  const Subspace horizontal = flag_shift_subspace(bas, orbit.f, -1);
  const Subspace stab = flag_shift_subspace(bas, orbit.f, 0);
  const QuotientMap qm = quotient_map(stab, horizontal);
  const Index t = horizontal.dim() - stab.dim();

  ResidualTangentReport report;
  report.tangent_dim = t;
  report.tangent_basis.reserve(static_cast<std::size_t>(t));
  for (Index k = 0; k < t; ++k) {
    const Vec x = qm.section.col(k);
    report.tangent_basis.push_back(algebra_matrices(Mat(gbasis * x), n).front());
  }

  const bool trivial_cone =
      orbit.generators.size() == 1 && is_zero(orbit.generators.front().matrix);
  if (trivial_cone) {
    report.killed = Subspace::zero(t);
  } else {
    Mat classes(t, static_cast<Index>(orbit.generators.size()));
    for (std::size_t i = 0; i < orbit.generators.size(); ++i) {
      const auto x = solve(gbasis, vec_of(orbit.generators[i].matrix));
      if (!x) throw InternalError("cone generator left the isometry algebra");
      classes.col(static_cast<Index>(i)) = Vec(qm.projection * *x);
    }
    report.killed = Subspace::span(classes);
    report.generators_dependent =
        report.killed.dim() < static_cast<Index>(orbit.generators.size());
  }
  report.killed_dim = report.killed.dim();
  report.residual_dim = t - report.killed_dim;
  return report;
}

}  // namespace hodgekit
