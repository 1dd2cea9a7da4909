#include "hodgekit/monodromy.hpp"

#include <algorithm>
#include <random>

#include "hodgekit/bigrading.hpp"
#include "hodgekit/error.hpp"
#include "hodgekit/polynomial.hpp"

namespace hodgekit {
namespace {

// n^0, n^1, ..., n^top.
std::vector<Mat> matrix_powers(const Mat& n, int top) {
  std::vector<Mat> pw;
  pw.reserve(static_cast<std::size_t>(top) + 1);
  pw.push_back(Mat::Identity(n.rows(), n.cols()));
  for (int j = 1; j <= top; ++j) pw.push_back(Mat(pw.back() * n));
  return pw;
}

// Column-major stacking of a matrix into a vector.
Vec vec_of(const Mat& m) {
  Vec v(m.rows() * m.cols());
  Index at = 0;
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r) v(at++) = m(r, c);
  return v;
}

// Coefficients of n in the generator span when all are positive rationals.
std::optional<std::vector<Scalar>> interior_coefficients(const NilpotentOrbitData& orbit,
                                                         const Mat& n) {
  const Index d = orbit.f.ambient();
  if (orbit.generators.size() == 1 && is_zero(orbit.generators[0].matrix)) {
    if (!is_zero(n)) return std::nullopt;
    return std::vector<Scalar>{Scalar(1)};
  }
  Mat gens(d * d, static_cast<Index>(orbit.generators.size()));
  for (Index i = 0; i < gens.cols(); ++i)
    gens.col(i) = vec_of(orbit.generators[static_cast<std::size_t>(i)].matrix);
  const auto c = solve(gens, vec_of(n));
  if (!c) return std::nullopt;
  std::vector<Scalar> coeffs;
  for (Index i = 0; i < c->size(); ++i) {
    const Scalar& x = (*c)(i);
    if (!x.is_real() || !(x.re > 0)) return std::nullopt;
    coeffs.push_back(x);
  }
  return coeffs;
}

// The primitive part ker(N^{k+1}) ⊆ Gr_{m+k}, its ambient lift through the
// quotient section, the Hodge filtration restricted to it (in its own
// coordinates), and the pairing (-1)^k Q(N^k ·, ·) restricted likewise.
struct PrimitivePart {
  Subspace prim = Subspace::zero(0);  // in Gr_{m+k} coordinates
  Mat lift;                           // ambient basis lifting prim
  std::optional<HodgeFiltration> f_prim;
  Mat form;
};

PrimitivePart primitive_part(const WeightFiltration& w, const HodgeFiltration& f,
                             const Mat& qmat, const std::vector<Mat>& pw, int k) {
  const int m = w.center();
  const Subspace inside = w.at(m + k);
  const Subspace sub = w.at(m + k - 1);
  PrimitivePart out;
  if (inside.dim() == sub.dim()) return out;
  const QuotientMap top = quotient_map(sub, inside);
  const QuotientMap bot = quotient_map(w.at(m - k - 3), w.at(m - k - 2));
  const Mat down = Mat(bot.projection * pw[static_cast<std::size_t>(k) + 1] * top.section);
  out.prim = Subspace::span(kernel(down));
  if (out.prim.dim() == 0) return out;
  out.lift = Mat(top.section * out.prim.basis());

  const HodgeFiltration fgr = induced_filtration(f, sub, inside);
  std::map<int, Subspace> steps;
  for (int p = fgr.lowest(); p <= std::max(fgr.highest(), fgr.lowest()); ++p) {
    const Subspace cut = meet(fgr.at(p), out.prim);
    const auto coords = solve_matrix(out.prim.basis(), cut.basis());
    if (!coords) throw InternalError("primitive part does not contain its filtration cut");
    steps.emplace(p, Subspace::span(*coords));
  }
  out.f_prim = HodgeFiltration(steps);

  Mat s = Mat(out.lift.transpose() * pw[static_cast<std::size_t>(k)].transpose() * qmat *
              out.lift);
  if (k % 2 != 0) s = Mat(Scalar(-1) * s);
  out.form = s;
  return out;
}

}  // namespace

NilpotentEndomorphism nilpotent_endomorphism(const Mat& m) {
  require(m.rows() == m.cols(), "nilpotent endomorphism must be square");
  require(is_real(m), "nilpotent endomorphism must have rational entries");
  const Index d = m.rows();
  if (d == 0) return {m, 0, 0};
  Mat p = Mat::Identity(d, d);
  for (int k = 1; k <= d; ++k) {
    p = Mat(p * m);
    if (is_zero(p)) return {m, d, k};
  }
  throw PreconditionError("matrix is not nilpotent");
}

NilpotentOrbitData nilpotent_orbit_data(const HodgeFiltration& f,
                                        const std::vector<Mat>& generators, int center,
                                        const PolarizationForm& q) {
  require(!generators.empty(), "orbit needs at least one cone generator");
  const Index d = f.ambient();
  require(q.matrix.rows() == d, "polarization dimension does not match the filtration");
  require(q.weight_parity == ((center % 2) + 2) % 2,
          "polarization parity does not match the weight center");
  std::vector<NilpotentEndomorphism> gens;
  for (const Mat& g : generators) {
    require(g.rows() == d && g.cols() == d, "cone generator dimension mismatch");
    gens.push_back(nilpotent_endomorphism(g));
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      require(is_zero(Mat(gens[i].matrix * gens[j].matrix - gens[j].matrix * gens[i].matrix)),
              "cone generators do not commute");
  const bool trivial_cone = gens.size() == 1 && is_zero(gens[0].matrix);
  if (!trivial_cone) {
    Mat stacked(d * d, static_cast<Index>(gens.size()));
    for (Index i = 0; i < stacked.cols(); ++i)
      stacked.col(i) = vec_of(gens[static_cast<std::size_t>(i)].matrix);
    require(rank(stacked) == stacked.cols(), "cone generators are linearly dependent");
  }
  for (const auto& g : gens) {
    for (int p = f.lowest(); p <= f.highest(); ++p)
      require(f.at(p - 1).contains(image(g.matrix, f.at(p))),
              "cone generator does not shift F^p into F^{p-1}");
    require(is_zero(Mat(g.matrix.transpose() * q.matrix + q.matrix * g.matrix)),
            "cone generator is not an infinitesimal isometry of Q");
  }
  return {f, std::move(gens), center, q};
}

WeightFiltration weight_filtration(const NilpotentEndomorphism& n, int center) {
  const Index d = n.ambient_dim;
  if (d == 0) return WeightFiltration(center, {{center, Subspace::full(0)}});
  const int nu = n.index;
  const auto pw = matrix_powers(n.matrix, nu);
  std::vector<Subspace> ker_pow, im_pow;
  for (int j = 0; j <= nu; ++j) {
    ker_pow.push_back(Subspace::span(kernel(pw[static_cast<std::size_t>(j)])));
    im_pow.push_back(Subspace::span(pw[static_cast<std::size_t>(j)]));
  }
  // W_k = Σ_{a ≥ 0} ker N^{a+1} ∩ im N^{a-k}, with N^j for j ≤ 0 surjective.
  // The same (kernel, image) pairs recur across weights, so meets are
  // memoized; each step extends the previous one since the filtration is
  // increasing termwise in k.
  std::map<std::pair<int, int>, Subspace> meets;
  const auto term = [&](int kpow, int ipow) -> const Subspace& {
    const auto key = std::make_pair(kpow, ipow);
    const auto found = meets.find(key);
    if (found != meets.end()) return found->second;
    Subspace value = ipow == 0   ? ker_pow[static_cast<std::size_t>(kpow)]
                     : kpow == nu ? im_pow[static_cast<std::size_t>(ipow)]
                                  : meet(ker_pow[static_cast<std::size_t>(kpow)],
                                         im_pow[static_cast<std::size_t>(ipow)]);
    return meets.emplace(key, std::move(value)).first->second;
  };
  std::map<int, Subspace> steps;
  for (int k = -(nu - 1); k <= nu - 1; ++k) {
    Subspace wk = k > -(nu - 1) ? steps.at(center + k - 1) : Subspace::zero(d);
    for (int a = 0; a < nu && wk.dim() < d; ++a) {
      const int kpow = std::min(a + 1, nu);
      const int ipow = std::clamp(a - k, 0, nu);
      if (ipow == nu) continue;  // the image of N^nu is zero
      wk = join(wk, term(kpow, ipow));
    }
    steps.emplace(center + k, wk);
  }
  return WeightFiltration(center, steps);
}

WeightFiltration weight_filtration(const Mat& n, int center) {
  return weight_filtration(nilpotent_endomorphism(n), center);
}

OrbitVerdict lmhs_check(const NilpotentOrbitData& orbit, const Mat& n) {
  require(n.rows() == orbit.f.ambient() && n.cols() == n.rows(),
          "cone point dimension mismatch");
  require(interior_coefficients(orbit, n).has_value(),
          "N is not in the open cone of the orbit generators");
  const NilpotentEndomorphism ne = nilpotent_endomorphism(n);
  const WeightFiltration w = weight_filtration(ne, orbit.center);
  if (const auto witness = purity_witness(w, orbit.f))
    return {false, "not a mixed Hodge structure: purity fails at weight k = " +
                       std::to_string(witness->k) +
                       ", filtration degree p = " + std::to_string(witness->p)};
  const auto pw = matrix_powers(n, ne.index);
  for (int k = 0; k <= w.highest() - orbit.center; ++k) {
    const PrimitivePart pp = primitive_part(w, orbit.f, orbit.q.matrix, pw, k);
    if (pp.prim.dim() == 0) continue;
    const int weight = orbit.center + k;
    const std::string where = "primitive part at weight " + std::to_string(weight);
    try {
      const PolarizationForm qk(pp.form, ((weight % 2) + 2) % 2);
      const PureCheck pc = polarized_pure_check(qk, *pp.f_prim, weight);
      if (!pc.ok) return {false, where + ": " + pc.reason};
    } catch (const PreconditionError& e) {
      return {false, where + ": " + std::string(e.what())};
    }
  }
  return {true, ""};
}

OrbitVerdict nilpotent_orbit_check(const NilpotentOrbitData& orbit) {
  const Index d = orbit.f.ambient();
  Mat sum = Mat::Zero(d, d);
  for (const auto& g : orbit.generators) sum += g.matrix;
  return lmhs_check(orbit, sum);
}

NStringDiagram n_strings(const NilpotentOrbitData& orbit, const Mat& n) {
  const OrbitVerdict verdict = lmhs_check(orbit, n);
  require(verdict.ok, "n_strings needs a passing orbit: " + verdict.reason);
  const NilpotentEndomorphism ne = nilpotent_endomorphism(n);
  const WeightFiltration w = weight_filtration(ne, orbit.center);
  const auto pw = matrix_powers(n, ne.index);
  const int m = orbit.center;
  NStringDiagram diagram{m, {}};
  Index total = 0;
  for (int k = w.highest() - m; k >= 0; --k) {
    const PrimitivePart pp = primitive_part(w, orbit.f, orbit.q.matrix, pw, k);
    if (pp.prim.dim() == 0) continue;
    NString s;
    s.base_weight = m - k;
    s.length = k;
    // The primitive part is pure of weight m + k and equals H(-k) for the
    // untwisted bottom piece H, so its types shift down by (k, k).
    const DeligneBigrading bg =
        deligne_bigrading(WeightFiltration::pure(m + k, pp.prim.dim()), *pp.f_prim);
    for (const auto& [pq, piece] : bg.pieces)
      if (piece.dim() > 0) s.hodge[{pq.first - k, pq.second - k}] = piece.dim();
    s.chain.resize(static_cast<std::size_t>(k) + 1);
    for (int j = k; j >= 0; --j) {
      s.chain[static_cast<std::size_t>(j)] = Mat(pw[static_cast<std::size_t>(k - j)] * pp.lift);
      if (rank(s.chain[static_cast<std::size_t>(j)]) != pp.prim.dim())
        throw InternalError("N-string piece dropped rank");
      total += pp.prim.dim();
    }
    diagram.strings.push_back(std::move(s));
  }
  if (total != orbit.f.ambient())
    throw InternalError("N-string dimensions do not sum to the ambient dimension");
  return diagram;
}

bool cone_weight_independence(const NilpotentOrbitData& orbit, int samples, unsigned seed) {
  if (orbit.generators.size() == 1) return true;
  const Index d = orbit.f.ambient();
  Mat sum = Mat::Zero(d, d);
  for (const auto& g : orbit.generators) sum += g.matrix;
  const WeightFiltration reference = weight_filtration(Mat(sum), orbit.center);
  std::mt19937 rng(seed);
  const int pool[] = {1, 2, 3, 5, 7};
  std::uniform_int_distribution<int> pick(0, 4);
  for (int s = 0; s < samples; ++s) {
    Mat point = Mat::Zero(d, d);
    for (const auto& g : orbit.generators) {
      const Scalar c(Rational(pool[pick(rng)], pool[pick(rng)]));
      point += c * g.matrix;
    }
    if (weight_filtration(point, orbit.center) != reference) return false;
  }
  return true;
}

std::optional<Scalar> equivalent_orbits(const HodgeFiltration& f, const HodgeFiltration& f2,
                                        const Mat& n) {
  require(f.ambient() == f2.ambient(), "filtrations live on different ambient spaces");
  const NilpotentEndomorphism ne = nilpotent_endomorphism(n);
  require(ne.ambient_dim == f.ambient(), "nilpotent endomorphism dimension mismatch");
  const int lo = std::min(f.lowest(), f2.lowest());
  const int hi = std::max(f.highest(), f2.highest());
  for (int p = lo; p <= hi; ++p)
    if (f.at(p).dim() != f2.at(p).dim()) return std::nullopt;

  // exp(zN)·B is polynomial in z with matrix coefficients N^j / j!.
  std::vector<Mat> terms = matrix_powers(n, std::max(ne.index - 1, 0));
  Rational fact(1);
  for (std::size_t j = 2; j < terms.size(); ++j) {
    fact *= static_cast<int>(j);
    terms[j] = Mat(Scalar(Rational(1) / fact) * terms[j]);
  }

  // exp(zN)·F^p ⊆ F2^p says each entry of ann(F2^p)·exp(zN)·basis(F^p)
  // vanishes; with equal dimensions inclusion is equality.
  std::vector<Poly> eqs;
  for (int p = lo; p <= hi; ++p) {
    const Subspace fp = f.at(p);
    const Subspace gp = f2.at(p);
    if (fp.dim() == 0 || gp.dim() == f.ambient()) continue;
    const Mat ann = Mat(kernel(Mat(gp.basis().transpose())).transpose());
    std::vector<Mat> rows;
    for (const Mat& t : terms) rows.push_back(Mat(ann * t * fp.basis()));
    for (Index u = 0; u < rows.front().rows(); ++u)
      for (Index v = 0; v < rows.front().cols(); ++v) {
        std::vector<Scalar> coeffs;
        for (const Mat& r : rows) coeffs.push_back(r(u, v));
        Poly eq(std::move(coeffs));
        if (!eq.is_zero()) eqs.push_back(std::move(eq));
      }
  }
  // No constraints: the whole z-line works, and 0 is the canonical point.
  if (eqs.empty()) return Scalar(0);

  // A nonempty solution set with a nonzero constraint is a single point
  // (two solutions z1 ≠ z2 would make exp((z2-z1)N) generate an infinite
  // stabilizer, forcing the constraints to vanish identically), so the gcd
  // is either constant or a power of one linear factor.
  Poly g;
  for (const Poly& eq : eqs) g = gcd(g, eq);
  if (g.degree() <= 0) return std::nullopt;
  const int e = g.degree();
  const Scalar root = Scalar(-1) * g.coeff(e - 1) / Scalar(e);
  if (!g.eval(root).is_zero()) return std::nullopt;
  const Mat exp_root = nilpotent_exp(Mat(root * n));
  for (int p = lo; p <= hi; ++p)
    if (Subspace::span(Mat(exp_root * f.at(p).basis())) != f2.at(p)) return std::nullopt;
  return root;
}

}  // namespace hodgekit
