#include "hodgekit/bigrading.hpp"

#include <string>
#include <vector>

namespace hodgekit {

namespace {

// Basis of V adapted to the bigrading: one block of columns per piece.
struct Frame {
  Mat c, cinv;
  std::vector<std::pair<int, int>> bidegree;
  std::vector<Index> offset, size;
};

Frame make_frame(const DeligneBigrading& bg) {
  Frame fr;
  const Index n = bg.ambient;
  fr.c = Mat(n, n);
  Index off = 0;
  for (const auto& [pq, sub] : bg.pieces) {
    fr.bidegree.push_back(pq);
    fr.offset.push_back(off);
    fr.size.push_back(sub.dim());
    fr.c.middleCols(off, sub.dim()) = sub.basis();
    off += sub.dim();
  }
  if (off != n) throw InternalError("bigrading frame: pieces do not span the ambient space");
  const auto inv = inverse(fr.c);
  if (!inv) throw InternalError("bigrading frame: adapted basis is singular");
  fr.cinv = *inv;
  return fr;
}

// The semisimple operator with the given eigenvalue on each piece.
Mat semisimple(const Frame& fr, const std::vector<Scalar>& eigenvalue) {
  const Index n = fr.c.rows();
  Mat d = Mat::Zero(n, n);
  for (std::size_t b = 0; b < fr.bidegree.size(); ++b)
    for (Index j = 0; j < fr.size[b]; ++j)
      d(fr.offset[b] + j, fr.offset[b] + j) = eigenvalue[b];
  return fr.c * d * fr.cinv;
}

std::string pq_string(const std::pair<int, int>& pq) {
  return "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
}

}  // namespace

Subspace DeligneBigrading::piece(int p, int q) const {
  auto it = pieces.find({p, q});
  return it == pieces.end() ? Subspace::zero(ambient) : it->second;
}

Index DeligneBigrading::dim(int p, int q) const {
  auto it = pieces.find({p, q});
  return it == pieces.end() ? 0 : it->second.dim();
}

DeligneBigrading deligne_bigrading(const WeightFiltration& w, const HodgeFiltration& f) {
  require(w.ambient() == f.ambient(), "bigrading: ambient dimensions differ");
  if (const auto witness = purity_witness(w, f))
    throw PreconditionError("not a mixed Hodge structure: purity fails at weight k = " +
                            std::to_string(witness->k) + ", filtration degree p = " +
                            std::to_string(witness->p));
  const HodgeFiltration fc = conjugate(f);
  DeligneBigrading bg;
  bg.ambient = w.ambient();
  for (int k = w.lowest(); k <= w.highest(); ++k) {
    for (int p = k - fc.highest(); p <= f.highest(); ++p) {
      const int q = k - p;
      Subspace tail = meet(fc.at(q), w.at(k));
      for (int j = 1; k - j - 1 >= w.lowest(); ++j)
        tail = join(tail, meet(fc.at(q - j), w.at(k - j - 1)));
      const Subspace piece = meet(meet(f.at(p), w.at(k)), tail);
      if (piece.dim() > 0) bg.pieces.emplace(std::make_pair(p, q), piece);
    }
  }
  // Purity held, so the defining properties must: any failure here is a bug.
  Index total = 0;
  Subspace span = Subspace::zero(bg.ambient);
  for (const auto& [pq, s] : bg.pieces) {
    total += s.dim();
    span = join(span, s);
  }
  if (total != bg.ambient || span.dim() != bg.ambient)
    throw InternalError("bigrading: pieces are not a direct-sum decomposition");
  for (int p = f.lowest() - 1; p <= f.highest() + 1; ++p) {
    Subspace s = Subspace::zero(bg.ambient);
    for (const auto& [pq, piece] : bg.pieces)
      if (pq.first >= p) s = join(s, piece);
    if (s != f.at(p))
      throw InternalError("bigrading: F-sum property fails at p = " + std::to_string(p));
  }
  for (int k = w.lowest() - 1; k <= w.highest(); ++k) {
    Subspace s = Subspace::zero(bg.ambient);
    for (const auto& [pq, piece] : bg.pieces)
      if (pq.first + pq.second <= k) s = join(s, piece);
    if (s != w.at(k))
      throw InternalError("bigrading: W-sum property fails at k = " + std::to_string(k));
  }
  for (const auto& [pq, piece] : bg.pieces) {
    if (bg.dim(pq.second, pq.first) != piece.dim() ||
        !join(bg.piece(pq.second, pq.first), w.at(pq.first + pq.second - 2))
             .contains(conjugate(piece)))
      throw InternalError("bigrading: conjugation symmetry fails at " + pq_string(pq));
  }
  return bg;
}

DeligneBigrading deligne_bigrading(const MixedHodgeStructure& mhs) {
  return deligne_bigrading(mhs.w(), mhs.f());
}

Mat grading_operator(const DeligneBigrading& bg) {
  const Frame fr = make_frame(bg);
  std::vector<Scalar> ev;
  ev.reserve(fr.bidegree.size());
  for (const auto& [p, q] : fr.bidegree) ev.push_back(Scalar(p + q));
  return semisimple(fr, ev);
}

std::map<std::pair<int, int>, Mat> endomorphism_components(const DeligneBigrading& bg,
                                                           const Mat& m) {
  require(m.rows() == bg.ambient && m.cols() == bg.ambient,
          "endomorphism components: dimension mismatch");
  const Frame fr = make_frame(bg);
  const Mat t = fr.cinv * m * fr.c;
  std::map<std::pair<int, int>, Mat> in_frame;
  for (std::size_t bi = 0; bi < fr.bidegree.size(); ++bi)
    for (std::size_t bj = 0; bj < fr.bidegree.size(); ++bj) {
      const Mat blk = t.block(fr.offset[bi], fr.offset[bj], fr.size[bi], fr.size[bj]);
      if (is_zero(blk)) continue;
      const std::pair<int, int> key{fr.bidegree[bi].first - fr.bidegree[bj].first,
                                    fr.bidegree[bi].second - fr.bidegree[bj].second};
      auto [it, inserted] = in_frame.try_emplace(key, Mat(Mat::Zero(bg.ambient, bg.ambient)));
      it->second.block(fr.offset[bi], fr.offset[bj], fr.size[bi], fr.size[bj]) = blk;
    }
  std::map<std::pair<int, int>, Mat> out;
  for (const auto& [key, tm] : in_frame) out.emplace(key, fr.c * tm * fr.cinv);
  return out;
}

bool is_r_split(const DeligneBigrading& bg) {
  for (const auto& [pq, piece] : bg.pieces)
    if (conjugate(piece) != bg.piece(pq.second, pq.first)) return false;
  return true;
}

bool is_r_split(const MixedHodgeStructure& mhs) {
  return is_r_split(deligne_bigrading(mhs));
}

MixedHodgeStructure r_split(const MixedHodgeStructure& mhs) {
  const DeligneBigrading bg = deligne_bigrading(mhs);
  if (is_r_split(bg)) return mhs;
  const Index n = bg.ambient;
  const Frame fr = make_frame(bg);
  std::vector<Scalar> pev, qev;
  for (const auto& [p, q] : fr.bidegree) {
    pev.push_back(Scalar(p));
    qev.push_back(Scalar(q));
  }
  const Mat y1 = semisimple(fr, pev);
  const Mat y2 = semisimple(fr, qev);
  const Mat y1_bar = conjugate(y1);
  // Solve e^{-2iδ} Y2 e^{2iδ} = conj(Y1) for real δ, one depth at a time:
  // the depth-d residual determines the bidegree-(-r,-s) parts of δ (r+s = d)
  // linearly, and everything of lower depth is already dead.
  const Scalar two_i = Scalar(2) * Scalar::i();
  const int depth_max = mhs.w().highest() - mhs.w().lowest();
  Mat delta = Mat::Zero(n, n);
  for (int d = 2; d <= depth_max; ++d) {
    const Mat a = two_i * delta;
    const Mat residual = Mat(nilpotent_exp(Mat(-a)) * y2 * nilpotent_exp(a)) - y1_bar;
    Mat delta_d = Mat::Zero(n, n);
    for (const auto& [ab, comp] : endomorphism_components(bg, residual)) {
      const int depth = -(ab.first + ab.second);
      if (depth > d) continue;  // handled at a later pass
      if (depth < d)
        throw InternalError("r-split: depth-" + std::to_string(depth) +
                            " residual did not vanish");
      const int r = -ab.first, s = -ab.second;
      if (r < 1 || s < 1)
        throw InternalError("r-split: residual component " + pq_string(ab) +
                            " outside the lowering quadrant");
      delta_d += comp * (Scalar(1) / (two_i * Scalar(s)));
    }
    if (!is_real(delta_d))
      throw InternalError("r-split: depth-" + std::to_string(d) + " correction is not real");
    delta += delta_d;
  }
  {
    const Mat a = two_i * delta;
    if (!is_zero(Mat(Mat(nilpotent_exp(Mat(-a)) * y2 * nilpotent_exp(a)) - y1_bar)))
      throw InternalError("r-split: solve left a nonzero residual");
  }
  const Mat twist = nilpotent_exp(Mat(delta * (-Scalar::i())));
  std::map<int, Subspace> steps;
  for (int p = mhs.f().lowest(); p <= mhs.f().highest(); ++p)
    steps.emplace(p, Subspace::span(twist * mhs.f().at(p).basis()));
  if (steps.empty()) steps.emplace(mhs.f().lowest(), Subspace::zero(n));
  MixedHodgeStructure out(mhs.w(), HodgeFiltration(steps), mhs.q());
  if (!is_r_split(out)) throw InternalError("r-split: output is not R-split");
  return out;
}

Mat LieAlgebraMhs::from_coords(const Vec& x) const {
  require(x.size() == basis.cols(), "lie algebra: coordinate size mismatch");
  const Vec v = basis * x;
  Mat a(n, n);
  for (Index j = 0; j < n; ++j) a.col(j) = v.segment(j * n, n);
  return a;
}

std::optional<Vec> LieAlgebraMhs::to_coords(const Mat& a) const {
  require(a.rows() == n && a.cols() == n, "lie algebra: endomorphism size mismatch");
  Vec v(n * n);
  for (Index j = 0; j < n; ++j) v.segment(j * n, n) = a.col(j);
  return solve(basis, v);
}

Mat infinitesimal_isometries(const Mat& q) {
  require(q.rows() == q.cols(), "isometry algebra: the form matrix must be square");
  const Index n = q.rows();
  // Kernel of A -> A^T Q + Q A, in column-major vec coordinates.
  Mat cond(n * n, n * n);
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v) {
      Mat e = Mat::Zero(n, n);
      e(u, v) = Scalar(1);
      const Mat res = Mat(e.transpose() * q) + Mat(q * e);
      for (Index j = 0; j < n; ++j) cond.block(j * n, u + v * n, n, 1) = res.col(j);
    }
  return kernel(cond);
}

LieAlgebraMhs lie_algebra_mhs(const MixedHodgeStructure& mhs) {
  require(mhs.q().has_value(), "lie algebra: a polarization form is required");
  const Index n = mhs.ambient();
  const Mat gbasis = infinitesimal_isometries(mhs.q()->matrix);
  const Index g = gbasis.cols();
  std::vector<Mat> bas;
  bas.reserve(static_cast<std::size_t>(g));
  for (Index a = 0; a < g; ++a) {
    Mat m(n, n);
    for (Index j = 0; j < n; ++j) m.col(j) = gbasis.col(a).segment(j * n, n);
    bas.push_back(m);
  }
  // {x : (Σ x_a B_a) source ⊆ target} as a subspace of the g-coordinates.
  auto hom_into = [&](const Subspace& source, const Subspace& target) -> Subspace {
    if (source.dim() == 0 || target.dim() == n) return Subspace::full(g);
    const Mat p = quotient_matrix(target, Subspace::full(n));
    Mat m(p.rows() * source.dim(), g);
    for (Index a = 0; a < g; ++a) {
      const Mat img = p * bas[static_cast<std::size_t>(a)] * source.basis();
      for (Index j = 0; j < img.cols(); ++j) m.block(j * p.rows(), a, p.rows(), 1) = img.col(j);
    }
    return Subspace::span(kernel(m));
  };
  const int wlo = mhs.w().lowest(), whi = mhs.w().highest();
  std::map<int, Subspace> wsteps;
  for (int k = wlo - whi; k <= whi - wlo; ++k) {
    Subspace s = Subspace::full(g);
    for (int j = wlo; j <= whi; ++j) s = meet(s, hom_into(mhs.w().at(j), mhs.w().at(j + k)));
    wsteps.emplace(k, s);
  }
  const int flo = mhs.f().lowest(), fhi = mhs.f().highest();
  std::map<int, Subspace> fsteps;
  for (int p = flo - fhi - 1; p <= fhi - flo + 1; ++p) {
    Subspace s = Subspace::full(g);
    for (int j = flo - 1; j <= fhi; ++j) s = meet(s, hom_into(mhs.f().at(j), mhs.f().at(j + p)));
    fsteps.emplace(p, s);
  }
  return LieAlgebraMhs{gbasis, n,
                       MixedHodgeStructure(WeightFiltration(0, wsteps), HodgeFiltration(fsteps))};
}

}  // namespace hodgekit
