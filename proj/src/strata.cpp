#include "hodgekit/strata.hpp"

#include <cstddef>
#include <set>
#include <tuple>

#include "hodgekit/error.hpp"

namespace hodgekit {

namespace {

std::string spot_name(int k, int q) {
  return "level " + std::to_string(k) + ", degree " + std::to_string(q);
}

// The Gysin-direction cohomology of the twisted column through H^q(X^[t])(-k):
// kernel of the outgoing Gysin map modulo the image of the incoming one,
// under the twist admission rule.
struct GySpot {
  bool admitted = false;
  Index ambient = 0;
  Subspace kernel_sub = Subspace::zero(0);
  Subspace image_sub = Subspace::zero(0);
  QuotientMap coords;

  Index dim() const { return kernel_sub.dim() - image_sub.dim(); }
};

GySpot gy_spot(const StrataComplexData& data, int degree, int level, int twist) {
  GySpot s;
  if (level < 1 || degree < 0 || twist < 0 || twist > level - 1 - kTwistAdmissionSlack)
    return s;
  s.admitted = true;
  s.ambient = stratum_dim(data.spaces, level, degree);
  // The outgoing map exists only while the twist can still drop by one and
  // stay admitted one level down.
  const bool has_out = twist >= 1 && level >= 2;
  s.kernel_sub = has_out ? Subspace::span(kernel(gysin_matrix(data, level, degree)))
                         : Subspace::full(s.ambient);
  const Mat in = gysin_matrix(data, level + 1, degree - 2);
  s.image_sub = image(in, Subspace::full(in.cols()));
  if (!s.kernel_sub.contains(s.image_sub))
    throw InternalError("Gysin maps do not square to zero at " + spot_name(level, degree));
  s.coords = quotient_map(s.image_sub, s.kernel_sub);
  return s;
}

// The restriction map descended to Gysin cohomology; requires the descent
// inclusions, which anti-commutativity guarantees.
Mat induced_rest(const StrataComplexData& data, int degree, const GySpot& from,
                 int from_level, const GySpot& to) {
  if (!from.admitted || !to.admitted) return Mat::Zero(to.admitted ? to.dim() : 0, 0);
  const Mat r = rest_matrix(data, from_level, degree);
  if (!to.kernel_sub.contains(image(r, from.kernel_sub)) ||
      !to.image_sub.contains(image(r, from.image_sub)))
    throw InternalError("restriction fails to descend to the Gysin cohomology at " +
                        spot_name(from_level, degree));
  return Mat(to.coords.projection * r * from.coords.section);
}

}  // namespace

StratumSpaces stratum_spaces(int dim_x, std::map<int, std::map<int, GradedPiece>> levels) {
  require(dim_x >= 0, "strata: the ambient dimension must be nonnegative");
  for (const auto& [k, qs] : levels) {
    require(k >= 1, "strata: levels are indexed from 1");
    for (const auto& [q, piece] : qs) {
      require(q >= 0, "strata: cohomological degrees are nonnegative");
      require(piece.dim >= 0, "strata: dimensions are nonnegative");
      require(piece.dim == 0 || q <= 2 * (dim_x + 1 - k),
              "strata: H^" + std::to_string(q) + " exceeds twice the dimension of X^[" +
                  std::to_string(k) + "]");
      if (!piece.hodge) continue;
      Index total = 0;
      for (const auto& [p, d] : *piece.hodge) {
        require(d >= 0, "strata: Hodge numbers are nonnegative");
        require(d == 0 || (p >= 0 && q - p >= 0),
                "strata: Hodge bidegree out of range at " + spot_name(k, q));
        total += d;
        const auto partner = piece.hodge->find(q - p);
        const Index pd = partner == piece.hodge->end() ? 0 : partner->second;
        require(pd == d, "strata: Hodge numbers are not conjugation-symmetric at " +
                             spot_name(k, q));
      }
      require(total == piece.dim,
              "strata: Hodge numbers do not sum to the dimension at " + spot_name(k, q));
    }
  }
  return StratumSpaces{dim_x, std::move(levels)};
}

Index stratum_dim(const StratumSpaces& spaces, int k, int q) {
  const auto lvl = spaces.levels.find(k);
  if (lvl == spaces.levels.end()) return 0;
  const auto piece = lvl->second.find(q);
  return piece == lvl->second.end() ? 0 : piece->second.dim;
}

Index stratum_hodge_dim(const StratumSpaces& spaces, int k, int q, int p) {
  const auto lvl = spaces.levels.find(k);
  if (lvl == spaces.levels.end()) return 0;
  const auto piece = lvl->second.find(q);
  if (piece == lvl->second.end() || !piece->second.hodge) return 0;
  const auto it = piece->second.hodge->find(p);
  return it == piece->second.hodge->end() ? 0 : it->second;
}

Mat rest_matrix(const StrataComplexData& data, int k, int q) {
  const auto it = data.rest.find({k, q});
  if (it != data.rest.end()) return it->second;
  return Mat::Zero(stratum_dim(data.spaces, k + 1, q), stratum_dim(data.spaces, k, q));
}

Mat gysin_matrix(const StrataComplexData& data, int k, int q) {
  const auto it = data.gysin.find({k, q});
  if (it != data.gysin.end()) return it->second;
  return Mat::Zero(stratum_dim(data.spaces, k - 1, q + 2), stratum_dim(data.spaces, k, q));
}

StrataComplexData strata_complex_data(StratumSpaces spaces,
                                      std::map<std::pair<int, int>, Mat> rest,
                                      std::map<std::pair<int, int>, Mat> gysin) {
  for (const auto& [kq, m] : rest) {
    require(kq.first >= 1, "strata: restriction source must be a stratum level");
    require(m.rows() == stratum_dim(spaces, kq.first + 1, kq.second) &&
                m.cols() == stratum_dim(spaces, kq.first, kq.second),
            "strata: restriction map shape mismatch at " + spot_name(kq.first, kq.second));
  }
  for (const auto& [kq, m] : gysin) {
    require(kq.first >= 2, "strata: Gysin source must lie at level two or deeper");
    require(m.rows() == stratum_dim(spaces, kq.first - 1, kq.second + 2) &&
                m.cols() == stratum_dim(spaces, kq.first, kq.second),
            "strata: Gysin map shape mismatch at " + spot_name(kq.first, kq.second));
  }
  StrataComplexData data{std::move(spaces), std::move(rest), std::move(gysin)};
  const int kmax = data.spaces.levels.empty() ? 0 : data.spaces.levels.rbegin()->first;
  int qmax = 0;
  for (const auto& [k, qs] : data.spaces.levels)
    if (!qs.empty()) qmax = std::max(qmax, qs.rbegin()->first);
  for (int k = 1; k <= kmax; ++k)
    for (int q = 0; q <= qmax; ++q) {
      require(is_zero(Mat(rest_matrix(data, k + 1, q) * rest_matrix(data, k, q))),
              "strata: restriction maps do not square to zero at " + spot_name(k, q));
      require(is_zero(Mat(gysin_matrix(data, k - 1, q + 2) * gysin_matrix(data, k, q))),
              "strata: Gysin maps do not square to zero at " + spot_name(k, q));
    }
  return data;
}

StrataVerdict validate_strata(const StrataComplexData& data) {
  const int kmax = data.spaces.levels.empty() ? 0 : data.spaces.levels.rbegin()->first;
  int qmax = 0;
  for (const auto& [k, qs] : data.spaces.levels)
    if (!qs.empty()) qmax = std::max(qmax, qs.rbegin()->first);
  for (int k = 2; k <= kmax; ++k)
    for (int q = 0; q <= qmax; ++q) {
      const Mat via_gysin = Mat(rest_matrix(data, k - 1, q + 2) * gysin_matrix(data, k, q));
      const Mat via_rest = Mat(gysin_matrix(data, k + 1, q) * rest_matrix(data, k, q));
      const Mat residual = via_gysin + via_rest;
      if (!is_zero(residual)) {
        StrataVerdict verdict;
        verdict.ok = false;
        verdict.square = {k, q};
        verdict.residual = residual;
        verdict.reason =
            "restriction and Gysin maps fail to anti-commute on the square at " +
            spot_name(k, q);
        return verdict;
      }
    }
  return StrataVerdict{};
}

E1Page e1_page(const StrataComplexData& data, int i) {
  for (const auto& [k, qs] : data.spaces.levels)
    for (const auto& [q, piece] : qs)
      require(piece.dim == 0 || piece.hodge.has_value(),
              "first page needs a Hodge grading on H^" + std::to_string(q) + "(X^[" +
                  std::to_string(k) + "])");
  E1Page page;
  page.i = i;
  for (const auto& [level, qs] : data.spaces.levels)
    for (const auto& [q, piece] : qs) {
      if (piece.dim == 0) continue;
      for (const auto& [p, d] : *piece.hodge) {
        if (d == 0 || p + level - 1 != i) continue;
        const int hq = q - p;
        for (int b = 1 - level; b <= level - 1; b += 2) {
          const int sum_index = (level - 1 + b) / 2;
          E1Cell& cell = page.cells[{hq - b, b}];
          cell.dim += d;
          cell.sources.push_back({sum_index, level, p, hq, d});
        }
      }
    }
  return page;
}

E1Audit e1_multiplicity_audit(const StrataComplexData& data) {
  // Appearances of each Hodge piece across all pages, found by scanning.
  std::map<std::tuple<int, int, int>, std::set<std::pair<int, int>>> hits;
  int imax = 0;
  for (const auto& [level, qs] : data.spaces.levels)
    for (const auto& [q, piece] : qs) {
      if (piece.dim == 0 || !piece.hodge) continue;
      for (const auto& [p, d] : *piece.hodge)
        if (d > 0) imax = std::max(imax, p + level - 1);
    }
  for (int i = 0; i <= imax; ++i) {
    const E1Page page = e1_page(data, i);
    for (const auto& [ab, cell] : page.cells)
      for (const auto& src : cell.sources)
        hits[{src.level, src.p, src.hodge_q}].insert({i, ab.second});
  }
  for (const auto& [level, qs] : data.spaces.levels)
    for (const auto& [q, piece] : qs) {
      if (piece.dim == 0 || !piece.hodge) continue;
      for (const auto& [p, d] : *piece.hodge) {
        if (d == 0) continue;
        const auto& seen = hits[{level, p, q - p}];
        std::set<int> is;
        std::set<int> bs;
        for (const auto& [i, b] : seen) {
          is.insert(i);
          bs.insert(b);
        }
        std::set<int> expected_b;
        for (int b = 1 - level; b <= level - 1; b += 2) expected_b.insert(b);
        const std::string name = "H^{" + std::to_string(p) + "," + std::to_string(q - p) +
                                 "}(X^[" + std::to_string(level) + "])";
        if (is.size() != 1 || *is.begin() != p + level - 1)
          return E1Audit{false, name + " does not appear at exactly one page index"};
        if (bs != expected_b)
          return E1Audit{false, name + " does not appear at exactly its " +
                                    std::to_string(level) + " expected row positions"};
      }
    }
  return E1Audit{};
}

StrataStringReport strata_string_pieces(const StrataComplexData& data, int m) {
  require(m >= 0, "string decomposition: the degree must be nonnegative");
  const StrataVerdict verdict = validate_strata(data);
  require(verdict.ok,
          "string decomposition needs anti-commuting differentials: " + verdict.reason);

  StrataStringReport report;
  report.m = m;
  for (int i = 0; i <= m; ++i) {
    const int degree = m - i;
    const int center = i + 1;
    // Retained between twists to express the twisted-identity maps: the
    // incoming Gysin image is twist-independent and the kernels only grow as
    // the twist drops, so identity on representatives descends.
    Mat prev_to_coords;
    bool have_prev = false;
    for (int j = 0; j <= i; ++j) {
      const GySpot left = gy_spot(data, degree, center - 1, j);
      const GySpot mid = gy_spot(data, degree, center, j);
      const GySpot right = gy_spot(data, degree, center + 1, j);
      if (!mid.admitted) throw InternalError("central string spot not admitted");

      const Mat ind_in = induced_rest(data, degree, left, center - 1, mid);
      const Mat ind_out = induced_rest(data, degree, mid, center, right);
      const Subspace closed = ind_out.rows() == 0 ? Subspace::full(mid.dim())
                                                  : Subspace::span(kernel(ind_out));
      const Subspace exact = image(ind_in, Subspace::full(ind_in.cols()));
      if (!closed.contains(exact))
        throw InternalError("string complex differentials do not compose to zero");
      const QuotientMap pm = quotient_map(exact, closed);

      StrataStringPiece piece;
      piece.dim = closed.dim() - exact.dim();
      piece.basis = Mat(mid.coords.section * pm.section);
      // Coordinates of an ambient representative in this piece.
      const Mat to_coords = Mat(pm.projection * mid.coords.projection);
      if (have_prev)
        report.n_maps.emplace(std::make_pair(i, j), Mat(prev_to_coords * piece.basis));
      report.pieces.emplace(std::make_pair(i, j), std::move(piece));
      prev_to_coords = to_coords;
      have_prev = true;
    }
  }
  return report;
}

std::map<int, Index> strata_string_weight_dims(const StrataStringReport& report) {
  std::map<int, Index> dims;
  for (const auto& [ij, piece] : report.pieces)
    if (piece.dim > 0) dims[report.m - ij.first + 2 * ij.second] += piece.dim;
  return dims;
}

SurfaceDoubleCurve surface_double_curve(int c1_sq, int c2_sq) {
  std::map<int, std::map<int, GradedPiece>> levels;
  levels[1][0] = GradedPiece{1, std::map<int, Index>{{0, 1}}};
  levels[1][2] = GradedPiece{2, std::map<int, Index>{{1, 2}}};
  levels[2][0] = GradedPiece{1, std::map<int, Index>{{0, 1}}};
  levels[2][2] = GradedPiece{1, std::map<int, Index>{{1, 1}}};

  // Rest on H² sends a curve class to its degree on the double locus, with
  // the stated opposite signs on the two branches; Gy inserts the branch
  // curve classes with alternating sign.
  Mat rest2(1, 2);
  rest2(0, 0) = Scalar(c1_sq);
  rest2(0, 1) = Scalar(-c2_sq);
  Mat gy(2, 1);
  gy(0, 0) = Scalar(1);
  gy(1, 0) = Scalar(-1);
  std::map<std::pair<int, int>, Mat> rest;
  rest.emplace(std::make_pair(1, 2), rest2);
  rest.emplace(std::make_pair(1, 0), Mat(Mat::Zero(1, 1)));
  std::map<std::pair<int, int>, Mat> gysin;
  gysin.emplace(std::make_pair(2, 0), gy);

  SurfaceDoubleCurve out{strata_complex_data(stratum_spaces(2, std::move(levels)),
                                             std::move(rest), std::move(gysin)),
                         Vec(2)};
  const Mat defect = Mat(rest_matrix(out.data, 1, 2) * gysin_matrix(out.data, 2, 0));
  out.composite = Vec(gysin_matrix(out.data, 2, 0) * (defect(0, 0) / Scalar(2)));
  return out;
}

StrataComplexData nodal_curve_strata(const NodalCurveLayout& layout) {
  const Index r = static_cast<Index>(layout.genera.size());
  require(r >= 1, "nodal curve: at least one component is required");
  Index gsum = 0;
  for (int g : layout.genera) {
    require(g >= 0, "nodal curve: negative genus");
    gsum += g;
  }
  const Index delta = static_cast<Index>(layout.nodes.size());
  for (const auto& [a, b] : layout.nodes)
    require(a >= 0 && a < r && b >= 0 && b < r,
            "nodal curve: node incidence out of range");

  std::map<int, std::map<int, GradedPiece>> levels;
  levels[1][0] = GradedPiece{r, std::map<int, Index>{{0, r}}};
  if (gsum > 0)
    levels[1][1] = GradedPiece{2 * gsum, std::map<int, Index>{{0, gsum}, {1, gsum}}};
  levels[1][2] = GradedPiece{r, std::map<int, Index>{{1, r}}};
  if (delta > 0) levels[2][0] = GradedPiece{delta, std::map<int, Index>{{0, delta}}};

  std::map<std::pair<int, int>, Mat> rest;
  std::map<std::pair<int, int>, Mat> gysin;
  if (delta > 0) {
    Mat branch = Mat::Zero(delta, r);
    for (Index v = 0; v < delta; ++v) {
      branch(v, layout.nodes[static_cast<std::size_t>(v)].first) += Scalar(1);
      branch(v, layout.nodes[static_cast<std::size_t>(v)].second) -= Scalar(1);
    }
    rest.emplace(std::make_pair(1, 0), branch);
    gysin.emplace(std::make_pair(2, 0), Mat(branch.transpose()));
  }
  return strata_complex_data(stratum_spaces(1, std::move(levels)), std::move(rest),
                             std::move(gysin));
}

}  // namespace hodgekit
