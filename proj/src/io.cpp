#include "hodgekit/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "hodgekit/error.hpp"

namespace hodgekit::io {

namespace {

// --- strict JSON access ------------------------------------------------------

const Json& expect_object(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + " must be a JSON object");
  return j;
}

const Json& expect_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be a JSON array");
  return j;
}

// Every key must appear in `allowed`, and every name in `required` must be
// present; the two lists together are the schema of one object.
void check_keys(const Json& obj, const std::string& what,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  for (const auto& [key, value] : obj.items()) {
    const bool known =
        std::find_if(required.begin(), required.end(),
                     [&](const char* k) { return key == k; }) != required.end() ||
        std::find_if(optional.begin(), optional.end(),
                     [&](const char* k) { return key == k; }) != optional.end();
    if (!known) throw ParseError(what + " has an unknown field \"" + key + "\"");
  }
  for (const char* k : required)
    if (!obj.contains(k)) throw ParseError(what + " is missing the field \"" + k + "\"");
}

const Json* find(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

long long require_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ParseError(what + " must be an integer");
  if (j.is_number_unsigned() &&
      j.get<std::uint64_t>() >
          static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
    throw ParseError(what + " is too large");
  return j.get<long long>();
}

Index require_index(const Json& j, const std::string& what) {
  const long long v = require_int(j, what);
  if (v < 0) throw ParseError(what + " must be nonnegative");
  return static_cast<Index>(v);
}

bool require_bool(const Json& j, const std::string& what) {
  if (!j.is_boolean()) throw ParseError(what + " must be a boolean");
  return j.get<bool>();
}

std::string require_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw ParseError(what + " must be a string");
  return j.get<std::string>();
}

// Object keys that encode integers ("-1", "0", "2").
int int_key(const std::string& key, const std::string& what) {
  try {
    const Rational r = parse_rational(key);
    if (denominator(r) != 1) throw ParseError("");
    if (r > std::numeric_limits<int>::max() || r < std::numeric_limits<int>::min())
      throw ParseError("");
    return static_cast<int>(numerator(r));
  } catch (const ParseError&) {
    throw ParseError(what + " has a non-integer key \"" + key + "\"");
  }
}

// --- shared pieces of schemas -----------------------------------------------

Json columns_to_json(const Mat& m) {
  Json cols = Json::array();
  for (Index j = 0; j < m.cols(); ++j) {
    Json col = Json::array();
    for (Index i = 0; i < m.rows(); ++i) col.push_back(scalar_to_json(m(i, j)));
    cols.push_back(col);
  }
  return cols;
}

Mat columns_from_json(const Json& j, Index ambient, const std::string& what) {
  const Json& cols = expect_array(j, what);
  Mat m(ambient, static_cast<Index>(cols.size()));
  for (Index c = 0; c < m.cols(); ++c) {
    const Json& col = expect_array(cols[static_cast<std::size_t>(c)],
                                   what + ", column " + std::to_string(c));
    if (static_cast<Index>(col.size()) != ambient)
      throw ParseError(what + ", column " + std::to_string(c) + " must have " +
                       std::to_string(ambient) + " entries");
    for (Index r = 0; r < ambient; ++r) m(r, c) = scalar_from_json(col[static_cast<std::size_t>(r)]);
  }
  return m;
}

std::map<int, Subspace> steps_from_json(const Json& j, Index ambient,
                                        const std::string& what) {
  const Json& obj = expect_object(j, what);
  std::map<int, Subspace> steps;
  for (const auto& [key, value] : obj.items()) {
    const int k = int_key(key, what);
    steps.emplace(k, basis_from_json(value, ambient));
  }
  if (steps.empty()) throw ParseError(what + " must record at least one step");
  return steps;
}

Mat square_matrix_from_json(const Json& j, Index ambient, const std::string& what) {
  const Mat m = matrix_from_json(j);
  if (m.rows() != ambient || m.cols() != ambient)
    throw ParseError(what + " must be a " + std::to_string(ambient) + " x " +
                     std::to_string(ambient) + " matrix");
  return m;
}

Mat cone_sum(const std::vector<Mat>& cone, Index ambient) {
  Mat sum = Mat::Zero(ambient, ambient);
  for (const Mat& g : cone) sum += g;
  return sum;
}

Json filtration_to_json(const HodgeFiltration& f) {
  Json obj = Json::object();
  for (int p = f.lowest(); p <= f.highest(); ++p)
    obj[std::to_string(p)] = basis_to_json(f.at(p));
  return obj;
}

Json pieces_to_json(const DeligneBigrading& bg) {
  Json pieces = Json::array();
  for (const auto& [pq, sub] : bg.pieces)
    pieces.push_back({{"basis", basis_to_json(sub)},
                      {"dim", sub.dim()},
                      {"p", pq.first},
                      {"q", pq.second}});
  return pieces;
}

void attach_metadata(Json& j, const Json& metadata) {
  if (!metadata.is_null()) j["metadata"] = metadata;
}

void check_metadata(const Json& obj, const std::string& what) {
  if (const Json* m = find(obj, "metadata"))
    if (!m->is_object()) throw ParseError(what + ": \"metadata\" must be an object");
}

void check_kind(const Json& obj, const std::string& what, const std::string& expected) {
  if (const Json* k = find(obj, "kind"))
    if (require_string(*k, what + ": \"kind\"") != expected)
      throw ParseError(what + ": \"kind\" must be \"" + expected + "\"");
}

}  // namespace

// --- scalars, matrices, bases ------------------------------------------------

Json scalar_to_json(const Scalar& s) {
  if (s.is_real()) return to_string(s.re);
  return Json{{"im", to_string(s.im)}, {"re", to_string(s.re)}};
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer())
    return Scalar(Rational(require_int(j, "an integer scalar")));
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_object()) {
    check_keys(j, "a complex scalar", {"im", "re"});
    auto part = [&](const char* key) {
      const Json& p = j.at(key);
      if (p.is_number_integer()) return Rational(require_int(p, key));
      if (p.is_string()) return parse_rational(p.get<std::string>());
      throw ParseError(std::string("scalar field \"") + key +
                       "\" must be an integer or a rational string");
    };
    return Scalar(part("re"), part("im"));
  }
  throw ParseError(
      "a scalar must be an integer, a rational string \"p/q\", or {\"re\",\"im\"}");
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const Json& j) {
  const Json& rows = expect_array(j, "a matrix");
  const Index nrows = static_cast<Index>(rows.size());
  Index ncols = 0;
  if (nrows > 0) {
    const Json& first = expect_array(rows[0], "a matrix row");
    ncols = static_cast<Index>(first.size());
  }
  Mat m(nrows, ncols);
  for (Index i = 0; i < nrows; ++i) {
    const Json& row = expect_array(rows[static_cast<std::size_t>(i)], "a matrix row");
    if (static_cast<Index>(row.size()) != ncols)
      throw ParseError("matrix rows must all have the same length");
    for (Index k = 0; k < ncols; ++k)
      m(i, k) = scalar_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json vector_to_json(const Vec& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(scalar_to_json(v(i)));
  return arr;
}

Vec vector_from_json(const Json& j) {
  const Json& arr = expect_array(j, "a vector");
  Vec v(static_cast<Index>(arr.size()));
  for (Index i = 0; i < v.size(); ++i)
    v(i) = scalar_from_json(arr[static_cast<std::size_t>(i)]);
  return v;
}

Json basis_to_json(const Subspace& s) { return columns_to_json(s.basis()); }

Subspace basis_from_json(const Json& j, Index ambient) {
  return Subspace::span(columns_from_json(j, ambient, "a basis"));
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

// --- problem files ------------------------------------------------------------

ProblemFile problem_from_json(const Json& j) {
  const Json& obj = expect_object(j, "a problem file");
  check_keys(obj, "a problem file", {"ambient_dim"},
             {"weight_center", "center", "W", "F", "Q", "N", "cone", "kind", "metadata"});
  check_metadata(obj, "a problem file");

  ProblemFile p;
  p.ambient_dim = require_index(obj.at("ambient_dim"), "\"ambient_dim\"");

  std::optional<long long> wc, oc;
  if (const Json* x = find(obj, "weight_center")) wc = require_int(*x, "\"weight_center\"");
  if (const Json* x = find(obj, "center")) oc = require_int(*x, "\"center\"");
  if (wc && oc && *wc != *oc)
    throw ParseError("\"weight_center\" and \"center\" disagree");
  if (wc || oc) p.center = static_cast<int>(wc ? *wc : *oc);

  if (const Json* x = find(obj, "F"))
    p.f = HodgeFiltration(steps_from_json(*x, p.ambient_dim, "\"F\""));

  if (const Json* x = find(obj, "Q")) {
    if (!p.center)
      throw ParseError("\"Q\" needs \"weight_center\" or \"center\" to fix its symmetry");
    p.q = PolarizationForm(square_matrix_from_json(*x, p.ambient_dim, "\"Q\""),
                           ((*p.center % 2) + 2) % 2);
  }

  const Json* n_field = find(obj, "N");
  const Json* cone_field = find(obj, "cone");
  if (n_field && cone_field) throw ParseError("give \"N\" or \"cone\", not both");
  if (n_field)
    p.cone.push_back(square_matrix_from_json(*n_field, p.ambient_dim, "\"N\""));
  if (cone_field) {
    const Json& arr = expect_array(*cone_field, "\"cone\"");
    if (arr.empty()) throw ParseError("\"cone\" needs at least one generator");
    for (const Json& g : arr)
      p.cone.push_back(square_matrix_from_json(g, p.ambient_dim, "a cone generator"));
  }
  if (!p.cone.empty() && !p.center)
    throw ParseError("a nilpotent cone needs \"center\"");

  if (const Json* x = find(obj, "W")) {
    if (!p.center) throw ParseError("\"W\" needs \"weight_center\"");
    p.w = WeightFiltration(*p.center, steps_from_json(*x, p.ambient_dim, "\"W\""));
  }

  if (const Json* x = find(obj, "kind")) {
    const std::string kind = require_string(*x, "\"kind\"");
    if (kind != "mhs" && kind != "orbit")
      throw ParseError("\"kind\" must be \"mhs\" or \"orbit\"");
    if (kind == "orbit" && p.cone.empty())
      throw ParseError("an \"orbit\" file needs \"N\" or \"cone\"");
    if (kind == "mhs" && !p.cone.empty())
      throw ParseError("an \"mhs\" file must not carry \"N\" or \"cone\"");
  }

  if (p.w && !p.cone.empty() &&
      *p.w != weight_filtration(cone_sum(p.cone, p.ambient_dim), *p.center))
    throw PreconditionError(
        "the recorded weight filtration does not match the one computed from the cone");

  return p;
}

MixedHodgeStructure to_mhs(const ProblemFile& p) {
  if (!p.f) throw ParseError("this computation needs a Hodge filtration \"F\"");
  if (p.w) return MixedHodgeStructure(*p.w, *p.f, p.q);
  if (!p.cone.empty())
    return MixedHodgeStructure(weight_filtration(cone_sum(p.cone, p.ambient_dim), *p.center),
                               *p.f, p.q);
  throw ParseError("this computation needs \"W\" or a nilpotent cone with \"center\"");
}

NilpotentOrbitData to_orbit(const ProblemFile& p) {
  if (!p.f) throw ParseError("an orbit needs a Hodge filtration \"F\"");
  if (p.cone.empty()) throw ParseError("an orbit needs \"N\" or \"cone\"");
  if (!p.q) throw ParseError("an orbit needs a polarization \"Q\"");
  return nilpotent_orbit_data(*p.f, p.cone, *p.center, *p.q);
}

Json orbit_to_json(const NilpotentOrbitData& orbit, const Json& metadata) {
  Json j;
  j["kind"] = "orbit";
  j["ambient_dim"] = orbit.q.matrix.rows();
  j["center"] = orbit.center;
  j["F"] = filtration_to_json(orbit.f);
  j["Q"] = matrix_to_json(orbit.q.matrix);
  Json cone = Json::array();
  for (const NilpotentEndomorphism& g : orbit.generators)
    cone.push_back(matrix_to_json(g.matrix));
  j["cone"] = cone;
  attach_metadata(j, metadata);
  return j;
}

StrataComplexData strata_from_json(const Json& j) {
  const Json& obj = expect_object(j, "a strata file");
  check_keys(obj, "a strata file", {"n", "levels"}, {"rest", "gysin", "kind", "metadata"});
  check_kind(obj, "a strata file", "strata");
  check_metadata(obj, "a strata file");

  const int dim_x = static_cast<int>(require_int(obj.at("n"), "\"n\""));

  std::map<int, std::map<int, GradedPiece>> levels;
  for (const Json& entry : expect_array(obj.at("levels"), "\"levels\"")) {
    const Json& level = expect_object(entry, "a level");
    check_keys(level, "a level", {"k", "H"});
    const int k = static_cast<int>(require_int(level.at("k"), "level \"k\""));
    if (levels.count(k))
      throw ParseError("duplicate level k = " + std::to_string(k));
    std::map<int, GradedPiece>& by_q = levels[k];
    for (const auto& [qs, pj] : expect_object(level.at("H"), "\"H\"").items()) {
      const int q = int_key(qs, "\"H\"");
      const Json& piece_obj = expect_object(pj, "a graded piece");
      check_keys(piece_obj, "a graded piece", {"dim"}, {"hodge"});
      GradedPiece piece;
      piece.dim = require_index(piece_obj.at("dim"), "\"dim\"");
      if (const Json* h = find(piece_obj, "hodge")) {
        std::map<int, Index> hodge;
        for (const Json& pair : expect_array(*h, "\"hodge\"")) {
          const Json& arr = expect_array(pair, "a Hodge entry");
          if (arr.size() != 2)
            throw ParseError("a \"hodge\" entry must be a pair [p, dim]");
          const int p = static_cast<int>(require_int(arr[0], "a Hodge index"));
          if (hodge.count(p))
            throw ParseError("duplicate Hodge index p = " + std::to_string(p));
          hodge[p] = require_index(arr[1], "a Hodge dimension");
        }
        piece.hodge = hodge;
      }
      by_q.emplace(q, piece);
    }
  }

  auto maps_from = [&](const char* key) {
    std::map<std::pair<int, int>, Mat> maps;
    if (const Json* arr = find(obj, key)) {
      for (const Json& entry : expect_array(*arr, std::string("\"") + key + "\"")) {
        const Json& m = expect_object(entry, "a map entry");
        check_keys(m, "a map entry", {"k", "q", "matrix"});
        const int k = static_cast<int>(require_int(m.at("k"), "map \"k\""));
        const int q = static_cast<int>(require_int(m.at("q"), "map \"q\""));
        if (maps.count({k, q}))
          throw ParseError(std::string("duplicate \"") + key + "\" entry at (" +
                           std::to_string(k) + ", " + std::to_string(q) + ")");
        maps[{k, q}] = matrix_from_json(m.at("matrix"));
      }
    }
    return maps;
  };

  return strata_complex_data(stratum_spaces(dim_x, std::move(levels)),
                             maps_from("rest"), maps_from("gysin"));
}

Json strata_to_json(const StrataComplexData& data, const Json& metadata) {
  Json j;
  j["kind"] = "strata";
  j["n"] = data.spaces.dim_x;
  Json levels = Json::array();
  for (const auto& [k, by_q] : data.spaces.levels) {
    Json h = Json::object();
    for (const auto& [q, piece] : by_q) {
      Json pj;
      pj["dim"] = piece.dim;
      if (piece.hodge) {
        Json pairs = Json::array();
        for (const auto& [p, d] : *piece.hodge) pairs.push_back({p, d});
        pj["hodge"] = pairs;
      }
      h[std::to_string(q)] = pj;
    }
    levels.push_back({{"H", h}, {"k", k}});
  }
  j["levels"] = levels;
  auto maps_to = [&](const std::map<std::pair<int, int>, Mat>& maps) {
    Json arr = Json::array();
    for (const auto& [kq, m] : maps)
      arr.push_back(
          {{"k", kq.first}, {"matrix", matrix_to_json(m)}, {"q", kq.second}});
    return arr;
  };
  j["rest"] = maps_to(data.rest);
  j["gysin"] = maps_to(data.gysin);
  attach_metadata(j, metadata);
  return j;
}

DeformationData deform_from_json(const Json& j) {
  const Json& obj = expect_object(j, "a deformation file");
  check_keys(obj, "a deformation file", {"ext_dim", "components", "localize"},
             {"delta", "kind", "metadata"});
  check_kind(obj, "a deformation file", "deform");
  check_metadata(obj, "a deformation file");

  const Index ext_dim = require_index(obj.at("ext_dim"), "\"ext_dim\"");
  std::vector<std::string> components;
  std::set<std::string> seen;
  for (const Json& c : expect_array(obj.at("components"), "\"components\"")) {
    components.push_back(require_string(c, "a component label"));
    if (!seen.insert(components.back()).second)
      throw ParseError("duplicate component label \"" + components.back() + "\"");
  }
  const Mat localize = matrix_from_json(obj.at("localize"));
  std::optional<Mat> delta;
  if (const Json* d = find(obj, "delta"))
    if (!d->is_null()) delta = matrix_from_json(*d);
  return deformation_data(ext_dim, std::move(components), localize, delta);
}

Json deform_to_json(const DeformationData& d, const Json& metadata) {
  Json j;
  j["kind"] = "deform";
  j["ext_dim"] = d.ext_dim;
  j["components"] = d.components;
  j["localize"] = matrix_to_json(d.localize);
  j["delta"] = d.delta ? matrix_to_json(*d.delta) : Json();
  attach_metadata(j, metadata);
  return j;
}

Genus3Params genus3_params_from_json(const Json& j) {
  const Json& obj = expect_object(j, "a genus-3 parameter file");
  check_keys(obj, "a genus-3 parameter file", {"a11", "a12", "a22", "b1", "b2", "c"});
  return Genus3Params{scalar_from_json(obj.at("a11")), scalar_from_json(obj.at("a12")),
                      scalar_from_json(obj.at("a22")), scalar_from_json(obj.at("b1")),
                      scalar_from_json(obj.at("b2")),  scalar_from_json(obj.at("c"))};
}

Json genus3_params_to_json(const Genus3Params& p) {
  return Json{{"a11", scalar_to_json(p.a11)}, {"a12", scalar_to_json(p.a12)},
              {"a22", scalar_to_json(p.a22)}, {"b1", scalar_to_json(p.b1)},
              {"b2", scalar_to_json(p.b2)},   {"c", scalar_to_json(p.c)}};
}

// --- reports -------------------------------------------------------------------

Json weight_filtration_report(const WeightFiltration& w) {
  Json steps = Json::array();
  for (int k = w.lowest(); k <= w.highest(); ++k) {
    const Subspace s = w.at(k);
    steps.push_back({{"basis", basis_to_json(s)}, {"dim", s.dim()}, {"k", k}});
  }
  return Json{{"ambient", w.ambient()},
              {"center", w.center()},
              {"kind", "weight-filtration"},
              {"steps", steps}};
}

Json deligne_report(const DeligneBigrading& bg) {
  return Json{{"ambient", bg.ambient},
              {"is_r_split", is_r_split(bg)},
              {"kind", "deligne"},
              {"pieces", pieces_to_json(bg)}};
}

Json rsplit_report(bool already_r_split, const DeligneBigrading& split_bg) {
  return Json{{"already_r_split", already_r_split},
              {"ambient", split_bg.ambient},
              {"kind", "rsplit"},
              {"pieces", pieces_to_json(split_bg)}};
}

Json lmhs_report(const OrbitVerdict& verdict, bool cone_weight_independent,
                 const WeightFiltration& w) {
  Json gr = Json::object();
  for (int k = w.lowest(); k <= w.highest(); ++k) {
    const Index d = w.at(k).dim() - w.at(k - 1).dim();
    if (d > 0) gr[std::to_string(k)] = d;
  }
  return Json{{"cone_weight_independent", cone_weight_independent},
              {"gr_dims", gr},
              {"kind", "lmhs-check"},
              {"ok", verdict.ok && cone_weight_independent},
              {"reason", verdict.reason}};
}

Json limit_period_report(const BoundaryFlag& flag,
                         const std::map<std::pair<int, int>, Index>& invariants,
                         const QuadrantReport& quadrants) {
  std::set<int> ps, qs;
  for (const auto& [pq, d] : invariants) {
    ps.insert(pq.first);
    qs.insert(pq.second);
  }
  Json table = Json::array();
  for (int p : ps) {
    Json row = Json::array();
    for (int q : qs) row.push_back(invariants.at({p, q}));
    table.push_back(row);
  }
  Json quad_pieces = Json::array();
  for (const auto& [pq, d] : quadrants.pieces)
    quad_pieces.push_back({{"dim", d}, {"p", pq.first}, {"q", pq.second}});
  Json quad{{"cokernel_dim", quadrants.cokernel_dim},
            {"kernel_dim", quadrants.kernel_dim},
            {"pieces", quad_pieces},
            {"stabilizer_dim", quadrants.stabilizer_dim},
            {"transported_dim", quadrants.transported_dim}};
  return Json{{"F_infinity", filtration_to_json(flag.f_infinity)},
              {"orbit_invariants", table},
              {"quadrants", quad}};
}

Json nstrings_report(const NStringDiagram& diagram) {
  Json strings = Json::array();
  std::map<int, Index> weight_dims;
  for (const NString& s : diagram.strings) {
    const Index multiplicity = s.chain.empty() ? 0 : s.chain.front().cols();
    Json hodge = Json::array();
    for (const auto& [pq, d] : s.hodge) hodge.push_back({pq.first, pq.second, d});
    strings.push_back({{"base_weight", s.base_weight},
                       {"hodge", hodge},
                       {"length", s.length},
                       {"multiplicity", multiplicity}});
    for (int j = 0; j <= s.length; ++j)
      weight_dims[s.base_weight + 2 * j] += multiplicity;
  }
  Json dims = Json::object();
  for (const auto& [w, d] : weight_dims) dims[std::to_string(w)] = d;
  return Json{{"center", diagram.center},
              {"kind", "nstrings"},
              {"strings", strings},
              {"weight_dims", dims}};
}

Json strata_validate_report(const StrataVerdict& verdict) {
  return Json{{"kind", "strata-validate"},
              {"ok", verdict.ok},
              {"reason", verdict.reason},
              {"residual", matrix_to_json(verdict.ok ? Mat(0, 0) : verdict.residual)},
              {"square", verdict.square
                             ? Json{verdict.square->first, verdict.square->second}
                             : Json()}};
}

Json e1_report(const E1Page& page) {
  Json cells = Json::array();
  for (const auto& [ab, cell] : page.cells) {
    Json sources = Json::array();
    for (const E1Cell::Source& s : cell.sources)
      sources.push_back({{"dim", s.dim},
                         {"hodge_q", s.hodge_q},
                         {"level", s.level},
                         {"p", s.p},
                         {"q", s.q}});
    cells.push_back({{"a", ab.first},
                     {"b", ab.second},
                     {"dim", cell.dim},
                     {"sources", sources}});
  }
  return Json{{"cells", cells}, {"i", page.i}, {"kind", "strata-e1"}};
}

Json strata_strings_report_json(const StrataStringReport& report) {
  Json pieces = Json::array();
  for (const auto& [ij, piece] : report.pieces)
    pieces.push_back({{"basis", columns_to_json(piece.basis)},
                      {"dim", piece.dim},
                      {"i", ij.first},
                      {"j", ij.second},
                      {"weight", report.m - ij.first + 2 * ij.second}});
  Json n_maps = Json::array();
  for (const auto& [ij, m] : report.n_maps)
    n_maps.push_back({{"i", ij.first}, {"j", ij.second}, {"rank", rank(m)}});
  Json dims = Json::object();
  for (const auto& [w, d] : strata_string_weight_dims(report)) dims[std::to_string(w)] = d;
  return Json{{"kind", "strata-nstrings"},
              {"m", report.m},
              {"n_maps", n_maps},
              {"pieces", pieces},
              {"weight_dims", dims}};
}

Json deform_strata_report(const DeformationData& d,
                          const std::vector<SmoothingStratum>& strata,
                          const std::optional<ExactnessReport>& exactness,
                          bool smoothable, bool independent) {
  // Report rows ordered by the label sequence of B, lexicographically.
  std::vector<std::pair<std::vector<std::string>, const SmoothingStratum*>> rows;
  for (const SmoothingStratum& s : strata) {
    std::vector<std::string> labels;
    for (Index a : s.locked) labels.push_back(d.components[static_cast<std::size_t>(a)]);
    rows.emplace_back(std::move(labels), &s);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Json table = Json::array();
  for (const auto& [labels, s] : rows)
    table.push_back({{"B", labels}, {"codim", s->codim}, {"dim", s->tangent.dim()}});
  Json ex;
  if (exactness)
    ex = Json{{"exact", exactness->exact},
              {"image_dim", exactness->image_dim},
              {"image_in_kernel", exactness->image_in_kernel},
              {"kernel_dim", exactness->kernel_dim}};
  return Json{{"exactness", ex},
              {"independent_smoothing", independent},
              {"kind", "deform-strata"},
              {"smoothable", smoothable},
              {"strata", table}};
}

Json cone_report(const SmoothingCone& cone, bool independent) {
  Json generators = Json::array();
  for (const Vec& g : cone.generators) generators.push_back(vector_to_json(g));
  return Json{{"components", cone.components},
              {"generators", generators},
              {"independent", independent},
              {"kind", "deform-cone"},
              {"rays_enumerated", cone.rays_enumerated},
              {"simplicial", cone.simplicial},
              {"span_dim", cone.span.dim()}};
}

Json p2_report(const P2LineReport& report, const std::vector<std::string>& components) {
  const char* label = report.label == P2LineCase::i    ? "i"
                      : report.label == P2LineCase::ii ? "ii"
                                                       : "iii";
  Json locked_components = Json::array();
  for (Index a : report.locked)
    locked_components.push_back(components[static_cast<std::size_t>(a)]);
  return Json{{"axes_contained", report.axes_contained},
              {"case", label},
              {"excluded_by_smoothability", report.excluded_by_smoothability},
              {"kind", "deform-classify-p2"},
              {"locked", report.locked},
              {"locked_components", locked_components}};
}

// --- strict report validation ---------------------------------------------------

namespace {

void check_columns(const Json& j, const std::string& what) {
  const Json& cols = expect_array(j, what);
  std::optional<Index> len;
  for (const Json& col : cols) {
    const Json& c = expect_array(col, what + " column");
    if (!len) len = static_cast<Index>(c.size());
    if (static_cast<Index>(c.size()) != *len)
      throw ParseError(what + " columns must all have the same length");
    for (const Json& entry : c) scalar_from_json(entry);
  }
}

void check_int_key_object(const Json& j, const std::string& what) {
  for (const auto& [key, value] : expect_object(j, what).items()) {
    int_key(key, what);
    require_index(value, what + " value");
  }
}

void validate_pieces(const Json& pieces, const std::string& what) {
  for (const Json& piece : expect_array(pieces, what)) {
    const Json& obj = expect_object(piece, what + " entry");
    check_keys(obj, what + " entry", {"basis", "dim", "p", "q"});
    check_columns(obj.at("basis"), "\"basis\"");
    if (require_index(obj.at("dim"), "\"dim\"") !=
        static_cast<Index>(obj.at("basis").size()))
      throw ParseError(what + ": \"dim\" must equal the basis column count");
    require_int(obj.at("p"), "\"p\"");
    require_int(obj.at("q"), "\"q\"");
  }
}

void validate_limit_period(const Json& j) {
  check_keys(j, "a limit-period report", {"F_infinity", "orbit_invariants", "quadrants"});
  for (const auto& [key, value] : expect_object(j.at("F_infinity"), "\"F_infinity\"").items()) {
    int_key(key, "\"F_infinity\"");
    check_columns(value, "\"F_infinity\" step");
  }
  const Json& table = expect_array(j.at("orbit_invariants"), "\"orbit_invariants\"");
  std::optional<std::size_t> width;
  for (const Json& row : table) {
    const Json& r = expect_array(row, "an \"orbit_invariants\" row");
    if (!width) width = r.size();
    if (r.size() != *width)
      throw ParseError("\"orbit_invariants\" rows must all have the same length");
    for (const Json& entry : r) require_index(entry, "an \"orbit_invariants\" entry");
  }
  const Json& quad = expect_object(j.at("quadrants"), "\"quadrants\"");
  check_keys(quad, "\"quadrants\"",
             {"cokernel_dim", "kernel_dim", "pieces", "stabilizer_dim", "transported_dim"});
  require_index(quad.at("cokernel_dim"), "\"cokernel_dim\"");
  require_index(quad.at("kernel_dim"), "\"kernel_dim\"");
  require_index(quad.at("stabilizer_dim"), "\"stabilizer_dim\"");
  require_index(quad.at("transported_dim"), "\"transported_dim\"");
  for (const Json& piece : expect_array(quad.at("pieces"), "\"quadrants\" pieces")) {
    const Json& obj = expect_object(piece, "a quadrant piece");
    check_keys(obj, "a quadrant piece", {"dim", "p", "q"});
    require_index(obj.at("dim"), "\"dim\"");
    require_int(obj.at("p"), "\"p\"");
    require_int(obj.at("q"), "\"q\"");
  }
}

void validate_weight_filtration(const Json& j) {
  check_keys(j, "a weight-filtration report", {"ambient", "center", "kind", "steps"});
  const Index ambient = require_index(j.at("ambient"), "\"ambient\"");
  require_int(j.at("center"), "\"center\"");
  for (const Json& step : expect_array(j.at("steps"), "\"steps\"")) {
    const Json& obj = expect_object(step, "a step");
    check_keys(obj, "a step", {"basis", "dim", "k"});
    check_columns(obj.at("basis"), "\"basis\"");
    for (const Json& col : obj.at("basis"))
      if (static_cast<Index>(col.size()) != ambient)
        throw ParseError("a step basis column must have \"ambient\" entries");
    if (require_index(obj.at("dim"), "\"dim\"") !=
        static_cast<Index>(obj.at("basis").size()))
      throw ParseError("a step's \"dim\" must equal its basis column count");
    require_int(obj.at("k"), "\"k\"");
  }
}

void validate_lmhs(const Json& j) {
  check_keys(j, "an lmhs-check report",
             {"cone_weight_independent", "gr_dims", "kind", "ok", "reason"});
  require_bool(j.at("cone_weight_independent"), "\"cone_weight_independent\"");
  check_int_key_object(j.at("gr_dims"), "\"gr_dims\"");
  require_bool(j.at("ok"), "\"ok\"");
  require_string(j.at("reason"), "\"reason\"");
}

void validate_nstrings(const Json& j) {
  check_keys(j, "an nstrings report", {"center", "kind", "strings", "weight_dims"});
  require_int(j.at("center"), "\"center\"");
  for (const Json& s : expect_array(j.at("strings"), "\"strings\"")) {
    const Json& obj = expect_object(s, "a string");
    check_keys(obj, "a string", {"base_weight", "hodge", "length", "multiplicity"});
    require_int(obj.at("base_weight"), "\"base_weight\"");
    require_index(obj.at("length"), "\"length\"");
    require_index(obj.at("multiplicity"), "\"multiplicity\"");
    for (const Json& entry : expect_array(obj.at("hodge"), "\"hodge\"")) {
      const Json& triple = expect_array(entry, "a Hodge entry");
      if (triple.size() != 3)
        throw ParseError("an nstrings \"hodge\" entry must be [p, q, dim]");
      require_int(triple[0], "\"p\"");
      require_int(triple[1], "\"q\"");
      require_index(triple[2], "\"dim\"");
    }
  }
  check_int_key_object(j.at("weight_dims"), "\"weight_dims\"");
}

void validate_strata_validate(const Json& j) {
  check_keys(j, "a strata-validate report", {"kind", "ok", "reason", "residual", "square"});
  require_bool(j.at("ok"), "\"ok\"");
  require_string(j.at("reason"), "\"reason\"");
  matrix_from_json(j.at("residual"));
  const Json& square = j.at("square");
  if (!square.is_null()) {
    const Json& pair = expect_array(square, "\"square\"");
    if (pair.size() != 2) throw ParseError("\"square\" must be [k, q]");
    require_int(pair[0], "\"k\"");
    require_int(pair[1], "\"q\"");
  }
}

void validate_e1(const Json& j) {
  check_keys(j, "a strata-e1 report", {"cells", "i", "kind"});
  require_int(j.at("i"), "\"i\"");
  for (const Json& cell : expect_array(j.at("cells"), "\"cells\"")) {
    const Json& obj = expect_object(cell, "a cell");
    check_keys(obj, "a cell", {"a", "b", "dim", "sources"});
    require_int(obj.at("a"), "\"a\"");
    require_int(obj.at("b"), "\"b\"");
    require_index(obj.at("dim"), "\"dim\"");
    for (const Json& source : expect_array(obj.at("sources"), "\"sources\"")) {
      const Json& s = expect_object(source, "a source");
      check_keys(s, "a source", {"dim", "hodge_q", "level", "p", "q"});
      require_index(s.at("dim"), "\"dim\"");
      require_int(s.at("hodge_q"), "\"hodge_q\"");
      require_int(s.at("level"), "\"level\"");
      require_int(s.at("p"), "\"p\"");
      require_int(s.at("q"), "\"q\"");
    }
  }
}

void validate_strata_strings(const Json& j) {
  check_keys(j, "a strata-nstrings report",
             {"kind", "m", "n_maps", "pieces", "weight_dims"});
  require_int(j.at("m"), "\"m\"");
  for (const Json& entry : expect_array(j.at("n_maps"), "\"n_maps\"")) {
    const Json& obj = expect_object(entry, "an n_maps entry");
    check_keys(obj, "an n_maps entry", {"i", "j", "rank"});
    require_int(obj.at("i"), "\"i\"");
    require_int(obj.at("j"), "\"j\"");
    require_index(obj.at("rank"), "\"rank\"");
  }
  for (const Json& entry : expect_array(j.at("pieces"), "\"pieces\"")) {
    const Json& obj = expect_object(entry, "a piece");
    check_keys(obj, "a piece", {"basis", "dim", "i", "j", "weight"});
    check_columns(obj.at("basis"), "\"basis\"");
    if (require_index(obj.at("dim"), "\"dim\"") !=
        static_cast<Index>(obj.at("basis").size()))
      throw ParseError("a piece's \"dim\" must equal its basis column count");
    require_int(obj.at("i"), "\"i\"");
    require_int(obj.at("j"), "\"j\"");
    require_int(obj.at("weight"), "\"weight\"");
  }
  check_int_key_object(j.at("weight_dims"), "\"weight_dims\"");
}

void validate_deform_strata(const Json& j) {
  check_keys(j, "a deform-strata report",
             {"exactness", "independent_smoothing", "kind", "smoothable", "strata"});
  const Json& ex = j.at("exactness");
  if (!ex.is_null()) {
    check_keys(expect_object(ex, "\"exactness\""), "\"exactness\"",
               {"exact", "image_dim", "image_in_kernel", "kernel_dim"});
    require_bool(ex.at("exact"), "\"exact\"");
    require_index(ex.at("image_dim"), "\"image_dim\"");
    require_bool(ex.at("image_in_kernel"), "\"image_in_kernel\"");
    require_index(ex.at("kernel_dim"), "\"kernel_dim\"");
  }
  require_bool(j.at("independent_smoothing"), "\"independent_smoothing\"");
  require_bool(j.at("smoothable"), "\"smoothable\"");
  for (const Json& row : expect_array(j.at("strata"), "\"strata\"")) {
    const Json& obj = expect_object(row, "a stratum");
    check_keys(obj, "a stratum", {"B", "codim", "dim"});
    for (const Json& label : expect_array(obj.at("B"), "\"B\""))
      require_string(label, "a component label");
    require_index(obj.at("codim"), "\"codim\"");
    require_index(obj.at("dim"), "\"dim\"");
  }
}

void validate_cone(const Json& j) {
  check_keys(j, "a deform-cone report",
             {"components", "generators", "independent", "kind", "rays_enumerated",
              "simplicial", "span_dim"});
  require_index(j.at("components"), "\"components\"");
  for (const Json& g : expect_array(j.at("generators"), "\"generators\""))
    vector_from_json(g);
  require_bool(j.at("independent"), "\"independent\"");
  require_bool(j.at("rays_enumerated"), "\"rays_enumerated\"");
  require_bool(j.at("simplicial"), "\"simplicial\"");
  require_index(j.at("span_dim"), "\"span_dim\"");
}

void validate_p2(const Json& j) {
  check_keys(j, "a deform-classify-p2 report",
             {"axes_contained", "case", "excluded_by_smoothability", "kind", "locked",
              "locked_components"});
  for (const Json& a : expect_array(j.at("axes_contained"), "\"axes_contained\""))
    require_index(a, "an axis index");
  const std::string label = require_string(j.at("case"), "\"case\"");
  if (label != "i" && label != "ii" && label != "iii")
    throw ParseError("\"case\" must be \"i\", \"ii\", or \"iii\"");
  require_bool(j.at("excluded_by_smoothability"), "\"excluded_by_smoothability\"");
  for (const Json& a : expect_array(j.at("locked"), "\"locked\""))
    require_index(a, "a locked index");
  for (const Json& label_json : expect_array(j.at("locked_components"), "\"locked_components\""))
    require_string(label_json, "a locked component label");
}

void validate_bigrading_report(const Json& j, const char* kind) {
  const bool rsplit = std::string(kind) == "rsplit";
  check_keys(j, std::string("a ") + kind + " report",
             rsplit ? std::initializer_list<const char*>{"already_r_split", "ambient",
                                                         "kind", "pieces"}
                    : std::initializer_list<const char*>{"ambient", "is_r_split",
                                                         "kind", "pieces"});
  require_index(j.at("ambient"), "\"ambient\"");
  require_bool(j.at(rsplit ? "already_r_split" : "is_r_split"), "the split flag");
  validate_pieces(j.at("pieces"), "\"pieces\"");
}

}  // namespace

void validate_report(const Json& report) {
  if (!report.is_object()) throw ParseError("a report must be a JSON object");
  if (report.contains("F_infinity")) {
    validate_limit_period(report);
    return;
  }
  const Json* kind_field = find(report, "kind");
  if (!kind_field) throw ParseError("a report needs a \"kind\" field");
  const std::string kind = require_string(*kind_field, "\"kind\"");
  if (kind == "weight-filtration") validate_weight_filtration(report);
  else if (kind == "deligne") validate_bigrading_report(report, "deligne");
  else if (kind == "rsplit") validate_bigrading_report(report, "rsplit");
  else if (kind == "lmhs-check") validate_lmhs(report);
  else if (kind == "nstrings") validate_nstrings(report);
  else if (kind == "strata-validate") validate_strata_validate(report);
  else if (kind == "strata-e1") validate_e1(report);
  else if (kind == "strata-nstrings") validate_strata_strings(report);
  else if (kind == "deform-strata") validate_deform_strata(report);
  else if (kind == "deform-cone") validate_cone(report);
  else if (kind == "deform-classify-p2") validate_p2(report);
  else throw ParseError("unknown report kind \"" + kind + "\"");
}

// --- text rendering ----------------------------------------------------------------

namespace {

std::string pretty_scalar(const Json& j) { return to_string(scalar_from_json(j)); }

std::string pretty_vector(const Json& arr) {
  std::string out = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += ", ";
    out += pretty_scalar(arr[i]);
  }
  return out + ")";
}

std::string pretty_matrix_rows(const Json& rows) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      if (k) out += " ";
      out += pretty_scalar(rows[i][k]);
    }
  }
  return out + "]";
}

void render_limit_period(const Json& j, std::ostream& out) {
  out << "F_infinity:\n";
  for (const auto& [p, basis] : j.at("F_infinity").items())
    out << "  F^" << p << ": dim " << basis.size() << "\n";
  out << "orbit invariants dim(F^p n conj(F^q)):\n";
  for (const Json& row : j.at("orbit_invariants")) {
    out << " ";
    for (const Json& entry : row) out << " " << entry.get<Index>();
    out << "\n";
  }
  const Json& quad = j.at("quadrants");
  out << "quadrants: kernel " << quad.at("kernel_dim").get<Index>() << ", transported "
      << quad.at("transported_dim").get<Index>() << ", cokernel "
      << quad.at("cokernel_dim").get<Index>() << ", stabilizer "
      << quad.at("stabilizer_dim").get<Index>() << "\n";
  for (const Json& piece : quad.at("pieces"))
    out << "  g^{" << piece.at("p").get<int>() << "," << piece.at("q").get<int>()
        << "}: dim " << piece.at("dim").get<Index>() << "\n";
}

void render_pieces(const Json& pieces, std::ostream& out) {
  for (const Json& piece : pieces)
    out << "  I^{" << piece.at("p").get<int>() << "," << piece.at("q").get<int>()
        << "}: dim " << piece.at("dim").get<Index>() << "\n";
}

}  // namespace

void render_text(const Json& report, std::ostream& out) {
  validate_report(report);
  if (report.contains("F_infinity")) {
    render_limit_period(report, out);
    return;
  }
  const std::string kind = report.at("kind").get<std::string>();
  if (kind == "weight-filtration") {
    out << "weight filtration (center " << report.at("center").get<int>() << ", ambient "
        << report.at("ambient").get<Index>() << ")\n";
    for (const Json& step : report.at("steps"))
      out << "  W_" << step.at("k").get<int>() << ": dim " << step.at("dim").get<Index>()
          << "\n";
  } else if (kind == "deligne" || kind == "rsplit") {
    const bool rsplit = kind == "rsplit";
    out << (rsplit ? "canonical R-split structure" : "Deligne bigrading") << " (ambient "
        << report.at("ambient").get<Index>() << ")\n";
    out << (rsplit ? "  input already R-split: " : "  R-split: ")
        << (report.at(rsplit ? "already_r_split" : "is_r_split").get<bool>() ? "yes"
                                                                             : "no")
        << "\n";
    render_pieces(report.at("pieces"), out);
  } else if (kind == "lmhs-check") {
    out << "lmhs-check: " << (report.at("ok").get<bool>() ? "PASS" : "FAIL") << "\n";
    if (!report.at("reason").get<std::string>().empty())
      out << "  " << report.at("reason").get<std::string>() << "\n";
    out << "  cone weight independence: "
        << (report.at("cone_weight_independent").get<bool>() ? "ok" : "FAILED") << "\n";
    out << "  Gr dims:";
    for (const auto& [k, d] : report.at("gr_dims").items())
      out << " " << k << ":" << d.get<Index>();
    out << "\n";
  } else if (kind == "nstrings") {
    out << "N-strings (center " << report.at("center").get<int>() << ")\n";
    for (const Json& s : report.at("strings")) {
      out << "  base weight " << s.at("base_weight").get<int>() << ", length "
          << s.at("length").get<Index>() << ", multiplicity "
          << s.at("multiplicity").get<Index>() << ", hodge";
      for (const Json& h : s.at("hodge"))
        out << " (" << h[0].get<int>() << "," << h[1].get<int>()
            << "):" << h[2].get<Index>();
      out << "\n";
    }
    out << "  weight dims:";
    for (const auto& [w, d] : report.at("weight_dims").items())
      out << " " << w << ":" << d.get<Index>();
    out << "\n";
  } else if (kind == "strata-validate") {
    if (report.at("ok").get<bool>()) {
      out << "strata check: PASS\n";
    } else {
      const Json& square = report.at("square");
      out << "strata check: FAIL at square (k=" << square[0].get<int>()
          << ", q=" << square[1].get<int>() << ")\n";
      out << "  " << report.at("reason").get<std::string>() << "\n";
      out << "  residual: " << pretty_matrix_rows(report.at("residual")) << "\n";
    }
  } else if (kind == "strata-e1") {
    out << "first page at i = " << report.at("i").get<int>() << "\n";
    for (const Json& cell : report.at("cells")) {
      out << "  E1^{" << cell.at("a").get<int>() << "," << cell.at("b").get<int>()
          << "}: dim " << cell.at("dim").get<Index>() << " from";
      for (const Json& s : cell.at("sources"))
        out << " H^{" << s.at("p").get<int>() << "," << s.at("hodge_q").get<int>()
            << "}(X^[" << s.at("level").get<int>() << "])x" << s.at("dim").get<Index>();
      out << "\n";
    }
  } else if (kind == "strata-nstrings") {
    out << "string decomposition at m = " << report.at("m").get<int>() << "\n";
    for (const Json& piece : report.at("pieces"))
      out << "  H^" << report.at("m").get<int>() - piece.at("i").get<int>() << "(-"
          << piece.at("j").get<int>() << ") at (i=" << piece.at("i").get<int>()
          << ", j=" << piece.at("j").get<int>() << "): dim "
          << piece.at("dim").get<Index>() << ", weight " << piece.at("weight").get<int>()
          << "\n";
    for (const Json& entry : report.at("n_maps"))
      out << "  N: (i=" << entry.at("i").get<int>() << ", j=" << entry.at("j").get<int>()
          << ") -> (i=" << entry.at("i").get<int>() << ", j="
          << entry.at("j").get<int>() - 1 << "): rank " << entry.at("rank").get<Index>()
          << "\n";
    out << "  weight dims:";
    for (const auto& [w, d] : report.at("weight_dims").items())
      out << " " << w << ":" << d.get<Index>();
    out << "\n";
  } else if (kind == "deform-strata") {
    out << "smoothable: " << (report.at("smoothable").get<bool>() ? "yes" : "no") << "\n";
    out << "independent smoothing: "
        << (report.at("independent_smoothing").get<bool>() ? "yes" : "no") << "\n";
    const Json& ex = report.at("exactness");
    if (!ex.is_null())
      out << "exactness: " << (ex.at("exact").get<bool>() ? "exact" : "not exact")
          << " (image dim " << ex.at("image_dim").get<Index>() << ", kernel dim "
          << ex.at("kernel_dim").get<Index>() << ")\n";
    for (const Json& row : report.at("strata")) {
      out << "  B={";
      const Json& labels = row.at("B");
      for (std::size_t i = 0; i < labels.size(); ++i)
        out << (i ? "," : "") << labels[i].get<std::string>();
      out << "}: dim " << row.at("dim").get<Index>() << ", codim "
          << row.at("codim").get<Index>() << "\n";
    }
  } else if (kind == "deform-cone") {
    out << "smoothing cone over " << report.at("components").get<Index>()
        << " components, span dim " << report.at("span_dim").get<Index>() << "\n";
    out << "  independent smoothing: "
        << (report.at("independent").get<bool>() ? "yes" : "no") << "\n";
    if (report.at("rays_enumerated").get<bool>()) {
      out << "  " << (report.at("simplicial").get<bool>() ? "simplicial, " : "")
          << report.at("generators").size() << " extremal rays:\n";
      for (const Json& g : report.at("generators")) out << "    " << pretty_vector(g) << "\n";
    } else {
      out << "  rays not enumerated (span dim > 3); membership test only\n";
    }
  } else if (kind == "deform-classify-p2") {
    out << "case (" << report.at("case").get<std::string>() << ")";
    if (report.at("excluded_by_smoothability").get<bool>())
      out << " - excluded by first-order smoothability";
    out << "\n";
    const Json& locked = report.at("locked_components");
    if (!locked.empty()) {
      out << "  locked components:";
      for (const Json& label : locked) out << " " << label.get<std::string>();
      out << "\n";
    }
  }
}

}  // namespace hodgekit::io
