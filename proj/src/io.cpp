#include "twist/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace twist {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError("at " + path + ": " + msg);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

int int_field(const Json& j, const std::string& path, const char* key) {
  const Json& v = field(j, path, key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string str_field(const Json& j, const std::string& path,
                      const char* key) {
  const Json& v = field(j, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

const Json& arr_field(const Json& j, const std::string& path,
                      const char* key) {
  const Json& v = field(j, path, key);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

std::vector<int> ints_from(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  std::vector<int> r;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer())
      fail(path + "[" + std::to_string(i) + "]", "expected an integer");
    r.push_back(j[i].get<int>());
  }
  return r;
}

// Converts shape errors raised by the library constructors into parse
// diagnostics: a file describing an ill-shaped object is malformed.
template <class F>
auto reshape(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const TwistError& e) {
    fail(path, e.what());
  }
}

Json mat_j(const Mat& m) {
  Json data = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return Json{{"rows", static_cast<int>(m.rows())},
              {"cols", static_cast<int>(m.cols())},
              {"data", std::move(data)}};
}

Mat mat_p(const Json& j, const std::string& path) {
  int rows = int_field(j, path, "rows");
  int cols = int_field(j, path, "cols");
  if (rows < 0 || cols < 0) fail(path, "negative matrix shape");
  const Json& data = arr_field(j, path, "data");
  if (static_cast<int>(data.size()) != rows * cols)
    fail(path + ".data", "expected " + std::to_string(rows * cols) +
                             " entries, found " +
                             std::to_string(data.size()));
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const Json& e = data[r * cols + c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        fail(path + ".data[" + std::to_string(r * cols + c) + "]",
             "expected a [re, im] pair");
      m(r, c) = cx(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

Json mats_j(const std::vector<Mat>& v) {
  Json r = Json::array();
  for (const Mat& m : v) r.push_back(mat_j(m));
  return r;
}

std::vector<Mat> mats_p(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of matrices");
  std::vector<Mat> r;
  for (std::size_t i = 0; i < j.size(); ++i)
    r.push_back(mat_p(j[i], path + "[" + std::to_string(i) + "]"));
  return r;
}

Json mat_grid_j(const std::vector<std::vector<Mat>>& v) {
  Json r = Json::array();
  for (const auto& row : v) r.push_back(mats_j(row));
  return r;
}

std::vector<std::vector<Mat>> mat_grid_p(const Json& j,
                                         const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of matrix rows");
  std::vector<std::vector<Mat>> r;
  for (std::size_t i = 0; i < j.size(); ++i)
    r.push_back(mats_p(j[i], path + "[" + std::to_string(i) + "]"));
  return r;
}

Json group_j(const FiniteGroup& g) {
  return Json{{"label", g.label}, {"names", g.names}, {"table", g.table}};
}

FiniteGroup group_p(const Json& j, const std::string& path) {
  const Json& tj = arr_field(j, path, "table");
  std::vector<std::vector<int>> table;
  for (std::size_t i = 0; i < tj.size(); ++i)
    table.push_back(
        ints_from(tj[i], path + ".table[" + std::to_string(i) + "]"));
  const Json& nj = arr_field(j, path, "names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nj.size(); ++i) {
    if (!nj[i].is_string())
      fail(path + ".names[" + std::to_string(i) + "]", "expected a string");
    names.push_back(nj[i].get<std::string>());
  }
  std::string label = str_field(j, path, "label");
  return reshape(path, [&] {
    return FiniteGroup(std::move(table), std::move(names), std::move(label));
  });
}

Json algebra_j(const MatAlg& a) {
  return Json{{"block_dims", a.block_dims}, {"label", a.label}};
}

MatAlg algebra_p(const Json& j, const std::string& path) {
  std::vector<int> dims =
      ints_from(arr_field(j, path, "block_dims"), path + ".block_dims");
  for (int d : dims)
    if (d < 1) fail(path + ".block_dims", "block dimensions must be >= 1");
  return reshape(path,
                 [&] { return MatAlg(dims, str_field(j, path, "label")); });
}

Json elem_j(const AlgElement& x) { return mats_j(x.blocks); }

AlgElement elem_p(const Json& j, const std::string& path, const MatAlg& a) {
  return reshape(path, [&] { return AlgElement(a, mats_p(j, path)); });
}

Json elems_j(const std::vector<AlgElement>& v) {
  Json r = Json::array();
  for (const auto& x : v) r.push_back(elem_j(x));
  return r;
}

std::vector<AlgElement> elems_p(const Json& j, const std::string& path,
                                const MatAlg& a) {
  if (!j.is_array()) fail(path, "expected an array of algebra elements");
  std::vector<AlgElement> r;
  for (std::size_t i = 0; i < j.size(); ++i)
    r.push_back(elem_p(j[i], path + "[" + std::to_string(i) + "]", a));
  return r;
}

Json corr_j(const Correspondence& e) {
  return Json{{"left", algebra_j(e.left)},
              {"base", algebra_j(e.right())},
              {"rank", e.mod.rank},
              {"proj", mat_j(e.mod.proj)},
              {"act", mats_j(e.act)},
              {"frame", mats_j(e.frame)}};
}

Correspondence corr_p(const Json& j, const std::string& path) {
  Correspondence e;
  e.left = algebra_p(field(j, path, "left"), path + ".left");
  MatAlg base = algebra_p(field(j, path, "base"), path + ".base");
  int rank = int_field(j, path, "rank");
  Mat proj = mat_p(field(j, path, "proj"), path + ".proj");
  e.mod = reshape(path, [&] {
    return HilbertModule(std::move(base), rank, std::move(proj));
  });
  e.act = mats_p(field(j, path, "act"), path + ".act");
  if (static_cast<int>(e.act.size()) != e.left.dim())
    fail(path + ".act", "expected one matrix per basis element of left");
  for (std::size_t i = 0; i < e.act.size(); ++i)
    if (e.act[i].rows() != e.mod.esize() || e.act[i].cols() != e.mod.esize())
      fail(path + ".act[" + std::to_string(i) + "]",
           "left action matrix has wrong shape");
  e.frame = mats_p(field(j, path, "frame"), path + ".frame");
  return e;
}

Json intw_j(const Intertwiner& w) {
  return Json{{"source", corr_j(w.source)},
              {"target", corr_j(w.target)},
              {"u", mat_j(w.u)}};
}

Intertwiner intw_p(const Json& j, const std::string& path) {
  Correspondence s = corr_p(field(j, path, "source"), path + ".source");
  Correspondence t = corr_p(field(j, path, "target"), path + ".target");
  Mat u = mat_p(field(j, path, "u"), path + ".u");
  return reshape(path, [&] {
    return Intertwiner(std::move(s), std::move(t), std::move(u));
  });
}

Json intws_j(const std::vector<Intertwiner>& v) {
  Json r = Json::array();
  for (const auto& w : v) r.push_back(intw_j(w));
  return r;
}

std::vector<Intertwiner> intws_p(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of intertwiners");
  std::vector<Intertwiner> r;
  for (std::size_t i = 0; i < j.size(); ++i)
    r.push_back(intw_p(j[i], path + "[" + std::to_string(i) + "]"));
  return r;
}

Json bs_j(const BSAction& a) {
  Json alpha = Json::array();
  for (const auto& f : a.alpha) alpha.push_back(mat_j(f.mat));
  Json omega = Json::array();
  for (const auto& row : a.omega) omega.push_back(elems_j(row));
  return Json{{"group", group_j(a.group)},
              {"algebra", algebra_j(a.algebra)},
              {"alpha", std::move(alpha)},
              {"omega", std::move(omega)},
              {"u", elem_j(a.u)}};
}

BSAction bs_p(const Json& j, const std::string& path) {
  BSAction a;
  a.group = group_p(field(j, path, "group"), path + ".group");
  a.algebra = algebra_p(field(j, path, "algebra"), path + ".algebra");
  const Json& aj = arr_field(j, path, "alpha");
  if (static_cast<int>(aj.size()) != a.group.order)
    fail(path + ".alpha", "expected one map per group element");
  for (std::size_t i = 0; i < aj.size(); ++i) {
    std::string p = path + ".alpha[" + std::to_string(i) + "]";
    Mat m = mat_p(aj[i], p);
    a.alpha.push_back(
        reshape(p, [&] { return StarHom(a.algebra, a.algebra, std::move(m)); }));
  }
  const Json& oj = arr_field(j, path, "omega");
  if (static_cast<int>(oj.size()) != a.group.order)
    fail(path + ".omega", "expected one row per group element");
  for (std::size_t i = 0; i < oj.size(); ++i) {
    std::string p = path + ".omega[" + std::to_string(i) + "]";
    auto row = elems_p(oj[i], p, a.algebra);
    if (static_cast<int>(row.size()) != a.group.order)
      fail(p, "expected one entry per group element");
    a.omega.push_back(std::move(row));
  }
  a.u = elem_p(field(j, path, "u"), path + ".u", a.algebra);
  return a;
}

Json corr_action_j(const CorrAction& a) {
  Json alpha = Json::array();
  for (const auto& e : a.alpha) alpha.push_back(corr_j(e));
  Json omega = Json::array();
  for (const auto& row : a.omega) omega.push_back(intws_j(row));
  return Json{{"group", group_j(a.group)},
              {"algebra", algebra_j(a.algebra)},
              {"alpha", std::move(alpha)},
              {"omega", std::move(omega)},
              {"u", intw_j(a.u)}};
}

CorrAction corr_action_p(const Json& j, const std::string& path) {
  CorrAction a;
  a.group = group_p(field(j, path, "group"), path + ".group");
  a.algebra = algebra_p(field(j, path, "algebra"), path + ".algebra");
  const Json& aj = arr_field(j, path, "alpha");
  if (static_cast<int>(aj.size()) != a.group.order)
    fail(path + ".alpha", "expected one correspondence per group element");
  for (std::size_t i = 0; i < aj.size(); ++i)
    a.alpha.push_back(corr_p(aj[i], path + ".alpha[" + std::to_string(i) + "]"));
  const Json& oj = arr_field(j, path, "omega");
  if (static_cast<int>(oj.size()) != a.group.order)
    fail(path + ".omega", "expected one row per group element");
  for (std::size_t i = 0; i < oj.size(); ++i) {
    std::string p = path + ".omega[" + std::to_string(i) + "]";
    auto row = intws_p(oj[i], p);
    if (static_cast<int>(row.size()) != a.group.order)
      fail(p, "expected one entry per group element");
    a.omega.push_back(std::move(row));
  }
  a.u = intw_p(field(j, path, "u"), path + ".u");
  return a;
}

Json cm_j(const CrossedModule& cm) {
  return Json{{"g", group_j(cm.g)},
              {"h", group_j(cm.h)},
              {"partial", cm.partial},
              {"c", cm.c},
              {"label", cm.label}};
}

CrossedModule cm_p(const Json& j, const std::string& path) {
  CrossedModule cm;
  cm.g = group_p(field(j, path, "g"), path + ".g");
  cm.h = group_p(field(j, path, "h"), path + ".h");
  cm.partial = ints_from(arr_field(j, path, "partial"), path + ".partial");
  const Json& cj = arr_field(j, path, "c");
  for (std::size_t i = 0; i < cj.size(); ++i)
    cm.c.push_back(ints_from(cj[i], path + ".c[" + std::to_string(i) + "]"));
  cm.label = str_field(j, path, "label");
  if (static_cast<int>(cm.partial.size()) != cm.h.order)
    fail(path + ".partial", "expected one image per element of h");
  if (static_cast<int>(cm.c.size()) != cm.g.order)
    fail(path + ".c", "expected one permutation per element of g");
  for (std::size_t i = 0; i < cm.c.size(); ++i)
    if (static_cast<int>(cm.c[i].size()) != cm.h.order)
      fail(path + ".c[" + std::to_string(i) + "]",
           "expected one image per element of h");
  for (int v : cm.partial)
    if (v < 0 || v >= cm.g.order) fail(path + ".partial", "index out of range");
  for (const auto& row : cm.c)
    for (int v : row)
      if (v < 0 || v >= cm.h.order) fail(path + ".c", "index out of range");
  return cm;
}

Json cm_action_j(const CMAction& a) {
  return Json{{"cm", cm_j(a.cm)},
              {"action", bs_j(a.action)},
              {"v", elems_j(a.v)}};
}

CMAction cm_action_p(const Json& j, const std::string& path) {
  CMAction a;
  a.cm = cm_p(field(j, path, "cm"), path + ".cm");
  a.action = bs_p(field(j, path, "action"), path + ".action");
  a.v = elems_p(field(j, path, "v"), path + ".v", a.action.algebra);
  if (static_cast<int>(a.v.size()) != a.cm.h.order)
    fail(path + ".v", "expected one unitary per element of h");
  return a;
}

Json bundle_j(const FellBundle& b) {
  Json j{{"group", group_j(b.group)},
         {"base", algebra_j(b.base)},
         {"dims", b.dims},
         {"mult", mat_grid_j(b.mult)},
         {"star", mats_j(b.star)},
         {"unit_iso", mat_j(b.unit_iso)}};
  // Provenance travels with the file so that inversion after a round trip
  // through disk still reproduces the originating action exactly.
  if (!b.carrier.empty()) {
    Json c = Json::array();
    for (const auto& e : b.carrier) c.push_back(corr_j(e));
    j["carrier"] = std::move(c);
  }
  if (b.origin) j["origin"] = corr_action_j(*b.origin);
  return j;
}

FellBundle bundle_p(const Json& j, const std::string& path) {
  FellBundle b;
  b.group = group_p(field(j, path, "group"), path + ".group");
  b.base = algebra_p(field(j, path, "base"), path + ".base");
  b.dims = ints_from(arr_field(j, path, "dims"), path + ".dims");
  if (static_cast<int>(b.dims.size()) != b.group.order)
    fail(path + ".dims", "expected one fibre dimension per group element");
  b.mult = mat_grid_p(field(j, path, "mult"), path + ".mult");
  b.star = mats_p(field(j, path, "star"), path + ".star");
  b.unit_iso = mat_p(field(j, path, "unit_iso"), path + ".unit_iso");
  if (static_cast<int>(b.mult.size()) != b.group.order)
    fail(path + ".mult", "expected one row per group element");
  for (std::size_t i = 0; i < b.mult.size(); ++i)
    if (static_cast<int>(b.mult[i].size()) != b.group.order)
      fail(path + ".mult[" + std::to_string(i) + "]",
           "expected one tensor per group element");
  if (static_cast<int>(b.star.size()) != b.group.order)
    fail(path + ".star", "expected one tensor per group element");
  for (int g1 = 0; g1 < b.group.order; ++g1) {
    if (b.star[g1].rows() != b.dims[b.group.inverse(g1)] ||
        b.star[g1].cols() != b.dims[g1])
      fail(path + ".star[" + std::to_string(g1) + "]", "wrong shape");
    for (int g2 = 0; g2 < b.group.order; ++g2)
      if (b.mult[g1][g2].rows() != b.dims[b.group.mul(g1, g2)] ||
          b.mult[g1][g2].cols() != b.dims[g1] * b.dims[g2])
        fail(path + ".mult[" + std::to_string(g1) + "][" +
                 std::to_string(g2) + "]",
             "wrong shape");
  }
  if (b.unit_iso.rows() != b.dims[b.group.identity] ||
      b.unit_iso.cols() != b.base.dim())
    fail(path + ".unit_iso", "wrong shape");
  if (auto it = j.find("carrier"); it != j.end()) {
    if (!it->is_array()) fail(path + ".carrier", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      b.carrier.push_back(
          corr_p((*it)[i], path + ".carrier[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("origin"); it != j.end())
    b.origin = std::make_shared<CorrAction>(
        corr_action_p(*it, path + ".origin"));
  return b;
}

Json transf_j(const Transformation& t) {
  return Json{{"source", bs_j(t.source)},
              {"target", bs_j(t.target)},
              {"f", mat_j(t.f.mat)},
              {"V", elems_j(t.V)}};
}

Transformation transf_p(const Json& j, const std::string& path) {
  Transformation t;
  t.source = bs_p(field(j, path, "source"), path + ".source");
  t.target = bs_p(field(j, path, "target"), path + ".target");
  Mat fm = mat_p(field(j, path, "f"), path + ".f");
  t.f = reshape(path + ".f", [&] {
    return StarHom(t.source.algebra, t.target.algebra, std::move(fm));
  });
  t.V = elems_p(field(j, path, "V"), path + ".V", t.target.algebra);
  if (static_cast<int>(t.V.size()) != t.source.group.order)
    fail(path + ".V", "expected one unitary per group element");
  return t;
}

Json modif_j(const Modification& m) {
  return Json{{"source", transf_j(m.source)},
              {"target", transf_j(m.target)},
              {"W", elem_j(m.W)}};
}

Modification modif_p(const Json& j, const std::string& path) {
  Modification m;
  m.source = transf_p(field(j, path, "source"), path + ".source");
  m.target = transf_p(field(j, path, "target"), path + ".target");
  m.W = elem_p(field(j, path, "W"), path + ".W", m.source.target.algebra);
  return m;
}

Json corr_transf_j(const CorrTransformation& t) {
  return Json{{"source", corr_action_j(t.source)},
              {"target", corr_action_j(t.target)},
              {"gamma", corr_j(t.gamma)},
              {"V", intws_j(t.V)}};
}

CorrTransformation corr_transf_p(const Json& j, const std::string& path) {
  CorrTransformation t;
  t.source = corr_action_p(field(j, path, "source"), path + ".source");
  t.target = corr_action_p(field(j, path, "target"), path + ".target");
  t.gamma = corr_p(field(j, path, "gamma"), path + ".gamma");
  t.V = intws_p(field(j, path, "V"), path + ".V");
  if (static_cast<int>(t.V.size()) != t.source.group.order)
    fail(path + ".V", "expected one bigon per group element");
  return t;
}

Json fell_corr_j(const FellCorrespondence& c) {
  Json j{{"a", bundle_j(c.a)},
         {"b", bundle_j(c.b)},
         {"dims", c.dims},
         {"lmul", mat_grid_j(c.lmul)},
         {"rmul", mat_grid_j(c.rmul)},
         {"inner_b", mat_grid_j(c.inner_b)},
         {"inner_a", mat_grid_j(c.inner_a)},
         {"has_left", c.has_left}};
  if (c.origin) j["origin"] = corr_transf_j(*c.origin);
  return j;
}

FellCorrespondence fell_corr_p(const Json& j, const std::string& path) {
  FellCorrespondence c;
  c.a = bundle_p(field(j, path, "a"), path + ".a");
  c.b = bundle_p(field(j, path, "b"), path + ".b");
  c.dims = ints_from(arr_field(j, path, "dims"), path + ".dims");
  c.lmul = mat_grid_p(field(j, path, "lmul"), path + ".lmul");
  c.rmul = mat_grid_p(field(j, path, "rmul"), path + ".rmul");
  c.inner_b = mat_grid_p(field(j, path, "inner_b"), path + ".inner_b");
  c.inner_a = mat_grid_p(field(j, path, "inner_a"), path + ".inner_a");
  const Json& hl = field(j, path, "has_left");
  if (!hl.is_boolean()) fail(path + ".has_left", "expected a boolean");
  c.has_left = hl.get<bool>();
  int n = c.a.group.order;
  if (static_cast<int>(c.dims.size()) != n)
    fail(path + ".dims", "expected one dimension per group element");
  if (static_cast<int>(c.lmul.size()) != n ||
      static_cast<int>(c.rmul.size()) != n ||
      static_cast<int>(c.inner_b.size()) != n ||
      (c.has_left && static_cast<int>(c.inner_a.size()) != n))
    fail(path, "tensor table has wrong number of rows");
  if (auto it = j.find("origin"); it != j.end())
    c.origin = std::make_shared<CorrTransformation>(
        corr_transf_p(*it, path + ".origin"));
  return c;
}

Json rep_j(const FellRepresentation& r) {
  return Json{{"bundle", bundle_j(r.bundle)},
              {"base", algebra_j(r.space.base)},
              {"rank", r.space.rank},
              {"proj", mat_j(r.space.proj)},
              {"space_basis", mats_j(r.space_basis)},
              {"pi", mat_grid_j(r.pi)}};
}

FellRepresentation rep_p(const Json& j, const std::string& path) {
  FellRepresentation r;
  r.bundle = bundle_p(field(j, path, "bundle"), path + ".bundle");
  MatAlg base = algebra_p(field(j, path, "base"), path + ".base");
  int rank = int_field(j, path, "rank");
  Mat proj = mat_p(field(j, path, "proj"), path + ".proj");
  r.space = reshape(path, [&] {
    return HilbertModule(std::move(base), rank, std::move(proj));
  });
  r.space_basis = mats_p(field(j, path, "space_basis"), path + ".space_basis");
  r.pi = mat_grid_p(field(j, path, "pi"), path + ".pi");
  if (static_cast<int>(r.pi.size()) != r.bundle.group.order)
    fail(path + ".pi", "expected one row per group element");
  return r;
}

}  // namespace

std::string kind_of(const SpecObject& obj) {
  static const char* names[] = {
      "group",          "crossed_module", "algebra",
      "bs_action",      "corr_action",    "cm_action",
      "fell_bundle",    "transformation", "modification",
      "fell_correspondence", "representation"};
  return names[obj.index()];
}

Json mat_to_json(const Mat& m) { return mat_j(m); }
Mat mat_from_json(const Json& j) { return mat_p(j, "$"); }
Json group_to_json(const FiniteGroup& g) { return group_j(g); }
FiniteGroup group_from_json(const Json& j) { return group_p(j, "$"); }
Json algebra_to_json(const MatAlg& a) { return algebra_j(a); }
MatAlg algebra_from_json(const Json& j) { return algebra_p(j, "$"); }
Json elem_to_json(const AlgElement& x) { return elem_j(x); }
AlgElement elem_from_json(const Json& j, const MatAlg& a) {
  return elem_p(j, "$", a);
}

Json serialize(const SpecObject& obj) {
  Json j = std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FiniteGroup>) return group_j(x);
        else if constexpr (std::is_same_v<T, CrossedModule>) return cm_j(x);
        else if constexpr (std::is_same_v<T, MatAlg>) return algebra_j(x);
        else if constexpr (std::is_same_v<T, BSAction>) return bs_j(x);
        else if constexpr (std::is_same_v<T, CorrAction>)
          return corr_action_j(x);
        else if constexpr (std::is_same_v<T, CMAction>) return cm_action_j(x);
        else if constexpr (std::is_same_v<T, FellBundle>) return bundle_j(x);
        else if constexpr (std::is_same_v<T, Transformation>)
          return transf_j(x);
        else if constexpr (std::is_same_v<T, Modification>) return modif_j(x);
        else if constexpr (std::is_same_v<T, FellCorrespondence>)
          return fell_corr_j(x);
        else
          return rep_j(x);
      },
      obj);
  j["kind"] = kind_of(obj);
  return j;
}

SpecObject parse_spec(const Json& j) {
  std::string kind = str_field(j, "$", "kind");
  if (kind == "group") return group_p(j, "$");
  if (kind == "crossed_module") return cm_p(j, "$");
  if (kind == "algebra") return algebra_p(j, "$");
  if (kind == "bs_action") return bs_p(j, "$");
  if (kind == "corr_action") return corr_action_p(j, "$");
  if (kind == "cm_action") return cm_action_p(j, "$");
  if (kind == "fell_bundle") return bundle_p(j, "$");
  if (kind == "transformation") return transf_p(j, "$");
  if (kind == "modification") return modif_p(j, "$");
  if (kind == "fell_correspondence") return fell_corr_p(j, "$");
  if (kind == "representation") return rep_p(j, "$");
  fail("$.kind", "unknown kind \"" + kind + "\"");
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset of the syntax error into line and column.
    std::size_t pos = e.byte > 0 ? e.byte - 1 : 0;
    if (pos > text.size()) pos = text.size();
    int line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < pos; ++i)
      if (text[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    int col = static_cast<int>(pos - line_start) + 1;
    throw ParseError("line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
}

SpecObject load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(parse_text(ss.str()));
}

void save_spec_file(const std::string& path, const SpecObject& obj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TwistError("cannot write " + path);
  out << canonical_dump(serialize(obj));
}

VerificationReport verify_object(const SpecObject& obj, Tolerance tol) {
  return std::visit(
      [&](const auto& x) -> VerificationReport {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FiniteGroup>) {
          VerificationReport r;
          r.eps = tol.eps;
          try {
            x.validate();
            r.add_flag("group-laws", true);
          } catch (const TwistError& e) {
            r.add_flag("group-laws", false, e.what());
          }
          return r;
        } else if constexpr (std::is_same_v<T, CrossedModule>) {
          VerificationReport r = validate_crossed_module(x);
          r.eps = tol.eps;
          return r;
        } else if constexpr (std::is_same_v<T, MatAlg>) {
          VerificationReport r;
          r.eps = tol.eps;
          bool ok = !x.block_dims.empty();
          for (int d : x.block_dims) ok = ok && d >= 1;
          r.add_flag("block-dims-positive", ok);
          return r;
        } else if constexpr (std::is_same_v<T, BSAction>) {
          return verify_bs_action(x, tol);
        } else if constexpr (std::is_same_v<T, CorrAction>) {
          return verify_corr_action(x, tol);
        } else if constexpr (std::is_same_v<T, CMAction>) {
          return verify_cm_action(x, tol);
        } else if constexpr (std::is_same_v<T, FellBundle>) {
          return verify_fell(x, tol);
        } else if constexpr (std::is_same_v<T, Transformation>) {
          return verify_transformation(x, tol);
        } else if constexpr (std::is_same_v<T, Modification>) {
          return verify_modification(x, tol);
        } else if constexpr (std::is_same_v<T, FellCorrespondence>) {
          return verify_fell_correspondence(x, tol);
        } else {
          return verify_fell_representation(x, tol);
        }
      },
      obj);
}

Json report_to_json(const VerificationReport& r, bool include_timing) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"law", e.law},
                           {"residual", e.residual},
                           {"worst", e.worst},
                           {"pass", e.pass}});
  Json j{{"pass", r.pass()},
         {"eps", r.eps},
         {"max_residual", r.max_residual()},
         {"entries", std::move(entries)}};
  if (include_timing) j["time_seconds"] = r.time_seconds;
  return j;
}

std::string report_to_text(const VerificationReport& r, bool include_timing) {
  std::ostringstream out;
  char buf[64];
  for (const auto& e : r.entries) {
    std::snprintf(buf, sizeof(buf), "%.6e", e.residual);
    out << (e.pass ? "pass" : "FAIL") << "  " << e.law
        << "  residual=" << buf;
    if (!e.worst.empty()) out << "  worst=" << e.worst;
    out << "\n";
  }
  std::snprintf(buf, sizeof(buf), "%.6e", r.max_residual());
  out << "overall: " << (r.pass() ? "PASS" : "FAIL")
      << "  max_residual=" << buf;
  std::snprintf(buf, sizeof(buf), "%g", r.eps);
  out << "  eps=" << buf;
  if (include_timing) {
    std::snprintf(buf, sizeof(buf), "%.3f", r.time_seconds);
    out << "  time=" << buf << "s";
  }
  out << "\n";
  return out.str();
}

}  // namespace twist
