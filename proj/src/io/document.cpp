#include "io/document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "kls/error.hpp"

namespace kls::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int read_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<std::string> read_labels(const json& j) {
  if (j.is_number_integer()) {
    std::vector<std::string> out;
    for (int i = 0; i < j.get<int>(); ++i) out.push_back(std::to_string(i));
    return out;
  }
  if (!j.is_array()) bad("\"elements\" must be a count or a list of labels");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) bad("element labels must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<int> read_int_list(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(read_int(e, what));
  return out;
}

std::vector<std::vector<int>> read_sets(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list of lists");
  std::vector<std::vector<int>> out;
  for (const auto& e : j) out.push_back(read_int_list(e, what));
  return out;
}

std::vector<Matrix> read_matrices(const json& j) {
  if (!j.is_array()) bad("matrices must be a list");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(read_matrix(m));
  return out;
}

Poset builder(const json& j) {
  const std::string name = need(j, "builder").get<std::string>();
  auto arg = [&](const char* key) { return read_int(need(j, key), key); };
  if (name == "boolean") return boolean_algebra(arg("n"));
  if (name == "chain") return chain(arg("k"));
  if (name == "polygon") return polygon(arg("k"));
  if (name == "segment") return segment_subdivision(arg("s"));
  if (name == "cube") return cube_face_lattice(arg("d"));
  if (name == "simplex") return simplex_face_lattice(arg("d"));
  if (name == "cross_polytope") return cross_polytope_face_lattice(arg("d"));
  if (name == "semisuspension") return semisuspension(read_poset(need(j, "of")));
  if (name == "pyramid") return pyramid(read_poset(need(j, "of")));
  if (name == "adjoin_max") return adjoin_max(read_poset(need(j, "of")));
  if (name == "product") return direct_product(read_poset(need(j, "a")), read_poset(need(j, "b")));
  if (name == "glue") return glue_at_extremes(read_poset(need(j, "a")), read_poset(need(j, "b")));
  bad("unknown poset builder \"" + name + "\"");
}

Perm read_perm(const json& j, const Poset& p) {
  const int n = p.size();
  Perm out(static_cast<size_t>(n));
  if (j.is_array()) {
    out = read_int_list(j, "permutation");
    if (static_cast<int>(out.size()) != n) bad("permutation has the wrong length");
  } else if (j.is_object()) {
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = i;
    for (const auto& [from, to] : j.items()) out[static_cast<size_t>(resolve(p, json(from)))] = resolve(p, to);
  } else {
    bad("a generator is an index list or a label map");
  }
  std::vector<int> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[static_cast<size_t>(i)] != i) bad("generator is not a permutation");
  return out;
}

Polytope read_polytope(const json& j) {
  const int dim = read_int(need(j, "dim"), "dim");
  std::vector<Vector> vs;
  for (const auto& v : need(j, "vertices")) vs.push_back(read_vector(v));
  auto faces = j.contains("faces") ? read_sets(j.at("faces"), "faces") : hull_faces(dim, vs);
  return make_polytope(dim, std::move(vs), std::move(faces));
}

}  // namespace

const char* schema_name(Schema s) {
  switch (s) {
    case Schema::Poset: return "poset";
    case Schema::Sfs: return "sfs";
    case Schema::Triple: return "triple";
    case Schema::Fan: return "fan";
    case Schema::Complex: return "complex";
    case Schema::Group: return "group";
  }
  return "?";
}

Document parse_document(const std::string& text, const std::string& name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad("a document is a JSON object");
  if (!j.contains("v") || j.at("v") != 1) bad("unsupported or missing schema version (\"v\": 1 expected)");
  const std::string tag = need(j, "schema").is_string() ? j.at("schema").get<std::string>() : "";
  Document d;
  d.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : name;
  static const Schema all[] = {Schema::Poset, Schema::Sfs, Schema::Triple, Schema::Fan, Schema::Complex, Schema::Group};
  bool found = false;
  for (Schema s : all)
    if (tag == schema_name(s)) {
      d.schema = s;
      found = true;
    }
  if (!found) bad("unknown schema \"" + tag + "\"");
  d.body = std::move(j);
  return d;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json") stem.resize(stem.size() - 5);
  return parse_document(ss.str(), stem);
}

Rational read_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      bad("bad rational \"" + j.get<std::string>() + "\"");
    }
  }
  bad("numbers must be integers or rational strings");
}

Poly read_poly(const json& j) {
  std::vector<Rational> c;
  if (j.is_array()) {
    for (const auto& x : j) c.push_back(read_rational(x));
  } else if (j.is_string()) {
    std::stringstream ss(j.get<std::string>());
    std::string part;
    while (std::getline(ss, part, ',')) c.push_back(read_rational(json(part)));
  } else {
    bad("a polynomial is a coefficient list or a comma-joined string");
  }
  return Poly(c);
}

Vector read_vector(const json& j) {
  if (!j.is_array()) bad("a vector is a list");
  Vector v;
  for (const auto& x : j) v.push_back(read_rational(x));
  return v;
}

Matrix read_matrix(const json& j) {
  if (!j.is_array() || j.empty()) bad("a matrix is a nonempty list of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = j[0].is_array() ? static_cast<int>(j[0].size()) : -1;
  Matrix m(rows, cols < 0 ? 0 : cols);
  for (int i = 0; i < rows; ++i) {
    Vector row = read_vector(j[static_cast<size_t>(i)]);
    if (static_cast<int>(row.size()) != cols) bad("matrix rows have different lengths");
    for (int k = 0; k < cols; ++k) m(i, k) = row[static_cast<size_t>(k)];
  }
  return m;
}

Poset read_poset(const json& j) {
  if (!j.is_object()) bad("a poset is an object");
  try {
    Poset p;
    if (j.contains("builder")) {
      p = builder(j);
    } else {
      auto labels = read_labels(need(j, "elements"));
      std::vector<std::pair<int, int>> covers;
      for (const auto& c : need(j, "covers")) {
        if (!c.is_array() || c.size() != 2) bad("a cover is a pair");
        auto find = [&](const json& ref) {
          if (ref.is_number_integer()) return ref.get<int>();
          auto it = std::find(labels.begin(), labels.end(), ref.get<std::string>());
          if (it == labels.end()) bad("unknown element \"" + ref.get<std::string>() + "\"");
          return static_cast<int>(it - labels.begin());
        };
        covers.emplace_back(find(c[0]), find(c[1]));
      }
      p = Poset::from_covers(labels, covers);
    }
    if (j.contains("rank")) p = p.with_rank(read_int_list(j.at("rank"), "rank"));
    return p;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput) bad(e.what());
    throw;
  }
}

int resolve(const Poset& p, const json& ref) {
  if (ref.is_number_integer()) {
    const int i = ref.get<int>();
    if (i < 0 || i >= p.size()) bad("element index " + std::to_string(i) + " out of range");
    return i;
  }
  if (!ref.is_string()) bad("elements are referenced by label or index");
  const std::string& s = ref.get<std::string>();
  const int i = p.find_label(s);
  if (i >= 0) return i;
  if (!s.empty() && s.size() < 9 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return resolve(p, json(std::stoi(s)));
  bad("unknown element \"" + s + "\"");
}

std::string element_name(const Poset& p, int z) { return p.label(z); }

GroupPtr read_perm_group(const json& j, const Poset& p) {
  std::vector<Perm> gens;
  for (const auto& g : need(j, "generators")) gens.push_back(read_perm(g, p));
  return Group::generate(p.size(), gens);
}

IncidenceElement read_kernel(const json& doc, WeakRankPtr r, bool use_file) {
  IncidenceElement kappa = eulerian_kernel(r);
  if (!use_file) return kappa;
  if (!doc.contains("kernel")) bad("--kernel file needs a \"kernel\" field in the document");
  const Poset& b = r->poset();
  for (const auto& o : need(doc.at("kernel"), "overrides")) {
    const auto& iv = need(o, "interval");
    if (!iv.is_array() || iv.size() != 2) bad("an interval is a pair");
    const int z = resolve(b, iv[0]), zp = resolve(b, iv[1]);
    if (!b.leq(z, zp)) bad("override on a pair that is not an interval");
    kappa.set(z, zp, read_poly(need(o, "poly")));
  }
  return kappa;
}

StrongFormalSubdivision read_sfs(const json& j) {
  StrongFormalSubdivision s;
  s.X = read_poset(need(j, "X"));
  s.Y = read_poset(need(j, "Y"));
  s.X = s.X.with_rank(rank_or_natural(s.X));
  s.Y = s.Y.with_rank(rank_or_natural(s.Y));
  const json& m = need(j, "sigma");
  if (m.is_array()) {
    if (static_cast<int>(m.size()) != s.X.size()) bad("sigma needs one image per element of X");
    for (const auto& y : m) s.sigma.push_back(resolve(s.Y, y));
  } else if (m.is_object()) {
    s.sigma.assign(static_cast<size_t>(s.X.size()), -1);
    for (const auto& [x, y] : m.items()) s.sigma[static_cast<size_t>(resolve(s.X, json(x)))] = resolve(s.Y, y);
    if (std::count(s.sigma.begin(), s.sigma.end(), -1)) bad("sigma is not defined on every element of X");
  } else {
    bad("sigma is a list or a label map");
  }
  return s;
}

TripleData read_triple(const Document& d, bool use_file_kernel, const std::optional<json>& group_override) {
  const json& j = d.body;
  TripleData out;
  const json* group = group_override ? &*group_override : (j.contains("group") ? &j.at("group") : nullptr);
  if (j.contains("polytope")) {
    Polytope p = read_polytope(j.at("polytope"));
    const int F = p.find_face(read_int_list(need(j, "face"), "face"));
    if (F < 0) bad("\"face\" is not a face of the polytope");
    out.polytope = polytope_cone_triple(p, F);
    std::vector<Matrix> linear = group ? read_matrices(need(*group, "linear")) : std::vector<Matrix>{};
    auto g = polytope_cone_group(*out.polytope, linear);
    out.triple = out.polytope->geometry.triple;
    out.equiv_kernel = cylinder_kernel(out.polytope->geometry, g);
    out.rank = out.equiv_kernel->carrier()->weak_rank();
    return out;
  }
  Poset gamma = read_poset(need(j, "poset"));
  std::vector<int> rho = gamma.rank() ? *gamma.rank() : natural_rank(gamma);
  out.triple.emplace(gamma, rho, resolve(gamma, need(j, "q")));
  out.rank = natural_weak_rank(*out.triple);
  IncidenceElement kappa = read_kernel(j, out.rank, use_file_kernel);
  if (group) {
    auto g = read_perm_group(*group, out.triple->gamma());
    auto c = std::make_shared<const EquivCarrier>(g, out.rank);
    out.equiv_kernel = EquivElement::from_function(c, [&](int z, int zp, int) { return kappa(z, zp); });
  } else {
    out.kernel = kappa;
  }
  return out;
}

FanData read_fan(const Document& d) {
  const json& j = d.body;
  const int dim = read_int(need(j, "dim"), "dim");
  std::vector<Vector> rays;
  for (const auto& r : need(j, "rays")) rays.push_back(read_vector(r));
  LatticeFan fan = make_fan(dim, std::move(rays), read_sets(need(j, "cones"), "cones"));
  std::vector<Matrix> gens = j.contains("group") ? read_matrices(need(j.at("group"), "linear")) : std::vector<Matrix>{};
  auto g = fan_group(fan, gens);
  auto kernel = fan_kernel(fan, g);
  return FanData{std::move(fan), g, std::move(kernel)};
}

LatticeComplex read_complex(const Document& d) {
  const json& j = d.body;
  const int dim = read_int(need(j, "dim"), "dim");
  std::vector<Vector> vs;
  for (const auto& v : need(j, "vertices")) vs.push_back(read_vector(v));
  std::set<std::vector<int>> faces;
  for (auto cell : read_sets(need(j, "cells"), "cells")) {
    std::sort(cell.begin(), cell.end());
    if (cell.size() > 20) bad("cell too large");
    for (unsigned mask = 0; mask < (1u << cell.size()); ++mask) {
      std::vector<int> f;
      for (size_t i = 0; i < cell.size(); ++i)
        if (mask >> i & 1u) f.push_back(cell[i]);
      faces.insert(f);
    }
  }
  std::optional<std::vector<std::vector<int>>> coarse;
  if (j.contains("coarse"))
    coarse = read_sets(j.at("coarse"), "coarse");
  else
    coarse = hull_faces(dim, vs);
  std::vector<Matrix> gens = j.contains("group") ? read_matrices(need(j.at("group"), "affine")) : std::vector<Matrix>{};
  return make_complex(dim, std::move(vs), {faces.begin(), faces.end()}, coarse, gens);
}

}  // namespace kls::io
