#include "kls/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kls/error.hpp"

namespace kls {

namespace {

std::string set_label(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Vector zero_vector(int dim) { return Vector(static_cast<size_t>(dim), Rational(0)); }

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Vector add(const Vector& a, const Vector& b) {
  Vector out = a;
  for (size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

int span_dim(const std::vector<Vector>& vs, int dim) {
  if (vs.empty()) return 0;
  return rank(Matrix::from_columns(vs, dim));
}

// Scales to a primitive integer vector.
Vector primitive(const Vector& v) {
  mpz_class l = 1, g = 0;
  for (const auto& x : v) l = lcm(l, x.get_den());
  for (const auto& x : v) g = gcd(g, mpz_class(x * l));
  Vector out;
  for (const auto& x : v) out.push_back(Rational(mpz_class(x * l) / g));
  return out;
}

void normalize_sets(std::vector<std::vector<int>>& sets, int bound, const char* what) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(ErrorCode::InvalidInput, std::string("repeated index in ") + what + " " + set_label(s));
    for (int i : s)
      if (i < 0 || i >= bound) fail(ErrorCode::InvalidInput, std::string("index out of range in ") + what + " " + set_label(s));
  }
  std::set<std::vector<int>> seen;
  for (const auto& s : sets)
    if (!seen.insert(s).second) fail(ErrorCode::InvalidInput, std::string("duplicate ") + what + " " + set_label(s));
  auto empty = std::find(sets.begin(), sets.end(), std::vector<int>{});
  if (empty == sets.end())
    sets.insert(sets.begin(), std::vector<int>{});
  else if (empty != sets.begin())
    fail(ErrorCode::InvalidInput, std::string("the empty ") + what + " must come first");
}

// Poset by containment; checks optional covers, the rank function and lower Eulerian-ness.
Poset containment_poset(const std::vector<std::vector<int>>& sets, std::vector<int> rank,
                        const std::optional<std::vector<std::pair<int, int>>>& covers, const char* what) {
  const int n = static_cast<int>(sets.size());
  std::vector<std::string> labels;
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    labels.push_back(set_label(sets[static_cast<size_t>(a)]));
    for (int b = 0; b < n; ++b) leq[static_cast<size_t>(a) * n + b] = subset(sets[static_cast<size_t>(a)], sets[static_cast<size_t>(b)]);
  }
  Poset p(std::move(labels), std::move(leq));
  if (covers) {
    auto given = *covers;
    for (auto [a, b] : given)
      if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorCode::InvalidInput, std::string(what) + " cover index out of range");
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    if (given != p.covers()) fail(ErrorCode::InvalidInput, std::string(what) + " covers disagree with containment");
  }
  auto rc = validate_rank(p, rank);
  if (!rc.ok)
    fail(ErrorCode::NotRanked, std::string(what) + " dimensions are not a rank function at " + p.label(rc.violation.first) + " < " +
                                   p.label(rc.violation.second));
  p = p.with_rank(std::move(rank));
  auto ec = is_lower_eulerian(p);
  if (!ec.ok) fail(ErrorCode::NotLowerEulerian, std::string(what) + " face poset: " + ec.reason);
  return p;
}

std::vector<int> vector_perm(const Matrix& m, const std::vector<Vector>& vs, const char* what) {
  std::map<Vector, int> index;
  for (size_t i = 0; i < vs.size(); ++i) index[vs[i]] = static_cast<int>(i);
  std::vector<int> out;
  for (const auto& v : vs) {
    auto it = index.find(m * v);
    if (it == index.end()) fail(ErrorCode::InvalidAction, std::string("matrix does not permute the ") + what);
    out.push_back(it->second);
  }
  return out;
}

std::vector<int> set_perm(const std::vector<int>& point_perm, const std::vector<std::vector<int>>& sets, const char* what) {
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < sets.size(); ++i) index[sets[i]] = static_cast<int>(i);
  std::vector<int> out;
  for (const auto& s : sets) {
    std::vector<int> image;
    for (int i : s) image.push_back(point_perm[static_cast<size_t>(i)]);
    std::sort(image.begin(), image.end());
    auto it = index.find(image);
    if (it == index.end()) fail(ErrorCode::InvalidAction, std::string("matrix does not permute the ") + what);
    out.push_back(it->second);
  }
  return out;
}

void check_square(const Matrix& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim)
    fail(ErrorCode::InvalidInput, std::string(what) + " matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
}

// Fixed fan for an element given by its cone permutation and matrix.
FixedFan fixed_fan_impl(const LatticeFan& fan, const std::vector<int>& perm, const Matrix& w) {
  auto ray_perm = vector_perm(w, fan.rays, "rays");
  FixedFan out;
  out.embedding = fixed_subposet(fan.face_poset, perm);
  // Generator of C^w for fixed cones whose fixed part is a ray.
  std::vector<int> fixed_cones = out.embedding.to_parent;
  std::vector<Vector> new_rays;
  std::map<int, int> ray_of_cone;
  for (int c : fixed_cones) {
    std::vector<Vector> sums;
    std::set<int> seen;
    for (int r : fan.cones[static_cast<size_t>(c)]) {
      if (seen.count(r)) continue;
      Vector s = zero_vector(fan.dim);
      for (int x = r; !seen.count(x); x = ray_perm[static_cast<size_t>(x)]) {
        seen.insert(x);
        s = add(s, fan.rays[static_cast<size_t>(x)]);
      }
      sums.push_back(s);
    }
    if (span_dim(sums, fan.dim) == 1) {
      ray_of_cone[c] = static_cast<int>(new_rays.size());
      new_rays.push_back(primitive(sums.front()));
    }
  }
  std::vector<std::vector<int>> cones;
  for (int c : fixed_cones) {
    std::vector<int> rs;
    for (auto [rc, idx] : ray_of_cone)
      if (fan.face_poset.leq(rc, c)) rs.push_back(idx);
    std::sort(rs.begin(), rs.end());
    cones.push_back(rs);
  }
  out.fan = make_fan(fan.dim, new_rays, cones);
  // make_fan orders cones as given, so fan cone i is the i-th fixed cone.
  for (int i = 0; i < out.fan.face_poset.size(); ++i)
    for (int j = 0; j < out.fan.face_poset.size(); ++j)
      if (out.fan.face_poset.leq(i, j) != out.embedding.poset.leq(i, j))
        fail(ErrorCode::VerificationFailed, "fixed fan face poset differs from the fixed subposet");
  return out;
}

}  // namespace

std::vector<Vector> LatticeFan::generators(int cone) const {
  std::vector<Vector> out;
  for (int r : cones[static_cast<size_t>(cone)]) out.push_back(rays[static_cast<size_t>(r)]);
  return out;
}

LatticeFan make_fan(int dim, std::vector<Vector> rays, std::vector<std::vector<int>> cones,
                    const std::optional<std::vector<std::pair<int, int>>>& covers) {
  if (dim < 0) fail(ErrorCode::InvalidInput, "fan dimension is negative");
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != dim) fail(ErrorCode::InvalidInput, "ray has the wrong length");
    if (is_zero_vector(r)) fail(ErrorCode::InvalidInput, "zero ray");
  }
  normalize_sets(cones, static_cast<int>(rays.size()), "cone");
  std::set<std::vector<int>> present(cones.begin(), cones.end());
  for (int r = 0; r < static_cast<int>(rays.size()); ++r)
    if (!present.count({r})) fail(ErrorCode::InvalidInput, "ray " + std::to_string(r) + " is not listed as a cone");
  LatticeFan fan;
  fan.dim = dim;
  fan.rays = std::move(rays);
  fan.cones = std::move(cones);
  std::vector<int> rank;
  for (size_t c = 0; c < fan.cones.size(); ++c) {
    auto gens = fan.generators(static_cast<int>(c));
    for (size_t i = 0; i < gens.size(); ++i) {
      std::vector<Vector> others = gens;
      others.erase(others.begin() + static_cast<long>(i));
      Vector neg = gens[i];
      for (auto& x : neg) x = -x;
      if (in_cone(gens[i], others, dim) || (gens.size() > 1 && in_cone(neg, gens, dim)))
        fail(ErrorCode::InvalidInput, "cone " + set_label(fan.cones[c]) + " is not pointed with these rays extremal");
    }
    rank.push_back(span_dim(gens, dim));
  }
  fan.face_poset = containment_poset(fan.cones, std::move(rank), covers, "fan");
  return fan;
}

int Polytope::find_face(std::vector<int> vs) const {
  std::sort(vs.begin(), vs.end());
  auto it = std::find(faces.begin(), faces.end(), vs);
  return it == faces.end() ? -1 : static_cast<int>(it - faces.begin());
}

Polytope make_polytope(int dim, std::vector<Vector> vertices, std::vector<std::vector<int>> faces,
                       const std::optional<std::vector<std::pair<int, int>>>& covers) {
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != dim) fail(ErrorCode::InvalidInput, "vertex has the wrong length");
  if (vertices.empty()) fail(ErrorCode::InvalidInput, "polytope without vertices");
  normalize_sets(faces, static_cast<int>(vertices.size()), "face");
  std::vector<int> all(vertices.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (std::find(faces.begin(), faces.end(), all) == faces.end()) faces.push_back(all);
  for (int v = 0; v < static_cast<int>(vertices.size()); ++v)
    if (std::find(faces.begin(), faces.end(), std::vector<int>{v}) == faces.end())
      fail(ErrorCode::InvalidInput, "vertex " + std::to_string(v) + " is not listed as a face");
  Polytope p;
  p.dim = dim;
  p.vertices = std::move(vertices);
  p.faces = std::move(faces);
  std::vector<int> rank;
  for (const auto& f : p.faces) {
    std::vector<Vector> lifted;
    for (int v : f) {
      Vector x = p.vertices[static_cast<size_t>(v)];
      x.push_back(Rational(1));
      lifted.push_back(std::move(x));
    }
    rank.push_back(span_dim(lifted, dim + 1));
  }
  p.face_lattice = containment_poset(p.faces, std::move(rank), covers, "polytope");
  auto ec = is_eulerian(p.face_lattice);
  if (!ec.ok) fail(ErrorCode::NotLowerEulerian, "polytope face lattice is not Eulerian: " + ec.reason);
  return p;
}

LatticeFan cone_over(const Polytope& p) {
  std::vector<Vector> rays;
  for (auto v : p.vertices) {
    v.push_back(Rational(1));
    rays.push_back(std::move(v));
  }
  return make_fan(p.dim + 1, std::move(rays), p.faces);
}

bool in_cone(const Vector& v, const std::vector<Vector>& gens, int dim) {
  if (is_zero_vector(v)) return true;
  if (gens.empty()) return false;
  const int k = span_dim(gens, dim);
  {
    auto probe = gens;
    probe.push_back(v);
    if (span_dim(probe, dim) != k) return false;
  }
  // v lies in the cone iff it is a nonnegative combination of some basis drawn from the generators.
  const int n = static_cast<int>(gens.size());
  std::vector<int> pick(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
  while (true) {
    std::vector<Vector> basis;
    for (int i : pick) basis.push_back(gens[static_cast<size_t>(i)]);
    Matrix b = Matrix::from_columns(basis, dim);
    if (rank(b) == k) {
      auto x = solve(b, v);
      if (x && std::all_of(x->begin(), x->end(), [](const Rational& c) { return c >= 0; })) return true;
    }
    int i = k - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
}

Matrix quotient_action(const Matrix& w, const std::vector<Vector>& sub, const std::vector<Vector>& sup, int dim) {
  check_square(w, dim, "action");
  auto basis = extend_basis(sub, sup, dim);
  const int k0 = span_dim(sub, dim), n = static_cast<int>(basis.size());
  if (span_dim(sup, dim) != n) fail(ErrorCode::InvalidInput, "subspace is not contained in the larger subspace");
  Matrix b = Matrix::from_columns(basis, dim);
  Matrix q(n - k0, n - k0);
  for (int j = 0; j < n; ++j) {
    auto x = solve(b, w * basis[static_cast<size_t>(j)]);
    if (!x) fail(ErrorCode::InvalidAction, "action does not preserve the subspace");
    if (j < k0) {
      for (int i = k0; i < n; ++i)
        if ((*x)[static_cast<size_t>(i)] != 0) fail(ErrorCode::InvalidAction, "action does not preserve the subspace");
      continue;
    }
    for (int i = k0; i < n; ++i) q(i - k0, j - k0) = (*x)[static_cast<size_t>(i)];
  }
  return q;
}

int fixed_dim(const Matrix& w, const std::vector<Vector>& sub, const std::vector<Vector>& sup, int dim) {
  Matrix q = quotient_action(w, sub, sup, dim);
  return q.rows() - rank(q - Matrix::identity(q.rows()));
}

Poly quotient_charpoly(const Matrix& w, const std::vector<Vector>& sub, const std::vector<Vector>& sup, int dim) {
  Matrix q = quotient_action(w, sub, sup, dim);
  return q.rows() == 0 ? Poly::constant(1) : charpoly(q);
}

GroupPtr fan_group(const LatticeFan& fan, const std::vector<Matrix>& generators, size_t max_order) {
  std::vector<Perm> perms;
  for (const auto& m : generators) {
    check_square(m, fan.dim, "fan action");
    perms.push_back(set_perm(vector_perm(m, fan.rays, "rays"), fan.cones, "cones"));
  }
  if (generators.empty()) return fan_group(fan, {Matrix::identity(fan.dim)}, max_order);
  return Group::generate(fan.face_poset.size(), perms, {generators}, max_order);
}

Matrix affine_from_linear(const Matrix& m) {
  Matrix out = Matrix::identity(m.rows() + 1);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

GroupPtr polytope_group(const Polytope& p, const std::vector<Matrix>& generators, size_t max_order) {
  std::vector<Vector> lifted;
  for (auto v : p.vertices) {
    v.push_back(Rational(1));
    lifted.push_back(std::move(v));
  }
  std::vector<Perm> perms;
  for (const auto& m : generators) {
    check_square(m, p.dim + 1, "affine");
    for (int j = 0; j <= p.dim; ++j)
      if (m(p.dim, j) != (j == p.dim ? 1 : 0)) fail(ErrorCode::InvalidAction, "affine matrix must end with the row (0,...,0,1)");
    perms.push_back(set_perm(vector_perm(m, lifted, "vertices"), p.faces, "faces"));
  }
  if (generators.empty()) return Group::generate(p.face_lattice.size(), {}, {std::vector<Matrix>{}}, max_order);
  return Group::generate(p.face_lattice.size(), perms, {generators}, max_order);
}

EquivElement fan_kernel(const LatticeFan& fan, GroupPtr group) {
  auto poset = std::make_shared<const Poset>(fan.face_poset);
  if (group->degree() != poset->size()) fail(ErrorCode::InvalidAction, "group does not act on the cones of this fan");
  const bool linear = group->num_reps() > 0 && group->order() > 0 && group->matrix(0, 0).rows() == fan.dim;
  auto c = std::make_shared<const EquivCarrier>(group, WeakRank::natural(poset));
  auto kappa = EquivElement::from_function(c, [&](int z, int zp, int u) {
    Matrix m = linear ? group->matrix(0, u) : Matrix::identity(fan.dim);
    if (!linear && u != group->identity()) fail(ErrorCode::InvalidAction, "fan action carries no matrices");
    return quotient_charpoly(m, fan.generators(z), fan.generators(zp), fan.dim);
  });
  auto check = equiv_kernel_validate(kappa);
  if (!check.ok) fail(ErrorCode::VerificationFailed, "fan kernel is not an equivariant kernel: " + check.reason);
  return kappa;
}

FixedFan fixed_fan(const LatticeFan& fan, const Group& group, int w) {
  if (group.degree() != fan.face_poset.size()) fail(ErrorCode::InvalidAction, "group does not act on the cones of this fan");
  Matrix m = group.num_reps() > 0 ? group.matrix(0, w) : Matrix::identity(fan.dim);
  return fixed_fan_impl(fan, group.perm(w), m);
}

CylinderGeometry make_cylinder(Matrix phi, LatticeFan source, LatticeFan target, std::vector<int> sigma) {
  if (phi.rows() != target.dim || phi.cols() != source.dim) fail(ErrorCode::InvalidInput, "map has the wrong shape");
  if (sigma.size() != source.cones.size()) fail(ErrorCode::InvalidInput, "sigma must have one entry per source cone");
  for (int s : sigma)
    if (s < 0 || s >= static_cast<int>(target.cones.size())) fail(ErrorCode::InvalidInput, "sigma value out of range");
  for (size_t c = 0; c < source.cones.size(); ++c) {
    auto gens = target.generators(sigma[c]);
    for (const auto& r : source.generators(static_cast<int>(c)))
      if (!in_cone(phi * r, gens, target.dim))
        fail(ErrorCode::InvalidSubdivision, "image of cone " + source.face_poset.label(static_cast<int>(c)) + " is not inside cone " +
                                                target.face_poset.label(sigma[c]));
  }
  const int kernel_dim = source.dim - rank(phi);
  if (rank(phi) != target.dim) fail(ErrorCode::InvalidSubdivision, "map is not surjective");
  StrongFormalSubdivision sfs;
  sfs.X = source.face_poset;
  std::vector<int> ry = *target.face_poset.rank();
  for (auto& r : ry) r += kernel_dim;
  sfs.Y = target.face_poset.with_rank(ry);
  sfs.sigma = sigma;
  CylinderGeometry g{std::move(phi), std::move(source), std::move(target), std::move(sigma), mapping_cylinder(sfs), {}};
  for (size_t c = 0; c < g.source.cones.size(); ++c) g.spans.push_back(g.source.generators(static_cast<int>(c)));
  for (size_t c = 0; c < g.target.cones.size(); ++c) {
    // phi^{-1}(span C) from the kernel of [phi | -B].
    auto gens = g.target.generators(static_cast<int>(c));
    Matrix m(g.target.dim, g.source.dim + static_cast<int>(gens.size()));
    for (int i = 0; i < g.target.dim; ++i) {
      for (int j = 0; j < g.source.dim; ++j) m(i, j) = g.phi(i, j);
      for (size_t j = 0; j < gens.size(); ++j) m(i, g.source.dim + static_cast<int>(j)) = -gens[j][static_cast<size_t>(i)];
    }
    std::vector<Vector> span;
    for (const auto& v : nullspace(m)) {
      Vector x(v.begin(), v.begin() + g.source.dim);
      if (!is_zero_vector(x)) span.push_back(std::move(x));
    }
    g.spans.push_back(std::move(span));
  }
  const Poset& gamma = g.triple.gamma();
  const auto& rho = g.triple.rho();
  for (int s = 0; s < gamma.num_intervals(); ++s) {
    auto [z, zp] = gamma.interval(s);
    auto both = g.spans[static_cast<size_t>(zp)];
    const int dz = span_dim(g.spans[static_cast<size_t>(z)], g.source.dim), dzp = span_dim(both, g.source.dim);
    both.insert(both.end(), g.spans[static_cast<size_t>(z)].begin(), g.spans[static_cast<size_t>(z)].end());
    if (span_dim(both, g.source.dim) != dzp) fail(ErrorCode::InvalidSubdivision, "spans are not nested along " + gamma.label(z));
    const int expect = dzp - dz + (g.triple.in_X(z) && g.triple.in_Y(zp) ? 1 : 0);
    if (rho[static_cast<size_t>(zp)] - rho[static_cast<size_t>(z)] != expect)
      fail(ErrorCode::InvalidSubdivision, "rank rule fails on [" + gamma.label(z) + ", " + gamma.label(zp) + "]");
  }
  return g;
}

GroupPtr cylinder_group(const CylinderGeometry& g, const std::vector<Matrix>& on_source, const std::vector<Matrix>& on_target,
                        size_t max_order) {
  if (on_source.size() != on_target.size()) fail(ErrorCode::InvalidInput, "one target matrix per source matrix is required");
  const int nx = static_cast<int>(g.source.cones.size());
  std::vector<Perm> perms;
  for (size_t i = 0; i < on_source.size(); ++i) {
    check_square(on_source[i], g.source.dim, "source action");
    check_square(on_target[i], g.target.dim, "target action");
    if (!(g.phi * on_source[i] == on_target[i] * g.phi)) fail(ErrorCode::InvalidAction, "map is not equivariant");
    auto ps = set_perm(vector_perm(on_source[i], g.source.rays, "source rays"), g.source.cones, "source cones");
    auto pt = set_perm(vector_perm(on_target[i], g.target.rays, "target rays"), g.target.cones, "target cones");
    Perm p = ps;
    for (int y : pt) p.push_back(nx + y);
    perms.push_back(std::move(p));
  }
  const int n = g.triple.gamma().size();
  if (perms.empty()) return Group::generate(n, {}, {std::vector<Matrix>{}, std::vector<Matrix>{}}, max_order);
  return Group::generate(n, perms, {on_source, on_target}, max_order);
}

EquivElement cylinder_kernel(const CylinderGeometry& g, GroupPtr group) {
  const Poset& gamma = g.triple.gamma();
  if (group->degree() != gamma.size()) fail(ErrorCode::InvalidAction, "group does not act on the cylinder");
  auto c = std::make_shared<const EquivCarrier>(group, natural_weak_rank(g.triple));
  const bool linear = group->num_reps() > 0;
  auto kappa = EquivElement::from_function(c, [&](int z, int zp, int u) {
    if (!linear && u != group->identity()) fail(ErrorCode::InvalidAction, "cylinder action carries no matrices");
    Matrix m = linear ? group->matrix(0, u) : Matrix::identity(g.source.dim);
    Poly p = quotient_charpoly(m, g.spans[static_cast<size_t>(z)], g.spans[static_cast<size_t>(zp)], g.source.dim);
    if (g.triple.in_X(z) && g.triple.in_Y(zp)) p = Poly{-1, 1} * p;
    return p;
  });
  auto check = equiv_kernel_validate(kappa);
  if (!check.ok) fail(ErrorCode::VerificationFailed, "cylinder kernel is not an equivariant kernel: " + check.reason);
  return kappa;
}

bool origin_in_relint(const Polytope& p, int face) {
  const auto& fv = p.faces[static_cast<size_t>(face)];
  if (fv.empty()) return false;
  std::vector<Vector> pts;
  for (int v : fv) pts.push_back(p.vertices[static_cast<size_t>(v)]);
  // Origin in aff(F).
  {
    std::vector<Vector> lifted;
    for (auto x : pts) {
      x.push_back(Rational(1));
      lifted.push_back(std::move(x));
    }
    Vector target = zero_vector(p.dim);
    target.push_back(Rational(1));
    if (!solve(Matrix::from_columns(lifted, p.dim + 1), target)) return false;
  }
  if (fv.size() == 1) return true;
  // For each facet G of F, the origin lies strictly on the side of aff(G) containing F.
  const Poset& lat = p.face_lattice;
  for (int g : lat.down(face)) {
    if (g == face || (*lat.rank())[static_cast<size_t>(g)] != (*lat.rank())[static_cast<size_t>(face)] - 1) continue;
    const auto& gv = p.faces[static_cast<size_t>(g)];
    int outside = -1;
    for (int v : fv)
      if (!std::binary_search(gv.begin(), gv.end(), v)) outside = v;
    // origin = sum a_i g_i + b v with sum a_i + b = 1; b > 0 is required.
    std::vector<Vector> cols;
    for (int v : gv) {
      Vector x = p.vertices[static_cast<size_t>(v)];
      x.push_back(Rational(1));
      cols.push_back(std::move(x));
    }
    Vector x = p.vertices[static_cast<size_t>(outside)];
    x.push_back(Rational(1));
    cols.push_back(std::move(x));
    Vector target = zero_vector(p.dim);
    target.push_back(Rational(1));
    Matrix m = Matrix::from_columns(cols, p.dim + 1);
    auto sol = solve(m, target);
    if (!sol || sol->back() <= 0) return false;
  }
  return true;
}

PolytopeConeTriple polytope_cone_triple(const Polytope& p, int F) {
  if (F < 0 || F >= static_cast<int>(p.faces.size())) fail(ErrorCode::InvalidInput, "face index out of range");
  if (*std::max_element(p.face_lattice.rank()->begin(), p.face_lattice.rank()->end()) != p.dim + 1)
    fail(ErrorCode::InvalidInput, "polytope is not full-dimensional");
  if (!origin_in_relint(p, F)) fail(ErrorCode::InvalidInput, "the origin is not in the relative interior of face " + p.face_lattice.label(F));
  const Poset& lat = p.face_lattice;
  const auto& fv = p.faces[static_cast<size_t>(F)];
  std::vector<Vector> fpts;
  for (int v : fv) fpts.push_back(p.vertices[static_cast<size_t>(v)]);
  // phi: V -> V/span(F), rows spanning the annihilator of F.
  std::vector<Vector> ann = nullspace(Matrix::from_columns(fpts, p.dim).transpose());
  const int qdim = static_cast<int>(ann.size());
  Matrix phi(qdim, p.dim);
  for (int i = 0; i < qdim; ++i)
    for (int j = 0; j < p.dim; ++j) phi(i, j) = ann[static_cast<size_t>(i)][static_cast<size_t>(j)];

  std::vector<int> xs, ys;
  for (int z = 0; z < lat.size(); ++z) (lat.leq(F, z) ? ys : xs).push_back(z);
  // Source fan: cones over faces not containing F, rays are their vertices.
  std::vector<int> src_ray_of(p.vertices.size(), -1);
  std::vector<Vector> src_rays;
  for (int z : xs)
    if (p.faces[static_cast<size_t>(z)].size() == 1) {
      int v = p.faces[static_cast<size_t>(z)][0];
      src_ray_of[static_cast<size_t>(v)] = static_cast<int>(src_rays.size());
      src_rays.push_back(p.vertices[static_cast<size_t>(v)]);
    }
  std::vector<std::vector<int>> src_cones;
  for (int z : xs) {
    std::vector<int> rs;
    for (int v : p.faces[static_cast<size_t>(z)]) rs.push_back(src_ray_of[static_cast<size_t>(v)]);
    std::sort(rs.begin(), rs.end());
    src_cones.push_back(rs);
  }
  // Target fan: the cone over P/F in V/span(F), rays from faces covering F.
  std::vector<int> tgt_ray_face;
  std::vector<Vector> tgt_rays;
  const int rF = (*lat.rank())[static_cast<size_t>(F)];
  for (int z : ys)
    if ((*lat.rank())[static_cast<size_t>(z)] == rF + 1) {
      int v = -1;
      for (int u : p.faces[static_cast<size_t>(z)])
        if (!std::binary_search(fv.begin(), fv.end(), u)) v = u;
      tgt_ray_face.push_back(z);
      tgt_rays.push_back(primitive(phi * p.vertices[static_cast<size_t>(v)]));
    }
  std::vector<std::vector<int>> tgt_cones;
  for (int z : ys) {
    std::vector<int> rs;
    for (size_t i = 0; i < tgt_ray_face.size(); ++i)
      if (lat.leq(tgt_ray_face[i], z)) rs.push_back(static_cast<int>(i));
    tgt_cones.push_back(rs);
  }
  std::vector<int> sigma;
  for (int z : xs) {
    auto j = join(lat, z, F);
    if (!j) fail(ErrorCode::InvalidSubdivision, "face " + lat.label(z) + " has no join with F");
    sigma.push_back(static_cast<int>(std::find(ys.begin(), ys.end(), *j) - ys.begin()));
  }
  PolytopeConeTriple out{SubdivisionTriple(lat, *lat.rank(), F),
                         make_cylinder(phi, make_fan(p.dim, src_rays, src_cones), make_fan(qdim, tgt_rays, tgt_cones), sigma),
                         {}};
  out.gamma_to_face = xs;
  out.gamma_to_face.insert(out.gamma_to_face.end(), ys.begin(), ys.end());
  const Poset& gamma = out.geometry.triple.gamma();
  for (int a = 0; a < gamma.size(); ++a)
    for (int b = 0; b < gamma.size(); ++b)
      if (gamma.leq(a, b) != lat.leq(out.gamma_to_face[static_cast<size_t>(a)], out.gamma_to_face[static_cast<size_t>(b)]) ||
          out.geometry.triple.rho()[static_cast<size_t>(a)] != (*lat.rank())[static_cast<size_t>(out.gamma_to_face[static_cast<size_t>(a)])])
        fail(ErrorCode::VerificationFailed, "cylinder of the cone construction differs from the face lattice");
  return out;
}

GroupPtr polytope_cone_group(const PolytopeConeTriple& t, const std::vector<Matrix>& given) {
  const auto& g = t.geometry;
  const std::vector<Matrix> linear = given.empty() ? std::vector<Matrix>{Matrix::identity(g.source.dim)} : given;
  // phi has full row rank; S = phi^T (phi phi^T)^{-1} is a right inverse.
  std::vector<Matrix> on_target;
  if (g.target.dim > 0) {
    auto inv = inverse(g.phi * g.phi.transpose());
    Matrix s = g.phi.transpose() * *inv;
    for (const auto& m : linear) {
      check_square(m, g.source.dim, "linear");
      on_target.push_back(g.phi * m * s);
    }
  } else {
    for (size_t i = 0; i < linear.size(); ++i) on_target.push_back(Matrix(0, 0));
  }
  return cylinder_group(g, linear, on_target);
}

}  // namespace kls
