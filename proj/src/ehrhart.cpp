#include "kls/ehrhart.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kls/error.hpp"

namespace kls {

namespace {

Vector lift(const Vector& v) {
  Vector out = v;
  out.push_back(Rational(1));
  return out;
}

void normalize(std::vector<std::vector<int>>& faces, int bound, const char* what) {
  for (auto& f : faces) {
    std::sort(f.begin(), f.end());
    for (int v : f)
      if (v < 0 || v >= bound) fail(ErrorCode::InvalidInput, std::string(what) + " face uses a vertex out of range");
  }
  auto empty = std::find(faces.begin(), faces.end(), std::vector<int>{});
  if (empty == faces.end())
    faces.insert(faces.begin(), std::vector<int>{});
  else
    std::rotate(faces.begin(), empty, empty + 1);
}

// Cone fan over the faces with rays indexed by the vertices that occur.
LatticeFan cone_fan(const std::vector<Vector>& vertices, const std::vector<std::vector<int>>& faces) {
  std::map<int, int> ray_of;
  std::vector<Vector> rays;
  for (const auto& f : faces)
    for (int v : f)
      if (!ray_of.count(v)) ray_of[v] = 0;
  for (auto& [v, idx] : ray_of) {
    idx = static_cast<int>(rays.size());
    rays.push_back(lift(vertices[static_cast<size_t>(v)]));
  }
  std::vector<std::vector<int>> cones;
  for (const auto& f : faces) {
    std::vector<int> c;
    for (int v : f) c.push_back(ray_of[v]);
    std::sort(c.begin(), c.end());
    cones.push_back(c);
  }
  const int dim = vertices.empty() ? 1 : static_cast<int>(vertices[0].size()) + 1;
  return make_fan(dim, rays, cones);
}

bool fixes(const Matrix& m, const Vector& u) { return m * u == u; }

Poly det_one_minus(const Matrix& m) {
  // det(I - m t) = t^n det(t^{-1} I - m)
  return m.rows() == 0 ? Poly::constant(1) : poly_rev(charpoly(m), m.rows());
}

std::vector<long> count_range(const std::vector<Vector>& pts, int coord, int m) {
  Rational lo = pts[0][static_cast<size_t>(coord)], hi = lo;
  for (const auto& p : pts) {
    lo = std::min(lo, p[static_cast<size_t>(coord)]);
    hi = std::max(hi, p[static_cast<size_t>(coord)]);
  }
  lo *= m;
  hi *= m;
  mpz_class a, b;
  mpz_fdiv_q(a.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_cdiv_q(b.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  return {a.get_si(), b.get_si()};
}

// Calls visit on every integer vector in the box.
template <class F>
void for_each_point(const std::vector<std::pair<long, long>>& box, F&& visit) {
  const size_t d = box.size();
  std::vector<long> x(d);
  for (size_t i = 0; i < d; ++i) {
    x[i] = box[i].first;
    if (box[i].first > box[i].second) return;
  }
  while (true) {
    visit(x);
    size_t i = 0;
    while (i < d && x[i] == box[i].second) {
      x[i] = box[i].first;
      ++i;
    }
    if (i == d) return;
    ++x[i];
  }
}

// Whether u is a nonnegative combination of the columns of the (independent) generators.
bool in_simplicial_cone(const Matrix& gens, const Vector& u) {
  auto x = solve(gens, u);
  return x && std::all_of(x->begin(), x->end(), [](const Rational& v) { return v >= 0; });
}

struct Region {
  std::vector<Matrix> cells;     // lifted vertex columns of the maximal fine simplices in the face
  std::vector<Matrix> boundary;  // lifted vertex columns of the relative boundary ridges
  std::vector<Vector> points;    // vertices of the face
};

Region region_of(const LatticeComplex& c, int y) {
  const auto& t = c.geometry.triple;
  const int ny = c.coarse_index(y);
  const int ry = t.rho()[static_cast<size_t>(ny)] - 1;  // dim of the span of the cone over F_y
  Region r;
  std::vector<int> cells;
  for (int x = 0; x < c.num_fine(); ++x)
    if (t.sigma(x) == ny && t.rho()[static_cast<size_t>(x)] == ry) cells.push_back(x);
  const int dim1 = c.dim + 1;
  for (int x : cells) r.cells.push_back(Matrix::from_columns(c.lifted(c.fine[static_cast<size_t>(x)]), dim1));
  const Poset& g = t.gamma();
  for (int x = 0; x < c.num_fine(); ++x) {
    if (t.rho()[static_cast<size_t>(x)] != ry - 1) continue;
    int above = 0;
    for (int cell : cells) above += g.leq(x, cell) ? 1 : 0;
    if (above == 1) r.boundary.push_back(Matrix::from_columns(c.lifted(c.fine[static_cast<size_t>(x)]), dim1));
  }
  for (int v : c.coarse[static_cast<size_t>(y)]) r.points.push_back(c.vertices[static_cast<size_t>(v)]);
  return r;
}

ClassPoly box_character(const LatticeComplex& c, int x, int y, bool open) {
  const auto& kappa = c.kappa;
  const SubgroupPtr& on = kappa.carrier()->stab(x, y);
  auto simplex = c.fine[static_cast<size_t>(x)];
  std::vector<Vector> verts;
  for (int v : simplex) verts.push_back(c.vertices[static_cast<size_t>(v)]);
  std::vector<std::vector<Vector>> by_height;
  for (int m = 0; m <= static_cast<int>(verts.size()); ++m) by_height.push_back(box_points(verts, c.dim, open, m));
  return ClassPoly::from_function(on, [&](int u) {
    const Matrix& w = c.group->matrix(0, u);
    std::vector<Rational> coeffs;
    for (const auto& pts : by_height) {
      long n = 0;
      for (const auto& p : pts) n += fixes(w, p) ? 1 : 0;
      coeffs.push_back(Rational(n));
    }
    return Poly(coeffs);
  });
}

// W-orbit representatives (minimal index) of the points under a subgroup.
bool is_orbit_rep(const Group& g, const Subgroup& h, int z) {
  for (int u : h.elements())
    if (g.act(u, z) < z) return false;
  return true;
}

std::string poly_pair(const Poly& a, const Poly& b) { return a.to_text() + " vs " + b.to_text(); }

}  // namespace

int LatticeComplex::top() const {
  auto m = geometry.target.face_poset.maximum();
  return m ? *m : -1;
}

std::vector<Vector> LatticeComplex::lifted(const std::vector<int>& face) const {
  std::vector<Vector> out;
  for (int v : face) out.push_back(lift(vertices[static_cast<size_t>(v)]));
  return out;
}

LatticeComplex make_complex(int dim, std::vector<Vector> vertices, std::vector<std::vector<int>> fine,
                            std::optional<std::vector<std::vector<int>>> coarse, std::vector<Matrix> generators,
                            size_t max_order) {
  if (dim < 0) fail(ErrorCode::InvalidInput, "negative dimension");
  for (const auto& v : vertices) {
    if (static_cast<int>(v.size()) != dim) fail(ErrorCode::InvalidInput, "vertex has the wrong length");
    for (const auto& x : v)
      if (x.get_den() != 1) fail(ErrorCode::InvalidInput, "vertex coordinates must be integers");
  }
  const int n = static_cast<int>(vertices.size());
  normalize(fine, n, "fine");
  std::vector<std::vector<int>> coarse_faces = coarse ? *coarse : fine;
  normalize(coarse_faces, n, "coarse");
  for (const auto& f : fine) {
    std::vector<Vector> lifted;
    for (int v : f) lifted.push_back(lift(vertices[static_cast<size_t>(v)]));
    if (!f.empty() && rank(Matrix::from_columns(lifted, dim + 1)) != static_cast<int>(f.size())) {
      std::string label = "{";
      for (size_t i = 0; i < f.size(); ++i) label += (i ? "," : "") + std::to_string(f[i]);
      fail(ErrorCode::NotASimplex, "fine face " + label + "} is not a simplex");
    }
  }
  for (const auto& m : generators) {
    if (m.rows() != dim + 1 || m.cols() != dim + 1) fail(ErrorCode::InvalidInput, "affine matrices must be (dim+1) x (dim+1)");
    for (int j = 0; j <= dim; ++j)
      if (m(dim, j) != (j == dim ? 1 : 0)) fail(ErrorCode::InvalidAction, "affine matrix must end with the row (0,...,0,1)");
    for (int i = 0; i <= dim; ++i)
      for (int j = 0; j <= dim; ++j)
        if (m(i, j).get_den() != 1) fail(ErrorCode::InvalidAction, "affine matrices must be integral");
  }
  LatticeFan source = cone_fan(vertices, fine), target = cone_fan(vertices, coarse_faces);
  // smallest coarse face containing each fine face
  std::vector<int> sigma;
  for (const auto& f : fine) {
    std::vector<int> containing;
    for (size_t y = 0; y < coarse_faces.size(); ++y) {
      std::vector<Vector> gens;
      for (int v : coarse_faces[y]) gens.push_back(lift(vertices[static_cast<size_t>(v)]));
      bool inside = true;
      for (int v : f) inside = inside && in_cone(lift(vertices[static_cast<size_t>(v)]), gens, dim + 1);
      if (inside) containing.push_back(static_cast<int>(y));
    }
    int best = -1;
    for (int y : containing)
      if (best < 0 || coarse_faces[static_cast<size_t>(y)].size() < coarse_faces[static_cast<size_t>(best)].size()) best = y;
    for (int y : containing)
      if (!target.face_poset.leq(best, y)) fail(ErrorCode::InvalidSubdivision, "no smallest coarse face contains a fine face");
    if (best < 0) fail(ErrorCode::InvalidSubdivision, "a fine face lies in no coarse face");
    sigma.push_back(best);
  }
  if (generators.empty()) generators.push_back(Matrix::identity(dim + 1));
  auto geometry = make_cylinder(Matrix::identity(dim + 1), std::move(source), std::move(target), std::move(sigma));
  auto group = cylinder_group(geometry, generators, generators, max_order);
  auto kappa = cylinder_kernel(geometry, group);
  return LatticeComplex{dim,      std::move(vertices), std::move(fine), std::move(coarse_faces), std::move(generators),
                        std::move(geometry), group, std::move(kappa)};
}

std::vector<std::vector<int>> hull_faces(int dim, const std::vector<Vector>& points) {
  const int n = static_cast<int>(points.size());
  std::vector<Vector> lifts;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) fail(ErrorCode::InvalidInput, "point has the wrong length");
    lifts.push_back(lift(p));
  }
  if (n == 0) fail(ErrorCode::InvalidInput, "no points");
  if (rank(Matrix::from_columns(lifts, dim + 1)) != dim + 1) fail(ErrorCode::InvalidInput, "points are not full-dimensional");
  std::vector<int> vertex;
  for (int i = 0; i < n; ++i) {
    std::vector<Vector> others;
    for (int j = 0; j < n; ++j)
      if (j != i && lifts[static_cast<size_t>(j)] != lifts[static_cast<size_t>(i)]) others.push_back(lifts[static_cast<size_t>(j)]);
    if (!in_cone(lifts[static_cast<size_t>(i)], others, dim + 1)) vertex.push_back(i);
  }
  std::set<std::vector<int>> faces{{}, vertex};
  // facets: hyperplanes through dim independent points with everything on one side
  std::vector<int> pick(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) pick[static_cast<size_t>(i)] = i;
  std::set<std::vector<int>> facets;
  while (dim > 0) {
    std::vector<std::vector<Rational>> rows;
    for (int i : pick) rows.push_back(lifts[static_cast<size_t>(i)]);
    auto normal = nullspace(Matrix::from_rows(rows));
    if (normal.size() == 1) {
      int pos = 0, neg = 0;
      std::vector<int> on;
      for (int v : vertex) {
        Rational x(0);
        for (int k = 0; k <= dim; ++k) x += normal[0][static_cast<size_t>(k)] * lifts[static_cast<size_t>(v)][static_cast<size_t>(k)];
        if (x > 0) ++pos;
        else if (x < 0) ++neg;
        else on.push_back(v);
      }
      if (pos == 0 || neg == 0) facets.insert(on);
    }
    int i = dim - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - dim + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < dim; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
  // every proper face is an intersection of facets
  std::vector<std::vector<int>> frontier(facets.begin(), facets.end());
  faces.insert(facets.begin(), facets.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& f : frontier)
      for (const auto& g : facets) {
        std::vector<int> meet;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(meet));
        if (faces.insert(meet).second) next.push_back(meet);
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out(faces.begin(), faces.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::vector<Vector> box_points(const std::vector<Vector>& simplex, int dim, bool open, int m) {
  std::vector<Vector> lifted;
  for (const auto& v : simplex) {
    if (static_cast<int>(v.size()) != dim) fail(ErrorCode::InvalidInput, "vertex has the wrong length");
    lifted.push_back(lift(v));
  }
  if (lifted.empty()) return m == 0 ? std::vector<Vector>{Vector(static_cast<size_t>(dim + 1), Rational(0))} : std::vector<Vector>{};
  Matrix cols = Matrix::from_columns(lifted, dim + 1);
  if (rank(cols) != static_cast<int>(lifted.size())) fail(ErrorCode::NotASimplex, "vertices are affinely dependent");
  if (m < 0 || m > static_cast<int>(lifted.size())) return {};
  // The box lies inside the parallelepiped spanned by the lifted vertices.
  std::vector<std::pair<long, long>> box;
  for (int j = 0; j < dim; ++j) {
    Rational lo(0), hi(0);
    for (const auto& v : lifted) {
      if (v[static_cast<size_t>(j)] < 0) lo += v[static_cast<size_t>(j)];
      if (v[static_cast<size_t>(j)] > 0) hi += v[static_cast<size_t>(j)];
    }
    box.emplace_back(lo.get_num().get_si(), hi.get_num().get_si());
  }
  std::vector<Vector> out;
  for_each_point(box, [&](const std::vector<long>& x) {
    Vector u;
    for (long c : x) u.push_back(Rational(c));
    u.push_back(Rational(m));
    auto lam = solve(cols, u);
    if (!lam) return;
    for (const auto& l : *lam)
      if (l >= 1 || l < 0 || (open && l == 0)) return;
    out.push_back(std::move(u));
  });
  return out;
}

ClassPoly simplex_hstar(const LatticeComplex& c, int x, int y) { return box_character(c, x, y, false); }
ClassPoly simplex_local_hstar(const LatticeComplex& c, int x, int y) { return box_character(c, x, y, true); }

Poly ehr_series(const LatticeComplex& c, int y, int w, int M, bool interior) {
  if (y < 0 || y >= static_cast<int>(c.coarse.size())) fail(ErrorCode::InvalidInput, "coarse face index out of range");
  if (c.group->act(w, c.coarse_index(y)) != c.coarse_index(y)) fail(ErrorCode::InvalidInput, "element does not fix the face");
  const Matrix& mat = c.group->matrix(0, w);
  Region r = region_of(c, y);
  std::vector<Rational> counts;
  for (int m = 0; m <= M; ++m) {
    if (m == 0) {
      // the apex is interior only to the zero cone
      counts.push_back(Rational(interior && !r.points.empty() ? 0 : 1));
      continue;
    }
    if (r.points.empty()) {
      counts.push_back(Rational(0));
      continue;
    }
    std::vector<std::pair<long, long>> box;
    for (int j = 0; j < c.dim; ++j) {
      auto range = count_range(r.points, j, m);
      box.emplace_back(range[0], range[1]);
    }
    long n = 0;
    for_each_point(box, [&](const std::vector<long>& x) {
      Vector u;
      for (long v : x) u.push_back(Rational(v));
      u.push_back(Rational(m));
      if (!fixes(mat, u)) return;
      bool in = false;
      for (const auto& cell : r.cells) in = in || in_simplicial_cone(cell, u);
      if (!in) return;
      if (interior)
        for (const auto& ridge : r.boundary)
          if (in_simplicial_cone(ridge, u)) return;
      ++n;
    });
    counts.push_back(Rational(n));
  }
  return Poly(counts);
}

Poly hstar_by_counting(const LatticeComplex& c, int y, int w, int M) {
  const auto& spans = c.geometry.spans[static_cast<size_t>(c.coarse_index(y))];
  Matrix q = quotient_action(c.group->matrix(0, w), {}, spans, c.dim + 1);
  Poly p = ehr_series(c, y, w, M) * det_one_minus(q);
  std::vector<Rational> v;
  for (int i = 0; i <= M; ++i) v.push_back(p.coeff(i));
  return Poly(v);
}

std::vector<ClassPoly> coarse_hstar(const LatticeComplex& c) {
  const auto& t = c.geometry.triple;
  const auto& carrier = *c.kappa.carrier();
  const Group& g = *c.group;
  std::vector<ClassPoly> out;
  for (int y = 0; y < static_cast<int>(c.coarse.size()); ++y) {
    const int ny = c.coarse_index(y);
    const SubgroupPtr& wy = carrier.stab(0, ny);
    ClassPoly sum = ClassPoly::constant(wy, Poly());
    for (int x = 0; x < c.num_fine(); ++x) {
      if (t.sigma(x) != ny || !is_orbit_rep(g, *wy, x)) continue;
      const SubgroupPtr& wx = carrier.stab(x, ny);
      ClassPoly det = ClassPoly::from_function(wx, [&](int u) {
        return quotient_charpoly(g.matrix(0, u), c.geometry.spans[static_cast<size_t>(x)], c.geometry.spans[static_cast<size_t>(ny)],
                                 c.dim + 1);
      });
      sum = sum + ind(simplex_hstar(c, x, ny) * det, wy);
    }
    out.push_back(sum);
  }
  return out;
}

ClassPoly hstar_from_subdivision(const LatticeComplex& c) {
  const int top = c.top();
  if (top < 0) fail(ErrorCode::InvalidInput, "the coarse subdivision has no maximum");
  return coarse_hstar(c)[static_cast<size_t>(top)];
}

namespace {

ClassPoly via_localh(const LatticeComplex& c, bool local) {
  const int top = c.top();
  if (top < 0) fail(ErrorCode::InvalidInput, "the coarse subdivision has no maximum");
  const int nt = c.coarse_index(top);
  auto li = equiv_local_invariants(c.geometry.triple, c.kappa);
  const auto& carrier = *c.kappa.carrier();
  const SubgroupPtr& whole = carrier.stab(0, nt);
  ClassPoly sum = ClassPoly::constant(whole, Poly());
  for (int x = 0; x < c.num_fine(); ++x) {
    if (!is_orbit_rep(*c.group, *whole, x)) continue;
    const ClassPoly& weight = local ? li.ell(x, nt) : li.h(x, nt);
    sum = sum + ind(simplex_local_hstar(c, x, nt) * weight, whole);
  }
  return sum;
}

}  // namespace

ClassPoly hstar_via_localh(const LatticeComplex& c) { return via_localh(c, false); }
ClassPoly localhstar_via_localh(const LatticeComplex& c) { return via_localh(c, true); }

ClassPoly localhstar_from_faces(const LatticeComplex& c) {
  const int top = c.top();
  if (top < 0) fail(ErrorCode::InvalidInput, "the coarse subdivision has no maximum");
  const Poset& face = c.geometry.target.face_poset;
  auto ec = is_eulerian(face);
  if (!ec.ok) fail(ErrorCode::InvalidInput, "the coarse faces are not the face lattice of a polytope");
  auto hs = coarse_hstar(c);
  const Group& g = *c.group;
  const int nt = c.coarse_index(top);
  const auto& spans = c.geometry.spans;
  return ClassPoly::from_function(c.kappa.carrier()->stab(0, nt), [&](int w) {
    std::vector<int> fixed;
    for (int y = 0; y < face.size(); ++y)
      if (g.act(w, c.coarse_index(y)) == c.coarse_index(y)) fixed.push_back(y);
    auto sub = induced_subposet(face, fixed);
    auto poset = std::make_shared<const Poset>(sub.poset);
    std::vector<int> r(static_cast<size_t>(poset->num_intervals()));
    for (int s = 0; s < poset->num_intervals(); ++s) {
      auto [a, b] = poset->interval(s);
      r[static_cast<size_t>(s)] = (*poset->rank())[static_cast<size_t>(b)] - (*poset->rank())[static_cast<size_t>(a)];
    }
    auto rank = std::make_shared<const WeakRank>(poset, r);
    auto kappa = IncidenceElement::from_function(rank, [&](int a, int b) {
      const int ya = c.coarse_index(sub.to_parent[static_cast<size_t>(a)]), yb = c.coarse_index(sub.to_parent[static_cast<size_t>(b)]);
      return quotient_charpoly(g.matrix(0, w), spans[static_cast<size_t>(ya)], spans[static_cast<size_t>(yb)], c.dim + 1);
    });
    auto ginv = invert(solve_g(kappa));
    const int ft = sub.from_parent[static_cast<size_t>(top)];
    Poly sum;
    for (int a = 0; a < poset->size(); ++a)
      sum = sum + hs[static_cast<size_t>(sub.to_parent[static_cast<size_t>(a)])].ev(w) * ginv(a, ft);
    return sum;
  });
}

SeriesCheck reciprocity_check(const LatticeComplex& c, int w, int M, const Poly& hstar_at_w) {
  const int top = c.top();
  if (top < 0) fail(ErrorCode::InvalidInput, "the coarse subdivision has no maximum");
  const int n = c.dim + 1;
  if (hstar_at_w.degree() >= n) return {false, hstar_at_w.degree(), "h* has degree above the dimension"};
  Poly expected = series_divide(poly_rev(hstar_at_w, n), det_one_minus(c.group->matrix(0, w)), M);
  Poly counted = ehr_series(c, top, w, M, true);
  for (int m = 0; m <= M; ++m)
    if (expected.coeff(m) != counted.coeff(m))
      return {false, m, "interior count " + to_string(counted.coeff(m)) + " vs series " + to_string(expected.coeff(m))};
  return {};
}

SeriesCheck reciprocity_check(const LatticeComplex& c, int w, int M) {
  return reciprocity_check(c, w, M, hstar_from_subdivision(c).ev(w));
}

SeriesCheck polynomial_action_check(const LatticeComplex& c, int M) {
  auto hs = coarse_hstar(c);
  const Group& g = *c.group;
  const auto& carrier = *c.kappa.carrier();
  for (int y = 0; y < static_cast<int>(c.coarse.size()); ++y) {
    const int ny = c.coarse_index(y);
    if (!is_orbit_rep(g, *carrier.whole(), ny)) continue;
    const SubgroupPtr& wy = carrier.stab(0, ny);
    const int d = c.geometry.triple.rho()[static_cast<size_t>(ny)] - 1;
    for (int u : wy->class_reps()) {
      Poly counted = hstar_by_counting(c, y, u, M);
      const Poly& assembled = hs[static_cast<size_t>(y)].ev(u);
      if (counted.degree() > d || assembled.degree() > d)
        return {false, std::max(counted.degree(), assembled.degree()),
                "face " + c.geometry.target.face_poset.label(y) + ": degree above the dimension"};
      if (counted != assembled)
        return {false, 0, "face " + c.geometry.target.face_poset.label(y) + " at element " + std::to_string(u) + ": " + poly_pair(assembled, counted)};
    }
  }
  return {};
}

EquivElement hstar_element(const LatticeComplex& c) {
  auto hs = coarse_hstar(c);
  const auto cptr = c.kappa.carrier();
  EquivElement out(cptr);
  for (int z = 0; z < cptr->poset().size(); ++z) {
    const int s = cptr->poset().slot(0, z);
    if (z < c.num_fine())
      out.set_slot(s, simplex_hstar(c, z, z));
    else
      out.set_slot(s, hs[static_cast<size_t>(z - c.num_fine())]);
  }
  return out;
}

Check check_hstar_identity(const LatticeComplex& c) {
  const auto& t = c.geometry.triple;
  auto h = hstar_element(c);
  auto lhs = Poly{-1, 1} * mask(h, [&](int z, int zp) { return t.is_XY(z, zp); });
  auto rhs = equiv_multiply(mask(h, [&](int z, int zp) { return t.in_X(z) && t.in_X(zp); }),
                            mask(c.kappa, [&](int z, int zp) { return t.in_X(z) && t.sigma(z) == zp; }));
  if (lhs == rhs) return {true, "(t-1) h*|X/Y = h*|X kappa|(X/Y)open", {-1, -1}};
  auto d = first_difference(lhs, rhs);
  return {false, "(t-1) h*|X/Y = h*|X kappa|(X/Y)open", d};
}

}  // namespace kls
