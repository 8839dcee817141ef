#include <gtest/gtest.h>

#include <random>

#include "kls/error.hpp"
#include "kls/geometry.hpp"

using namespace kls;

namespace {

Matrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) r.push_back(to_rationals(row));
  return Matrix::from_rows(r);
}

Vector vec(const std::vector<long>& v) { return to_rationals(v); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::VerificationFailed;
}

// Complete fan of the four quadrants.
LatticeFan square_fan() {
  return make_fan(2, {vec({1, 0}), vec({0, 1}), vec({-1, 0}), vec({0, -1})},
                  {{}, {0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

LatticeFan hexagon_fan() {
  std::vector<Vector> rays{vec({1, 0}), vec({1, 1}), vec({0, 1}), vec({-1, 0}), vec({-1, -1}), vec({0, -1})};
  std::vector<std::vector<int>> cones{{}};
  for (int i = 0; i < 6; ++i) cones.push_back({i});
  for (int i = 0; i < 6; ++i) cones.push_back({i, (i + 1) % 6});
  return make_fan(2, rays, cones);
}

const Matrix kRot90 = mat({{0, -1}, {1, 0}});
const Matrix kSwap = mat({{0, 1}, {1, 0}});

Polytope square(long lo_x, long hi_x, long lo_y, long hi_y) {
  // vertices 0..3 counterclockwise from (lo_x, lo_y)
  return make_polytope(2, {vec({lo_x, lo_y}), vec({hi_x, lo_y}), vec({hi_x, hi_y}), vec({lo_x, hi_y})},
                       {{}, {0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// det(tI - m) evaluated at t = x through the determinant.
Rational char_at(const Matrix& m, long x) {
  Matrix a = Matrix::identity(m.rows());
  for (int i = 0; i < m.rows(); ++i) a(i, i) = Rational(x);
  return determinant(a - m);
}

}  // namespace

TEST(Linalg, BasicsOnRandomMatrices) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int it = 0; it < 60; ++it) {
    const int n = 1 + static_cast<int>(rng() % 4);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Rational(c(rng));
    Poly p = charpoly(m);
    EXPECT_EQ(p.degree(), n);
    for (long x : {-2L, 0L, 1L, 3L}) EXPECT_EQ(p.eval(Rational(x)), char_at(m, x));
    auto inv = inverse(m);
    EXPECT_EQ(inv.has_value(), determinant(m) != 0);
    if (inv) EXPECT_EQ(m * *inv, Matrix::identity(n));
    auto ker = nullspace(m);
    EXPECT_EQ(static_cast<int>(ker.size()) + rank(m), n);
    for (const auto& v : ker) EXPECT_EQ(m * v, Vector(static_cast<size_t>(n), Rational(0)));
    Vector b = m * vec(std::vector<long>(static_cast<size_t>(n), 1));
    auto x = solve(m, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m * *x, b);
  }
}

TEST(Geometry, FixedDim) {
  std::vector<Vector> plane{vec({1, 0}), vec({0, 1})};
  EXPECT_EQ(fixed_dim(Matrix::identity(2), {}, plane, 2), 2);
  EXPECT_EQ(fixed_dim(kRot90, {}, plane, 2), 0);
  EXPECT_EQ(fixed_dim(mat({{1, 0}, {0, -1}}), {}, plane, 2), 1);
  EXPECT_EQ(fixed_dim(kSwap, {}, plane, 2), 1);
  // swap on R^2 / span(1,1) acts by -1
  EXPECT_EQ(fixed_dim(kSwap, {vec({1, 1})}, plane, 2), 0);
}

TEST(Geometry, QuotientCharpoly) {
  std::vector<Vector> plane{vec({1, 0}), vec({0, 1})};
  EXPECT_EQ(quotient_charpoly(Matrix::identity(2), {}, plane, 2), (Poly{1, -2, 1}));
  EXPECT_EQ(quotient_charpoly(kSwap, {}, plane, 2), (Poly{-1, 0, 1}));
  EXPECT_EQ(quotient_charpoly(mat({{0, -1}, {1, -1}}), {}, plane, 2), (Poly{1, 1, 1}));
  EXPECT_EQ(quotient_charpoly(kSwap, {vec({1, 1})}, plane, 2), (Poly{1, 1}));
  EXPECT_EQ(quotient_charpoly(kSwap, plane, plane, 2), Poly::constant(1));
  EXPECT_EQ(code_of([&] { quotient_charpoly(kRot90, {vec({1, 0})}, plane, 2); }), ErrorCode::InvalidAction);
}

TEST(Geometry, MakeFanRejects) {
  EXPECT_EQ(code_of([] { make_fan(2, {vec({1, 0}), vec({-1, 0})}, {{0}, {1}, {0, 1}}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { make_fan(2, {vec({1, 0})}, {{0}, {0}}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { make_fan(2, {vec({1, 0}), vec({0, 1})}, {{0}, {0, 1}}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] {
              make_fan(2, {vec({1, 0}), vec({0, 1})}, {{0}, {1}, {0, 1}}, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
            }),
            ErrorCode::InvalidInput);
  auto f = make_fan(2, {vec({1, 0}), vec({0, 1})}, {{0}, {1}, {0, 1}},
                    std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(*f.face_poset.rank(), (std::vector<int>{0, 1, 1, 2}));
}

TEST(Geometry, FanGroupRejectsNonSymmetry) {
  auto fan = square_fan();
  EXPECT_EQ(code_of([&] { fan_group(fan, {mat({{1, 1}, {0, 1}})}); }), ErrorCode::InvalidAction);
  EXPECT_EQ(fan_group(fan, {kRot90, kSwap})->order(), 8);
}

TEST(Geometry, TrivialActionGivesEulerianKernel) {
  auto fan = hexagon_fan();
  auto kappa = fan_kernel(fan, fan_group(fan, {}));
  auto ev = kappa.ev(0);
  const Poset& p = fan.face_poset;
  for (int s = 0; s < p.num_intervals(); ++s) {
    auto [z, zp] = p.interval(s);
    Poly e = Poly::constant(1);
    for (int i = 0; i < ev.r(z, zp); ++i) e = e * Poly{-1, 1};
    EXPECT_EQ(ev(z, zp), e);
  }
}

TEST(Geometry, SquareFanRotationKernel) {
  auto fan = square_fan();
  auto group = fan_group(fan, {kRot90});
  ASSERT_EQ(group->order(), 4);
  auto kappa = fan_kernel(fan, group);
  const int quadrant = fan.face_poset.find_label("{0,1}");
  auto whole = kappa.carrier()->stab(0, 0);
  ASSERT_EQ(whole->order(), 4);
  // [0, C] is only fixed by the identity; the charpoly of the rotation appears on the quotient of the plane
  EXPECT_EQ(kappa(0, quadrant).ev(0), (Poly{1, -2, 1}));
  std::map<int, Poly> by_power;
  for (int w = 0; w < group->order(); ++w) by_power[group->element_order(w)] =
      quotient_charpoly(group->matrix(0, w), {}, {vec({1, 0}), vec({0, 1})}, 2);
  EXPECT_EQ(by_power[1], (Poly{1, -2, 1}));
  EXPECT_EQ(by_power[2], (Poly{1, 2, 1}));
  EXPECT_EQ(by_power[4], (Poly{1, 0, 1}));
}

TEST(GeometryProperty, FanKernelMultiplicativeAndAlternating) {
  std::vector<std::pair<LatticeFan, std::vector<Matrix>>> cases{
      {square_fan(), {kRot90, kSwap}},
      {hexagon_fan(), {mat({{1, -1}, {1, 0}}), kSwap}},
      {make_fan(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}, {0, 1, 2}}),
       {mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}), mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})}},
  };
  for (const auto& [fan, gens] : cases) {
    auto group = fan_group(fan, gens);
    auto kappa = fan_kernel(fan, group);
    for (int w = 0; w < group->order(); ++w) {
      const auto& fixed = kappa.carrier()->fixed(w);
      auto ev = kappa.ev(w);
      const Poset& q = ev.poset();
      for (int s = 0; s < q.num_intervals(); ++s) {
        auto [a, b] = q.interval(s);
        for (int m : q.closed_interval(a, b)) EXPECT_EQ(ev(a, b), ev(a, m) * ev(m, b));
        const int z = fixed.sub.to_parent[static_cast<size_t>(a)], zp = fixed.sub.to_parent[static_cast<size_t>(b)];
        const Matrix& m = group->matrix(0, w);
        const int k = fixed_dim(m, fan.generators(z), fan.generators(zp), fan.dim);
        const Poly sign = (k % 2) ? Poly::constant(-1) : Poly::constant(1);
        EXPECT_EQ(poly_rev(ev(a, b), ev.r(a, b)), sign * ev(a, b));
        EXPECT_EQ((*fixed.natural)[static_cast<size_t>(b)] - (*fixed.natural)[static_cast<size_t>(a)], k);
        // det of the quotient map is (-1)^{codim of the fixed space}
        Matrix qm = quotient_action(m, fan.generators(z), fan.generators(zp), fan.dim);
        const int codim = qm.rows() - k;
        EXPECT_EQ(qm.rows() ? determinant(qm) : Rational(1), Rational(codim % 2 ? -1 : 1));
      }
    }
  }
}

TEST(Geometry, FixedFanExamples) {
  auto fan = square_fan();
  auto group = fan_group(fan, {kRot90, kSwap});
  auto id = fixed_fan(fan, *group, group->identity());
  EXPECT_EQ(id.fan.rays, fan.rays);
  EXPECT_EQ(id.fan.cones, fan.cones);

  const int swap = group->find(fan_group(fan, {kSwap})->perm(1));
  auto diag = fixed_fan(fan, *group, swap);
  ASSERT_EQ(diag.fan.rays.size(), 2u);
  EXPECT_EQ(diag.fan.rays[0], vec({1, 1}));
  EXPECT_EQ(diag.fan.rays[1], vec({-1, -1}));
  EXPECT_EQ(diag.fan.face_poset.size(), 3);
  EXPECT_EQ(fan.face_poset.label(diag.embedding.to_parent[1]), "{0,1}");

  const int rot = group->find(fan_group(fan, {kRot90})->perm(1));
  auto none = fixed_fan(fan, *group, rot);
  EXPECT_EQ(none.fan.face_poset.size(), 1);
  EXPECT_TRUE(none.fan.rays.empty());

  // a reflection fixing rays
  const int flip = group->find(fan_group(fan, {mat({{1, 0}, {0, -1}})})->perm(1));
  auto axis = fixed_fan(fan, *group, flip);
  EXPECT_EQ(axis.fan.rays, (std::vector<Vector>{vec({1, 0}), vec({-1, 0})}));
}

TEST(Geometry, HexagonFixedFans) {
  auto fan = hexagon_fan();
  auto group = fan_group(fan, {mat({{1, -1}, {1, 0}}), kSwap});
  ASSERT_EQ(group->order(), 12);
  auto kappa = fan_kernel(fan, group);
  EXPECT_TRUE(check_equiv_solution(kappa, equiv_solve_g(kappa), equiv_solve_f(kappa)).ok);
  for (int w = 0; w < group->order(); ++w) {
    auto ff = fixed_fan(fan, *group, w);
    const int fd = fixed_dim(group->matrix(0, w), {}, {vec({1, 0}), vec({0, 1})}, 2);
    if (fd == 2) EXPECT_EQ(ff.fan.cones.size(), fan.cones.size());
    if (fd == 1) EXPECT_EQ(ff.fan.rays.size(), 2u);
    if (fd == 0) EXPECT_EQ(ff.fan.cones.size(), 1u);
  }
}

TEST(Geometry, InCone) {
  std::vector<Vector> gens{vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 1, 1})};
  EXPECT_TRUE(in_cone(vec({2, 3, 1}), gens, 3));
  EXPECT_FALSE(in_cone(vec({0, 0, 1}), gens, 3));
  EXPECT_FALSE(in_cone(vec({-1, 0, 0}), gens, 3));
  EXPECT_TRUE(in_cone(vec({0, 0, 0}), {}, 3));
  EXPECT_FALSE(in_cone(vec({1, 0, 0}), {}, 3));
}

TEST(Geometry, OriginInRelativeInterior) {
  auto centered = square(-1, 1, -1, 1);
  EXPECT_TRUE(origin_in_relint(centered, centered.find_face({0, 1, 2, 3})));
  EXPECT_FALSE(origin_in_relint(centered, centered.find_face({0, 1})));
  EXPECT_FALSE(origin_in_relint(centered, centered.find_face({0})));
  auto on_edge = square(-1, 1, 0, 1);
  EXPECT_TRUE(origin_in_relint(on_edge, on_edge.find_face({0, 1})));
  EXPECT_FALSE(origin_in_relint(on_edge, on_edge.find_face({0, 1, 2, 3})));
  auto corner = square(0, 1, 0, 1);
  EXPECT_TRUE(origin_in_relint(corner, corner.find_face({0})));
  EXPECT_FALSE(origin_in_relint(corner, corner.find_face({0, 1})));
  EXPECT_EQ(code_of([&] { polytope_cone_triple(corner, corner.find_face({1})); }), ErrorCode::InvalidInput);
}

TEST(Geometry, PolytopeConeTripleShapes) {
  auto centered = square(-1, 1, -1, 1);
  auto all = polytope_cone_triple(centered, centered.find_face({0, 1, 2, 3}));
  EXPECT_EQ(all.triple.Y().size(), 1u);
  EXPECT_EQ(all.geometry.target.dim, 0);

  auto on_edge = square(-1, 1, 0, 1);
  auto facet = polytope_cone_triple(on_edge, on_edge.find_face({0, 1}));
  EXPECT_EQ(facet.triple.Y().size(), 2u);
  EXPECT_EQ(facet.geometry.target.dim, 1);

  // a vertex at the origin: the two far edges subdivide the segment through the other two vertices
  auto corner = square(0, 1, 0, 1);
  auto vert = polytope_cone_triple(corner, corner.find_face({0}));
  EXPECT_EQ(vert.triple.X().size(), 6u);
  auto r = natural_weak_rank(vert.triple);
  auto li = local_invariants(vert.triple, r, eulerian_kernel(r));
  const int bottom = vert.triple.gamma().minimum().value(), top = vert.triple.gamma().maximum().value();
  EXPECT_EQ(li.ell(bottom, top), (Poly{0, 1}));
}

TEST(Geometry, CylinderRestrictsToFanKernels) {
  auto on_edge = square(-1, 1, 0, 1);
  auto t = polytope_cone_triple(on_edge, on_edge.find_face({0, 1}));
  const Matrix flip = mat({{-1, 0}, {0, 1}});
  auto group = polytope_cone_group(t, {flip});
  ASSERT_EQ(group->order(), 2);
  auto kappa = cylinder_kernel(t.geometry, group);
  const auto& g = t.geometry;
  const int nx = static_cast<int>(g.source.cones.size());
  auto src = fan_kernel(g.source, fan_group(g.source, {flip}));
  for (int s = 0; s < g.source.face_poset.num_intervals(); ++s) {
    auto [a, b] = g.source.face_poset.interval(s);
    for (int w = 0; w < group->order(); ++w)
      if (kappa.carrier()->stab(a, b)->contains(w)) EXPECT_EQ(kappa(a, b).ev(w), src(a, b).ev(w));
  }
  for (int s = 0; s < g.target.face_poset.num_intervals(); ++s) {
    auto [a, b] = g.target.face_poset.interval(s);
    for (int w = 0; w < group->order(); ++w)
      if (kappa.carrier()->stab(nx + a, nx + b)->contains(w))
        EXPECT_EQ(kappa(nx + a, nx + b).ev(w), quotient_charpoly(group->matrix(1, w), g.target.generators(a), g.target.generators(b), g.target.dim));
  }
}

// The cone over P x {1} with the trivial extension of the action gives the same kernel as the cylinder.
TEST(GeometryProperty, PolytopeKernelsAgree) {
  struct Case {
    Polytope p;
    std::vector<int> face;
    std::vector<Matrix> gens;
  };
  std::vector<Case> cases{
      {square(-1, 1, -1, 1), {0, 1, 2, 3}, {kRot90, kSwap}},
      {square(-1, 1, 0, 1), {0, 1}, {mat({{-1, 0}, {0, 1}})}},
      {square(0, 1, 0, 1), {0}, {kSwap}},
      {square(-2, 1, -1, 1), {0, 1, 2, 3}, {mat({{1, 0}, {0, -1}})}},
  };
  for (const auto& c : cases) {
    const int F = c.p.find_face(c.face);
    auto t = polytope_cone_triple(c.p, F);
    auto cyl_group = polytope_cone_group(t, c.gens);
    auto cyl = cylinder_kernel(t.geometry, cyl_group);
    std::vector<Matrix> affine;
    for (const auto& m : c.gens) affine.push_back(affine_from_linear(m));
    auto cone = cone_over(c.p);
    auto cone_group = polytope_group(c.p, affine);
    ASSERT_EQ(cone_group->order(), cyl_group->order());
    auto fan = fan_kernel(cone, cone_group);
    const Poset& gamma = t.geometry.triple.gamma();
    for (int w = 0; w < cyl_group->order(); ++w) {
      const int u = cone_group->find([&] {
        Perm p(static_cast<size_t>(c.p.face_lattice.size()));
        for (int z = 0; z < gamma.size(); ++z)
          p[static_cast<size_t>(t.gamma_to_face[static_cast<size_t>(z)])] = t.gamma_to_face[static_cast<size_t>(cyl_group->act(w, z))];
        return p;
      }());
      ASSERT_GE(u, 0);
      EXPECT_EQ(cone_group->matrix(0, u), affine_from_linear(cyl_group->matrix(0, w)));
      for (int s = 0; s < gamma.num_intervals(); ++s) {
        auto [a, b] = gamma.interval(s);
        if (!cyl.carrier()->stab(a, b)->contains(w)) continue;
        EXPECT_EQ(cyl(a, b).ev(w), fan(t.gamma_to_face[static_cast<size_t>(a)], t.gamma_to_face[static_cast<size_t>(b)]).ev(u));
      }
    }
  }
}

// For every w the fixed parts form a strong formal subdivision with ranks from the fixed dimensions.
TEST(GeometryProperty, FixedCylinderIsSubdivision) {
  auto centered = square(-1, 1, -1, 1);
  auto on_edge = square(-1, 1, 0, 1);
  std::vector<std::pair<PolytopeConeTriple, std::vector<Matrix>>> cases{
      {polytope_cone_triple(centered, centered.find_face({0, 1, 2, 3})), {kRot90, kSwap}},
      {polytope_cone_triple(on_edge, on_edge.find_face({0, 1})), {mat({{-1, 0}, {0, 1}})}},
  };
  for (const auto& [t, gens] : cases) {
    auto group = polytope_cone_group(t, gens);
    const auto& g = t.geometry;
    const int nx = static_cast<int>(g.source.cones.size());
    for (int w = 0; w < group->order(); ++w) {
      StrongFormalSubdivision s;
      Subposet xs = fixed_subposet(g.source.face_poset, std::vector<int>(group->perm(w).begin(), group->perm(w).begin() + nx));
      Perm py;
      for (size_t y = 0; y < g.target.cones.size(); ++y) py.push_back(group->act(w, nx + static_cast<int>(y)) - nx);
      Subposet ys = fixed_subposet(g.target.face_poset, py);
      std::vector<int> rx, ry;
      for (int x : xs.to_parent) rx.push_back(fixed_dim(group->matrix(0, w), {}, g.spans[static_cast<size_t>(x)], g.source.dim));
      for (int y : ys.to_parent) ry.push_back(fixed_dim(group->matrix(0, w), {}, g.spans[static_cast<size_t>(nx + y)], g.source.dim));
      s.X = xs.poset.with_rank(rx);
      s.Y = ys.poset.with_rank(ry);
      for (int x : xs.to_parent) s.sigma.push_back(ys.from_parent[static_cast<size_t>(g.sigma[static_cast<size_t>(x)])]);
      auto check = validate_sfs(s);
      EXPECT_TRUE(check.ok) << check.condition;
    }
  }
}
