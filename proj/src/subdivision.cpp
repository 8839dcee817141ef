#include "kls/subdivision.hpp"

#include <algorithm>

#include "kls/error.hpp"

namespace kls {

namespace {

std::string pair_name(const Poset& a, int x, const Poset& b, int y) { return "(" + a.label(x) + ", " + b.label(y) + ")"; }

}  // namespace

SfsCheck validate_sfs(const StrongFormalSubdivision& s) {
  const Poset& X = s.X;
  const Poset& Y = s.Y;
  if (static_cast<int>(s.sigma.size()) != X.size()) return {false, "map-size", {-1, -1}};
  for (int y : s.sigma)
    if (y < 0 || y >= Y.size()) return {false, "map-range", {-1, y}};
  if (!X.rank() || !Y.rank()) return {false, "rank-missing", {-1, -1}};
  if (!is_lower_eulerian(X).ok) return {false, "X-lower-eulerian", {-1, -1}};
  if (!is_lower_eulerian(Y).ok) return {false, "Y-lower-eulerian", {-1, -1}};
  const auto& rx = *X.rank();
  const auto& ry = *Y.rank();
  auto sig = [&](int x) { return s.sigma[static_cast<size_t>(x)]; };
  for (int x = 0; x < X.size(); ++x)
    for (int xp : X.up(x))
      if (!Y.leq(sig(x), sig(xp))) return {false, "order-preserving", {x, xp}};
  for (int x = 0; x < X.size(); ++x)
    if (rx[static_cast<size_t>(x)] > ry[static_cast<size_t>(sig(x))]) return {false, "rank-increasing", {x, sig(x)}};
  std::vector<uint8_t> hit(static_cast<size_t>(Y.size()), 0);
  for (int x = 0; x < X.size(); ++x) hit[static_cast<size_t>(sig(x))] = 1;
  for (int y = 0; y < Y.size(); ++y)
    if (!hit[static_cast<size_t>(y)]) return {false, "strongly-surjective", {-1, y}};
  for (int x = 0; x < X.size(); ++x) {
    for (int y : Y.up(sig(x))) {
      bool found = false;
      int sum = 0;
      for (int xp : X.up(x)) {
        if (sig(xp) != y) continue;
        if (rx[static_cast<size_t>(xp)] == ry[static_cast<size_t>(y)]) found = true;
        sum += (ry[static_cast<size_t>(y)] - rx[static_cast<size_t>(xp)]) % 2 == 0 ? 1 : -1;
      }
      if (!found) return {false, "strongly-surjective", {x, y}};
      if (sum != 1) return {false, "signed-count", {x, y}};
    }
  }
  return {};
}

SubdivisionTriple::SubdivisionTriple(const Poset& gamma, std::vector<int> rho, int q) : q_(q) {
  if (q < 0 || q >= gamma.size()) fail(ErrorCode::InvalidSubdivision, "q out of range");
  auto g = std::make_shared<Poset>(gamma.with_rank(std::move(rho)));
  auto rc = validate_rank(*g);
  if (!rc.ok) fail(ErrorCode::InvalidSubdivision, "rho is not a rank function at cover " + pair_name(*g, rc.violation.first, *g, rc.violation.second));
  auto le = is_lower_eulerian(*g);
  if (!le.ok) fail(ErrorCode::NotLowerEulerian, "Gamma is not lower Eulerian: " + le.reason);
  if (g->minimum() == q) fail(ErrorCode::InvalidSubdivision, "q is the minimum of Gamma");
  gamma_ = g;
  sigma_.resize(static_cast<size_t>(g->size()));
  for (int z = 0; z < g->size(); ++z) {
    auto j = join(*g, z, q);
    if (!j) fail(ErrorCode::InvalidSubdivision, "join of " + g->label(z) + " and q does not exist");
    sigma_[static_cast<size_t>(z)] = *j;
    (in_Y(z) ? y_ : x_).push_back(z);
  }
}

SubdivisionTriple mapping_cylinder(const StrongFormalSubdivision& s) {
  auto check = validate_sfs(s);
  if (!check.ok) fail(ErrorCode::InvalidSubdivision, "not a strong formal subdivision: " + check.condition);
  const int nx = s.X.size(), ny = s.Y.size(), n = nx + ny;
  std::vector<std::string> labels = s.X.labels();
  for (const auto& l : s.Y.labels()) labels.push_back(l);
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < nx; ++a) {
    for (int b = 0; b < nx; ++b) leq[static_cast<size_t>(a) * n + b] = s.X.leq(a, b);
    for (int y = 0; y < ny; ++y) leq[static_cast<size_t>(a) * n + nx + y] = s.Y.leq(s.sigma[static_cast<size_t>(a)], y);
  }
  for (int a = 0; a < ny; ++a)
    for (int b = 0; b < ny; ++b) leq[static_cast<size_t>(nx + a) * n + nx + b] = s.Y.leq(a, b);
  std::vector<int> rho = *s.X.rank();
  for (int r : *s.Y.rank()) rho.push_back(r + 1);
  Poset gamma(std::move(labels), std::move(leq));
  return SubdivisionTriple(gamma, std::move(rho), nx + *s.Y.minimum());
}

SplitTriple triple_to_sfs(const SubdivisionTriple& t) {
  const Poset& g = t.gamma();
  auto xs = induced_subposet(g, t.X());
  auto ys = induced_subposet(g, t.Y());
  std::vector<int> ry = *ys.poset.rank();
  for (auto& r : ry) r -= 1;
  SplitTriple out;
  out.sfs.X = xs.poset;
  out.sfs.Y = ys.poset.with_rank(ry);
  for (int x : t.X()) out.sfs.sigma.push_back(ys.from_parent[static_cast<size_t>(t.sigma(x))]);
  out.x_to_gamma = t.X();
  out.y_to_gamma = t.Y();
  return out;
}

WeakRankPtr restrict_weak_rank(const WeakRank& r, const Subposet& sub) {
  auto poset = std::make_shared<const Poset>(sub.poset);
  std::vector<int> values(static_cast<size_t>(poset->num_intervals()));
  for (int s = 0; s < poset->num_intervals(); ++s) {
    auto [a, b] = poset->interval(s);
    values[static_cast<size_t>(s)] = r(sub.to_parent[static_cast<size_t>(a)], sub.to_parent[static_cast<size_t>(b)]);
  }
  return std::make_shared<const WeakRank>(poset, std::move(values));
}

IncidenceElement restrict_element(const IncidenceElement& p, const Subposet& sub, WeakRankPtr sub_carrier) {
  return IncidenceElement::from_function(sub_carrier, [&](int a, int b) {
    return p(sub.to_parent[static_cast<size_t>(a)], sub.to_parent[static_cast<size_t>(b)]);
  });
}

IncidenceElement embed_element(const IncidenceElement& p, const Subposet& sub, WeakRankPtr carrier) {
  IncidenceElement out(carrier);
  for (int s = 0; s < p.poset().num_intervals(); ++s) {
    auto [a, b] = p.poset().interval(s);
    out.set(sub.to_parent[static_cast<size_t>(a)], sub.to_parent[static_cast<size_t>(b)], p.at_slot(s));
  }
  return out;
}

namespace {

void require_matching(const SubdivisionTriple& t, const WeakRank& r, const IncidenceElement& kappa) {
  if (!(r.poset().size() == t.gamma().size()) || !same_carrier(r, kappa.weak_rank()))
    fail(ErrorCode::MismatchedCarrier, "kernel and weak rank do not live on Gamma");
  for (int a = 0; a < t.gamma().size(); ++a)
    for (int b = 0; b < t.gamma().size(); ++b)
      if (r.poset().leq(a, b) != t.gamma().leq(a, b)) fail(ErrorCode::MismatchedCarrier, "weak rank poset differs from Gamma");
  if (!is_multiplicative(kappa)) fail(ErrorCode::InvalidInput, "kernel is not multiplicative");
  if (!is_rank_alternating(kappa)) fail(ErrorCode::InvalidInput, "kernel is not rank alternating");
}

struct Sides {
  Subposet xs, ys;
  WeakRankPtr rx, ry;
  IncidenceElement kx, ky;
};

Sides split(const SubdivisionTriple& t, const WeakRank& r, const IncidenceElement& kappa) {
  auto xs = induced_subposet(t.gamma(), t.X());
  auto ys = induced_subposet(t.gamma(), t.Y());
  auto rx = restrict_weak_rank(r, xs);
  auto ry = restrict_weak_rank(r, ys);
  auto kx = restrict_element(kappa, xs, rx);
  auto ky = restrict_element(kappa, ys, ry);
  return {xs, ys, rx, ry, kx, ky};
}

}  // namespace

LocalInvariants local_invariants(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa) {
  require_matching(t, *r, kappa);
  const Poset& g_poset = kappa.poset();
  auto g = solve_g(kappa);
  auto k0 = mask(kappa, [&](int z, int zp) { return t.in_X(z) && zp == t.sigma(z); });
  auto prod = g * k0;
  IncidenceElement h(kappa.carrier());
  for (int s = 0; s < g_poset.num_intervals(); ++s) {
    auto [z, zp] = g_poset.interval(s);
    if (!t.is_XY(z, zp)) continue;
    try {
      h.set_slot(s, poly_div_t_minus_1(prod.at_slot(s)));
    } catch (const Error& e) {
      fail(e.code(), std::string(e.what()) + " on [" + g_poset.label(z) + ", " + g_poset.label(zp) + "]");
    }
  }
  auto ell = h * invert(g);
  auto d = delta_op(ell);
  return {std::move(h), std::move(ell), std::move(d)};
}

LocalInvariants local_invariants_expanded(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa) {
  require_matching(t, *r, kappa);
  auto sd = split(t, *r, kappa);
  auto gx = solve_g(sd.kx);
  auto gy_inv = invert(solve_g(sd.ky));
  const Poset& G = t.gamma();
  IncidenceElement h(kappa.carrier()), ell(kappa.carrier());
  for (int x : t.X()) {
    const int xi = sd.xs.from_parent[static_cast<size_t>(x)];
    for (int y : G.up(t.sigma(x))) {
      Poly sum;
      for (int xp : G.up(x)) {
        if (!t.in_X(xp) || t.sigma(xp) != y) continue;
        sum += gx(xi, sd.xs.from_parent[static_cast<size_t>(xp)]) * kappa(xp, y);
      }
      h.set(x, y, poly_div_t_minus_1(sum));
    }
    for (int y : G.up(t.sigma(x))) {
      Poly sum;
      const int yi = sd.ys.from_parent[static_cast<size_t>(y)];
      for (int yp : G.up(t.sigma(x)))
        if (G.leq(yp, y)) sum += h(x, yp) * gy_inv(sd.ys.from_parent[static_cast<size_t>(yp)], yi);
      ell.set(x, y, sum);
    }
  }
  auto d = delta_op(ell);
  return {std::move(h), std::move(ell), std::move(d)};
}

Check compare(const IncidenceElement& lhs, const IncidenceElement& rhs, const std::string& what) {
  auto d = first_difference(lhs, rhs);
  if (d.first >= 0) return {false, what, d};
  return {true, what, {-1, -1}};
}

Check check_theorem_g(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa) {
  auto lhs = mask(solve_g(kappa), [&](int z, int zp) { return t.is_XY(z, zp); });
  auto li = local_invariants_expanded(t, r, kappa);
  auto sd = split(t, *r, kappa);
  auto gy = embed_element(solve_g(sd.ky), sd.ys, kappa.carrier());
  return compare(lhs, li.delta_ell * gy, "g|X/Y = Delta ell * g");
}

Check check_corollary_f(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa) {
  auto lhs = mask(solve_f(kappa), [&](int z, int zp) { return t.is_XY(z, zp); });
  auto li = local_invariants_expanded(t, r, kappa);
  auto sd = split(t, *r, kappa);
  auto fx = embed_element(solve_f(sd.kx), sd.xs, kappa.carrier());
  return compare(lhs, -(fx * hat(li.delta_ell)), "f|X/Y = -f * hat(Delta ell)");
}

Check check_corollary_z(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa) {
  auto lhs = mask(z_function(kappa), [&](int z, int zp) { return t.is_XY(z, zp); });
  auto li = local_invariants_expanded(t, r, kappa);
  auto sd = split(t, *r, kappa);
  auto zx = embed_element(z_function(sd.kx), sd.xs, kappa.carrier());
  auto zy = embed_element(z_function(sd.ky), sd.ys, kappa.carrier());
  auto rhs = -(zx * hat(li.delta_ell)) + rev(li.delta_ell) * zy;
  return compare(lhs, rhs, "Z|X/Y = -Z|X hat(Delta ell) + Delta ell^rev Z|Y");
}

Check check_remark_delta_ell(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa) {
  auto li = local_invariants(t, r, kappa);
  auto g = solve_g(kappa);
  auto f = solve_f(kappa);
  auto rhs = mask(g, [&](int z, int zp) { return t.is_XY(z, zp); }) * hat(f);
  return compare(li.delta_ell, rhs, "Delta ell = g|X/Y * hat(f)");
}

Check check_local_properties(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa) {
  auto li = local_invariants(t, r, kappa);
  auto le = local_invariants_expanded(t, r, kappa);
  for (auto c : {compare(li.h, le.h, "h literal vs expanded"), compare(li.ell, le.ell, "ell literal vs expanded"),
                 compare(li.delta_ell, le.delta_ell, "Delta ell literal vs expanded")})
    if (!c.ok) return c;
  auto g = solve_g(kappa);
  const Poset& G = t.gamma();
  const Poly t1{-1, 1};
  for (int s = 0; s < G.num_intervals(); ++s) {
    auto [x, y] = G.interval(s);
    const Poly& h = li.h.at_slot(s);
    const Poly& l = li.ell.at_slot(s);
    const Poly& d = li.delta_ell.at_slot(s);
    if (!t.is_XY(x, y)) {
      if (!h.is_zero() || !l.is_zero() || !d.is_zero()) return {false, "local invariants vanish off X/Y", {x, y}};
      continue;
    }
    const int rr = r->at_slot(s);
    if (h.degree() > rr - 1 || l.degree() > rr - 1) return {false, "degree bound r - 1", {x, y}};
    if (poly_rev(l, rr - 1) != l) return {false, "ell symmetric at rank r - 1", {x, y}};
    if (poly_rev(d, rr) - d != t1 * l) return {false, "Delta ell^rev - Delta ell = (t - 1) ell", {x, y}};
    if (delta_inverse(d, rr) != l) return {false, "ell recovered from Delta ell", {x, y}};
    const Rational top = kappa(x, y).coeff(rr);
    if (h.coeff(0) != top) return {false, "h_0 = top coefficient of kappa", {x, y}};
    if (y == t.sigma(x)) {
      if (h != l) return {false, "h(x, sx) = ell(x, sx)", {x, y}};
      if (d != g(x, y)) return {false, "Delta ell(x, sx) = g(x, sx)", {x, y}};
      if (l.coeff(0) != top) return {false, "ell_0 = top coefficient of kappa", {x, y}};
    } else if (l.coeff(0) != 0) {
      return {false, "ell_0 = 0 off sigma", {x, y}};
    }
  }
  return {true, "local properties", {-1, -1}};
}

WeakRankPtr natural_weak_rank(const SubdivisionTriple& t) { return WeakRank::natural(t.gamma_ptr(), t.rho()); }

Poly relative_g_recursion(const Poset& face_lattice, int F) {
  auto le = is_eulerian(face_lattice);
  if (!le.ok) fail(ErrorCode::NotLowerEulerian, "face lattice is not Eulerian: " + le.reason);
  const int bottom = *face_lattice.minimum();
  const int Q = *face_lattice.maximum();
  if (F == bottom) fail(ErrorCode::InvalidInput, "relative g needs a nonempty face");
  auto carrier = WeakRank::natural(std::make_shared<const Poset>(face_lattice));
  auto g = solve_g(eulerian_kernel(carrier));
  std::vector<Poly> rel(static_cast<size_t>(face_lattice.size()));
  for (int E : face_lattice.linear_extension()) {
    if (!face_lattice.leq(F, E)) continue;
    Poly v = g(bottom, E);
    for (int Ep : face_lattice.up(F))
      if (Ep != E && face_lattice.leq(Ep, E)) v -= rel[static_cast<size_t>(Ep)] * g(Ep, E);
    rel[static_cast<size_t>(E)] = v;
  }
  return rel[static_cast<size_t>(Q)];
}

Poly relative_g(const Poset& face_lattice, int F) {
  Poly rec = relative_g_recursion(face_lattice, F);
  SubdivisionTriple t(face_lattice, rank_or_natural(face_lattice), F);
  auto r = natural_weak_rank(t);
  auto li = local_invariants(t, r, eulerian_kernel(r));
  const Poly& d = li.delta_ell(*face_lattice.minimum(), *face_lattice.maximum());
  if (d != rec)
    fail(ErrorCode::VerificationFailed, "relative g " + rec.to_text() + " differs from Delta ell " + d.to_text());
  return rec;
}

StrongFormalSubdivision product_sfs(const StrongFormalSubdivision& a, const StrongFormalSubdivision& b) {
  StrongFormalSubdivision p;
  p.X = direct_product(a.X, b.X);
  p.Y = direct_product(a.Y, b.Y);
  const int nyb = b.Y.size();
  for (int i = 0; i < a.X.size(); ++i)
    for (int j = 0; j < b.X.size(); ++j)
      p.sigma.push_back(a.sigma[static_cast<size_t>(i)] * nyb + b.sigma[static_cast<size_t>(j)]);
  return p;
}

StrongFormalSubdivision identity_sfs(const Poset& b) {
  StrongFormalSubdivision s{b, b, {}};
  for (int i = 0; i < b.size(); ++i) s.sigma.push_back(i);
  return s;
}

StrongFormalSubdivision compose_sfs(const StrongFormalSubdivision& sigma, const StrongFormalSubdivision& tau) {
  if (sigma.Y.size() != tau.X.size()) fail(ErrorCode::InvalidSubdivision, "maps do not compose");
  StrongFormalSubdivision c{sigma.X, tau.Y, {}};
  for (int y : sigma.sigma) c.sigma.push_back(tau.sigma[static_cast<size_t>(y)]);
  return c;
}

namespace {

struct CylData {
  SubdivisionTriple t;
  WeakRankPtr r;
  IncidenceElement kappa;
  LocalInvariants li;
};

CylData cylinder_data(const StrongFormalSubdivision& s) {
  auto t = mapping_cylinder(s);
  auto r = natural_weak_rank(t);
  auto k = eulerian_kernel(r);
  auto li = local_invariants(t, r, k);
  return {std::move(t), r, std::move(k), std::move(li)};
}

}  // namespace

Check check_product_sfs(const StrongFormalSubdivision& a, const StrongFormalSubdivision& b) {
  auto p = product_sfs(a, b);
  auto ca = cylinder_data(a), cb = cylinder_data(b), cp = cylinder_data(p);
  const int nxa = a.X.size(), nxb = b.X.size(), nyb = b.Y.size();
  const int nxp = p.X.size();
  auto gp = solve_g(cp.kappa);
  auto ga = solve_g(ca.kappa), gb = solve_g(cb.kappa);
  for (int x = 0; x < nxa; ++x)
    for (int xp = 0; xp < nxb; ++xp)
      for (int y : a.Y.up(a.sigma[static_cast<size_t>(x)]))
        for (int yp : b.Y.up(b.sigma[static_cast<size_t>(xp)])) {
          const int px = x * nxb + xp, py = nxp + y * nyb + yp;
          Poly rhs = ca.li.ell(x, nxa + y) * cb.li.ell(xp, nxb + yp);
          if (cp.li.ell(px, py) != rhs) return {false, "ell of product = product of ells", {px, py}};
          Poly g_sum;
          for (int ty : a.Y.up(a.sigma[static_cast<size_t>(x)]))
            for (int typ : b.Y.up(b.sigma[static_cast<size_t>(xp)]))
              if (a.Y.leq(ty, y) && b.Y.leq(typ, yp))
                g_sum += cp.li.delta_ell(px, nxp + ty * nyb + typ) * ga(nxa + ty, nxa + y) * gb(nxb + typ, nxb + yp);
          if (gp(px, py) != g_sum) return {false, "g of product cylinder via Delta ell", {px, py}};
        }
  return {true, "product laws", {-1, -1}};
}

Check check_identity_product(const Poset& B, const StrongFormalSubdivision& s) {
  auto p = product_sfs(identity_sfs(B), s);
  auto cs = cylinder_data(s), cp = cylinder_data(p);
  auto gb = solve_g(eulerian_kernel(WeakRank::natural(std::make_shared<const Poset>(B))));
  const int nx = s.X.size(), ny = s.Y.size(), nb = B.size(), nxp = p.X.size();
  for (int b1 = 0; b1 < nb; ++b1)
    for (int b2 : B.up(b1))
      for (int x = 0; x < nx; ++x)
        for (int y : s.Y.up(s.sigma[static_cast<size_t>(x)])) {
          const int px = b1 * nx + x, py = nxp + b2 * ny + y;
          const Poly d = b1 == b2 ? Poly::constant(1) : Poly();
          if (cp.li.h(px, py) != gb(b1, b2) * cs.li.h(x, nx + y)) return {false, "h of id x sigma = g_B x h", {px, py}};
          if (cp.li.ell(px, py) != d * cs.li.ell(x, nx + y)) return {false, "ell of id x sigma = delta x ell", {px, py}};
          if (cp.li.delta_ell(px, py) != d * cs.li.delta_ell(x, nx + y))
            return {false, "Delta ell of id x sigma = delta x Delta ell", {px, py}};
        }
  return {true, "identity factor", {-1, -1}};
}

Check check_composition(const StrongFormalSubdivision& sigma, const StrongFormalSubdivision& tau) {
  auto comp = compose_sfs(sigma, tau);
  auto cs = cylinder_data(sigma), ct = cylinder_data(tau), cc = cylinder_data(comp);
  const int nx = sigma.X.size(), ny = sigma.Y.size();
  for (int x = 0; x < nx; ++x)
    for (int z : comp.Y.up(comp.sigma[static_cast<size_t>(x)])) {
      Poly sum;
      for (int y : sigma.Y.up(sigma.sigma[static_cast<size_t>(x)]))
        if (tau.Y.leq(tau.sigma[static_cast<size_t>(y)], z)) sum += cs.li.ell(x, nx + y) * ct.li.ell(y, ny + z);
      if (cc.li.ell(x, nx + z) != sum) return {false, "ell of composition", {x, nx + z}};
    }
  return {true, "composition", {-1, -1}};
}

StrongFormalSubdivision segment_refinement(const std::vector<Rational>& fine, const std::vector<Rational>& coarse) {
  auto points = [](const std::vector<Rational>& cuts) {
    std::vector<Rational> p{Rational(0)};
    p.insert(p.end(), cuts.begin(), cuts.end());
    p.push_back(Rational(1));
    for (size_t i = 1; i < p.size(); ++i)
      if (!(p[i - 1] < p[i])) fail(ErrorCode::InvalidInput, "cut points must increase inside (0,1)");
    return p;
  };
  auto pf = points(fine), pc = points(coarse);
  const int sf = static_cast<int>(fine.size()), sc = static_cast<int>(coarse.size());
  Poset X = segment_subdivision(sf), Y = segment_subdivision(sc);
  auto vertex = [](int i) { return 1 + i; };
  auto edge = [](int s, int i) { return 1 + (s + 2) + i; };
  // coarse face whose relative interior contains the open piece or point
  auto locate = [&](const Rational& a, const Rational& b) {
    for (int i = 0; i < static_cast<int>(pc.size()); ++i)
      if (a == b && pc[static_cast<size_t>(i)] == a) return vertex(i);
    for (int i = 0; i + 1 < static_cast<int>(pc.size()); ++i)
      if (pc[static_cast<size_t>(i)] <= a && b <= pc[static_cast<size_t>(i) + 1]) return edge(sc, i);
    fail(ErrorCode::InvalidInput, "fine cut points do not refine the coarse ones");
  };
  std::vector<int> sigma(static_cast<size_t>(X.size()));
  sigma[0] = 0;
  for (int i = 0; i < static_cast<int>(pf.size()); ++i) sigma[static_cast<size_t>(vertex(i))] = locate(pf[static_cast<size_t>(i)], pf[static_cast<size_t>(i)]);
  for (int i = 0; i + 1 < static_cast<int>(pf.size()); ++i)
    sigma[static_cast<size_t>(edge(sf, i))] = locate(pf[static_cast<size_t>(i)], pf[static_cast<size_t>(i) + 1]);
  StrongFormalSubdivision s{X, Y, sigma};
  auto c = validate_sfs(s);
  if (!c.ok) fail(ErrorCode::InvalidSubdivision, "segment refinement failed " + c.condition);
  return s;
}

}  // namespace kls
