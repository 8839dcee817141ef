#pragma once

#include <ostream>
#include <random>
#include <vector>

#include "kls/equivariant.hpp"

namespace kls::testing {

/// Permutation of the faces of polygon(k) induced by a permutation of its vertices.
inline Perm polygon_perm(int k, const std::vector<int>& vmap) {
  Perm p(static_cast<size_t>(2 * k + 2));
  p[0] = 0;
  p[static_cast<size_t>(2 * k + 1)] = 2 * k + 1;
  for (int i = 0; i < k; ++i) {
    p[static_cast<size_t>(1 + i)] = 1 + vmap[static_cast<size_t>(i)];
    const int a = vmap[static_cast<size_t>(i)], b = vmap[static_cast<size_t>((i + 1) % k)];
    const int j = (b - a + k) % k == 1 ? a : b;
    p[static_cast<size_t>(1 + k + i)] = 1 + k + j;
  }
  return p;
}

inline Perm polygon_rotation(int k) {
  std::vector<int> v;
  for (int i = 0; i < k; ++i) v.push_back((i + 1) % k);
  return polygon_perm(k, v);
}

/// Reflection fixing vertex 0.
inline Perm polygon_reflection(int k) {
  std::vector<int> v;
  for (int i = 0; i < k; ++i) v.push_back((k - i) % k);
  return polygon_perm(k, v);
}

/// Permutation of the subsets of {0..n-1} (as bitmasks) induced by a permutation of the atoms.
inline Perm boolean_perm(int n, const std::vector<int>& atoms) {
  Perm p(static_cast<size_t>(1) << n);
  for (int m = 0; m < (1 << n); ++m) {
    int img = 0;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) img |= 1 << atoms[static_cast<size_t>(i)];
    p[static_cast<size_t>(m)] = img;
  }
  return p;
}

/// Cyclic permutation of n atoms with the given cycle lengths.
inline std::vector<int> cycle_type_perm(const std::vector<int>& cycles) {
  std::vector<int> out;
  int start = 0;
  for (int m : cycles) {
    for (int i = 0; i < m; ++i) out.push_back(start + (i + 1) % m);
    start += m;
  }
  return out;
}

/// ev_u kappa(z, z') = product over u-orbits on z' \ z of (t^m - 1): the cone over a simplex.
inline EquivElement permutation_kernel(EquivCarrierPtr c) {
  const Group& g = c->group();
  return EquivElement::from_function(c, [&](int z, int zp, int u) {
    Poly out = Poly::constant(1);
    const int diff = zp & ~z;
    std::vector<uint8_t> seen(32, 0);
    for (int i = 0; i < 31; ++i) {
      if (!(diff >> i & 1) || seen[static_cast<size_t>(i)]) continue;
      int m = 0;
      // atoms are the singletons 1 << i
      for (int j = i; !seen[static_cast<size_t>(j)]; j = __builtin_ctz(static_cast<unsigned>(g.act(u, 1 << j)))) {
        seen[static_cast<size_t>(j)] = 1;
        ++m;
      }
      out = out * (Poly::monomial(1, m) - Poly::constant(1));
    }
    return out;
  });
}

/// Random element satisfying the conjugation condition, with degrees bounded by the weak rank.
inline EquivElement random_equiv_element(EquivCarrierPtr c, std::mt19937& rng, int max_abs = 3) {
  const Group& g = c->group();
  const Poset& b = c->poset();
  const WeakRank& r = *c->weak_rank();
  std::uniform_int_distribution<int> coef(-max_abs, max_abs);
  EquivElement out(c);
  std::vector<uint8_t> done(static_cast<size_t>(b.num_intervals()), 0);
  for (int s = 0; s < b.num_intervals(); ++s) {
    if (done[static_cast<size_t>(s)]) continue;
    auto [z, zp] = b.interval(s);
    const int deg = static_cast<int>(rng() % static_cast<unsigned>(r.at_slot(s) + 1));
    auto base = ClassPoly::from_function(c->stab(s), [&](int) {
      std::vector<Rational> v;
      for (int i = 0; i <= deg; ++i) v.emplace_back(coef(rng));
      return Poly(v);
    });
    for (int x = 0; x < g.order(); ++x) {
      const int t = b.slot(g.act(x, z), g.act(x, zp));
      if (done[static_cast<size_t>(t)]) continue;
      const int xi = g.inv(x);
      out.set_slot(t, ClassPoly::from_function(c->stab(t), [&](int u) { return base.ev(g.conj(xi, u)); }));
      done[static_cast<size_t>(t)] = 1;
    }
  }
  return out;
}

}  // namespace kls::testing

namespace kls {
inline void PrintTo(const Poly& p, std::ostream* os) { *os << p.to_text(); }
inline void PrintTo(const ClassPoly& p, std::ostream* os) { *os << p.to_text(); }
}  // namespace kls
