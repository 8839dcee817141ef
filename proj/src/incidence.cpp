#include "kls/incidence.hpp"

#include <algorithm>

#include "kls/error.hpp"

namespace kls {

namespace {

std::string interval_name(const Poset& p, int z, int zp) { return "[" + p.label(z) + ", " + p.label(zp) + "]"; }

// up(z) sorted along the linear extension, so every z'' < z' comes before z'.
std::vector<int> up_in_order(const Poset& p, int z, const std::vector<int>& pos) {
  std::vector<int> v = p.up(z);
  std::sort(v.begin(), v.end(), [&](int a, int b) { return pos[static_cast<size_t>(a)] < pos[static_cast<size_t>(b)]; });
  return v;
}

std::vector<int> down_in_reverse_order(const Poset& p, int z, const std::vector<int>& pos) {
  std::vector<int> v = p.down(z);
  std::sort(v.begin(), v.end(), [&](int a, int b) { return pos[static_cast<size_t>(a)] > pos[static_cast<size_t>(b)]; });
  return v;
}

std::vector<int> linext_positions(const Poset& p) {
  std::vector<int> pos(static_cast<size_t>(p.size()));
  const auto& le = p.linear_extension();
  for (size_t i = 0; i < le.size(); ++i) pos[static_cast<size_t>(le[i])] = static_cast<int>(i);
  return pos;
}

}  // namespace

WeakRank::WeakRank(PosetPtr poset, std::vector<int> values) : poset_(std::move(poset)), values_(std::move(values)) {
  const Poset& p = *poset_;
  if (static_cast<int>(values_.size()) != p.num_intervals()) fail(ErrorCode::InvalidInput, "weak rank has wrong length");
  for (int s = 0; s < p.num_intervals(); ++s) {
    auto [z, zp] = p.interval(s);
    int v = values_[static_cast<size_t>(s)];
    if (z == zp ? v != 0 : v <= 0) fail(ErrorCode::InvalidInput, "weak rank not positive on " + interval_name(p, z, zp));
  }
  for (int z = 0; z < p.size(); ++z)
    for (int m : p.up(z))
      for (int zp : p.up(m))
        if ((*this)(z, zp) != (*this)(z, m) + (*this)(m, zp))
          fail(ErrorCode::InvalidInput, "weak rank not additive on " + interval_name(p, z, zp));
}

WeakRankPtr WeakRank::natural(PosetPtr poset, const std::vector<int>& rank) {
  const Poset& p = *poset;
  auto rc = validate_rank(p, rank);
  if (!rc.ok) fail(ErrorCode::NotRanked, "rank violated on cover " + interval_name(p, rc.violation.first, rc.violation.second));
  std::vector<int> values(static_cast<size_t>(p.num_intervals()));
  for (int s = 0; s < p.num_intervals(); ++s) {
    auto [z, zp] = p.interval(s);
    values[static_cast<size_t>(s)] = rank[static_cast<size_t>(zp)] - rank[static_cast<size_t>(z)];
  }
  return std::make_shared<const WeakRank>(std::move(poset), std::move(values));
}

WeakRankPtr WeakRank::natural(PosetPtr poset) {
  auto rank = rank_or_natural(*poset);
  return natural(std::move(poset), rank);
}

bool same_carrier(const WeakRank& a, const WeakRank& b) {
  if (&a == &b) return true;
  return (a.poset_ptr() == b.poset_ptr() || a.poset() == b.poset()) && a.values() == b.values();
}

IncidenceElement::IncidenceElement(WeakRankPtr carrier)
    : carrier_(std::move(carrier)), values_(static_cast<size_t>(carrier_->poset().num_intervals())) {}

IncidenceElement::IncidenceElement(WeakRankPtr carrier, std::vector<Poly> values)
    : carrier_(std::move(carrier)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != carrier_->poset().num_intervals())
    fail(ErrorCode::InvalidInput, "incidence element has wrong number of intervals");
}

IncidenceElement IncidenceElement::delta(WeakRankPtr carrier) {
  IncidenceElement e(std::move(carrier));
  for (int z = 0; z < e.poset().size(); ++z) e.set(z, z, Poly::constant(1));
  return e;
}

IncidenceElement IncidenceElement::from_function(WeakRankPtr carrier, const std::function<Poly(int, int)>& f) {
  IncidenceElement e(std::move(carrier));
  for (int s = 0; s < e.poset().num_intervals(); ++s) {
    auto [z, zp] = e.poset().interval(s);
    e.values_[static_cast<size_t>(s)] = f(z, zp);
  }
  return e;
}

const Poly& IncidenceElement::operator()(int z, int zp) const {
  int s = poset().slot(z, zp);
  if (s < 0) fail(ErrorCode::InvalidInput, "not an interval: " + interval_name(poset(), z, zp));
  return values_[static_cast<size_t>(s)];
}

void IncidenceElement::set(int z, int zp, Poly p) {
  int s = poset().slot(z, zp);
  if (s < 0) fail(ErrorCode::InvalidInput, "not an interval: " + interval_name(poset(), z, zp));
  values_[static_cast<size_t>(s)] = std::move(p);
}

void require_same_carrier(const IncidenceElement& a, const IncidenceElement& b) {
  if (!same_carrier(a.weak_rank(), b.weak_rank()))
    fail(ErrorCode::MismatchedCarrier, "incidence elements live on different posets or weak ranks");
}

IncidenceElement& IncidenceElement::operator+=(const IncidenceElement& o) {
  require_same_carrier(*this, o);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

IncidenceElement& IncidenceElement::operator-=(const IncidenceElement& o) {
  require_same_carrier(*this, o);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

IncidenceElement operator*(const IncidenceElement& a, const IncidenceElement& b) { return convolve(a, b); }

IncidenceElement operator*(const Poly& c, IncidenceElement a) {
  for (auto& v : a.values_) v = c * v;
  return a;
}

bool operator==(const IncidenceElement& a, const IncidenceElement& b) {
  return same_carrier(a.weak_rank(), b.weak_rank()) && a.values_ == b.values_;
}

std::pair<int, int> first_difference(const IncidenceElement& a, const IncidenceElement& b) {
  require_same_carrier(a, b);
  for (int s = 0; s < a.poset().num_intervals(); ++s)
    if (a.at_slot(s) != b.at_slot(s)) return a.poset().interval(s);
  return {-1, -1};
}

IncidenceElement convolve(const IncidenceElement& p, const IncidenceElement& q) {
  require_same_carrier(p, q);
  const Poset& b = p.poset();
  std::vector<Poly> out(static_cast<size_t>(b.num_intervals()));
  // coefficient accumulators for the intervals [z, zp] with z fixed
  std::vector<std::vector<Rational>> acc(static_cast<size_t>(b.size()));
  mpq_class prod;
  for (int z = 0; z < b.size(); ++z) {
    for (int m : b.up(z)) {
      const auto& left = p(z, m).coeffs();
      if (left.empty()) continue;
      for (int zp : b.up(m)) {
        const auto& right = q(m, zp).coeffs();
        if (right.empty()) continue;
        auto& a = acc[static_cast<size_t>(zp)];
        if (a.size() < left.size() + right.size() - 1) a.resize(left.size() + right.size() - 1);
        for (size_t i = 0; i < left.size(); ++i) {
          if (sgn(left[i]) == 0) continue;
          for (size_t j = 0; j < right.size(); ++j) {
            mpq_mul(prod.get_mpq_t(), left[i].get_mpq_t(), right[j].get_mpq_t());
            mpq_add(a[i + j].get_mpq_t(), a[i + j].get_mpq_t(), prod.get_mpq_t());
          }
        }
      }
    }
    for (int zp : b.up(z)) {
      auto& a = acc[static_cast<size_t>(zp)];
      if (a.empty()) continue;
      out[static_cast<size_t>(b.slot(z, zp))] = Poly(std::move(a));
      a.clear();
    }
  }
  return IncidenceElement(p.carrier(), std::move(out));
}

IncidenceElement invert(const IncidenceElement& p) {
  const Poset& b = p.poset();
  std::vector<Rational> diag(static_cast<size_t>(b.size()));
  for (int z = 0; z < b.size(); ++z) {
    const Poly& d = p(z, z);
    if (d.degree() != 0 || (d.coeff(0) != 1 && d.coeff(0) != -1))
      fail(ErrorCode::NotInvertible, "diagonal value at " + b.label(z) + " is not +1 or -1");
    diag[static_cast<size_t>(z)] = d.coeff(0);
  }
  IncidenceElement inv(p.carrier());
  auto pos = linext_positions(b);
  for (int z = 0; z < b.size(); ++z) {
    inv.set(z, z, Poly::constant(diag[static_cast<size_t>(z)]));
    for (int zp : up_in_order(b, z, pos)) {
      if (zp == z) continue;
      Poly sum;
      for (int m : b.up(z))
        if (m != zp && b.leq(m, zp)) sum += inv(z, m) * p(m, zp);
      // p(z',z')^{-1} = p(z',z') for +-1
      inv.set(z, zp, -(sum * diag[static_cast<size_t>(zp)]));
    }
  }
  return inv;
}

IncidenceElement rev(const IncidenceElement& p) {
  std::vector<Poly> out(p.values().size());
  for (int s = 0; s < p.poset().num_intervals(); ++s) {
    auto [z, zp] = p.poset().interval(s);
    try {
      out[static_cast<size_t>(s)] = poly_rev(p.at_slot(s), p.weak_rank().at_slot(s));
    } catch (const Error& e) {
      fail(e.code(), std::string(e.what()) + " on " + interval_name(p.poset(), z, zp));
    }
  }
  return IncidenceElement(p.carrier(), std::move(out));
}

IncidenceElement hat(const IncidenceElement& p) {
  auto rank = rank_or_natural(p.poset());
  IncidenceElement out = p;
  for (int s = 0; s < p.poset().num_intervals(); ++s) {
    auto [z, zp] = p.poset().interval(s);
    if ((rank[static_cast<size_t>(zp)] - rank[static_cast<size_t>(z)]) % 2 != 0) out.set_slot(s, -p.at_slot(s));
  }
  return out;
}

IncidenceElement delta_op(const IncidenceElement& p) {
  IncidenceElement out(p.carrier());
  for (int s = 0; s < p.poset().num_intervals(); ++s) {
    auto [z, zp] = p.poset().interval(s);
    if (z != zp) out.set_slot(s, delta_truncate(p.at_slot(s), p.weak_rank().at_slot(s)));
  }
  return out;
}

IncidenceElement delta_op_inverse(const IncidenceElement& d) {
  IncidenceElement out(d.carrier());
  for (int s = 0; s < d.poset().num_intervals(); ++s) {
    auto [z, zp] = d.poset().interval(s);
    if (z != zp) out.set_slot(s, delta_inverse(d.at_slot(s), d.weak_rank().at_slot(s)));
  }
  return out;
}

IncidenceElement mask(const IncidenceElement& p, const std::function<bool(int, int)>& keep) {
  IncidenceElement out = p;
  for (int s = 0; s < p.poset().num_intervals(); ++s) {
    auto [z, zp] = p.poset().interval(s);
    if (!keep(z, zp)) out.set_slot(s, Poly());
  }
  return out;
}

bool in_I_hat(const IncidenceElement& p) {
  for (int s = 0; s < p.poset().num_intervals(); ++s)
    if (p.at_slot(s).degree() > p.weak_rank().at_slot(s)) return false;
  return true;
}

KernelCheck validate_kernel(const IncidenceElement& kappa) {
  const Poset& b = kappa.poset();
  for (int s = 0; s < b.num_intervals(); ++s) {
    auto [z, zp] = b.interval(s);
    if (kappa.at_slot(s).degree() > kappa.weak_rank().at_slot(s)) return {false, "degree exceeds weak rank", {z, zp}};
    if (z == zp && kappa.at_slot(s) != Poly::constant(1)) return {false, "diagonal value is not 1", {z, zp}};
  }
  auto prod = convolve(kappa, rev(kappa));
  auto diff = first_difference(prod, IncidenceElement::delta(kappa.carrier()));
  if (diff.first >= 0) return {false, "kappa * kappa^rev differs from delta", diff};
  return {};
}

bool is_multiplicative(const IncidenceElement& kappa) {
  const Poset& b = kappa.poset();
  for (int z = 0; z < b.size(); ++z)
    for (int m : b.up(z))
      for (int zp : b.up(m))
        if (kappa(z, zp) != kappa(z, m) * kappa(m, zp)) return false;
  return true;
}

bool is_rank_alternating(const IncidenceElement& kappa) { return rev(kappa) == hat(kappa); }

IncidenceElement eulerian_kernel(WeakRankPtr carrier) {
  IncidenceElement e(carrier);
  for (int s = 0; s < e.poset().num_intervals(); ++s) e.set_slot(s, Poly::t_minus_1_pow(carrier->at_slot(s)));
  return e;
}

namespace {

// Given D with g^rev - g = D on an interval of weak rank r, return g (degree < r/2) after checking the mirror.
Poly solve_mirror(const Poly& d, int r, const Poset& b, int z, int zp) {
  auto violated = [&](const std::string& why) {
    fail(ErrorCode::MirrorConstraintViolated, "mirror constraint violated on " + interval_name(b, z, zp) + ": " + why);
  };
  if (d.degree() > r) violated("defect degree exceeds weak rank");
  std::vector<Rational> g;
  for (int i = 0; 2 * i < r; ++i) g.push_back(-d.coeff(i));
  for (int i = 0; i <= r; ++i) {
    if (2 * i > r && d.coeff(i) != -d.coeff(r - i)) violated("coefficient " + std::to_string(i) + " is not antisymmetric");
    if (2 * i == r && d.coeff(i) != 0) violated("middle coefficient is nonzero");
  }
  return Poly(std::move(g));
}

}  // namespace

IncidenceElement solve_g(const IncidenceElement& kappa) {
  const Poset& b = kappa.poset();
  auto pos = linext_positions(b);
  IncidenceElement g(kappa.carrier());
  for (int z = 0; z < b.size(); ++z) {
    for (int zp : up_in_order(b, z, pos)) {
      if (zp == z) {
        g.set(z, z, Poly::constant(1));
        continue;
      }
      Poly d;
      for (int m : b.up(z))
        if (m != zp && b.leq(m, zp)) d += g(z, m) * kappa(m, zp);
      g.set(z, zp, solve_mirror(d, kappa.r(z, zp), b, z, zp));
    }
  }
  return g;
}

IncidenceElement solve_f(const IncidenceElement& kappa) {
  const Poset& b = kappa.poset();
  auto pos = linext_positions(b);
  IncidenceElement f(kappa.carrier());
  for (int zp = 0; zp < b.size(); ++zp) {
    for (int z : down_in_reverse_order(b, zp, pos)) {
      if (zp == z) {
        f.set(z, z, Poly::constant(1));
        continue;
      }
      Poly d;
      for (int m : b.up(z))
        if (m != z && b.leq(m, zp)) d += kappa(z, m) * f(m, zp);
      f.set(z, zp, solve_mirror(d, kappa.r(z, zp), b, z, zp));
    }
  }
  return f;
}

IncidenceElement z_function(const IncidenceElement& kappa, const IncidenceElement& g, const IncidenceElement& f) {
  auto z = convolve(convolve(g, kappa), f);
  auto check = [&](const IncidenceElement& other, const char* what) {
    auto d = first_difference(z, other);
    if (d.first >= 0)
      fail(ErrorCode::VerificationFailed,
           std::string("Z differs from ") + what + " on " + interval_name(kappa.poset(), d.first, d.second));
  };
  check(convolve(rev(g), f), "g^rev f");
  check(convolve(g, rev(f)), "g f^rev");
  check(rev(z), "its reversal");
  return z;
}

IncidenceElement z_function(const IncidenceElement& kappa) { return z_function(kappa, solve_g(kappa), solve_f(kappa)); }

namespace {

struct EulerianData {
  WeakRankPtr carrier;
  std::vector<int> rank;
  IncidenceElement g;
};

EulerianData eulerian_g(const Poset& b) {
  auto le = is_lower_eulerian(b);
  if (!le.ok) fail(ErrorCode::NotLowerEulerian, "poset is not lower Eulerian: " + le.reason);
  auto poset = std::make_shared<const Poset>(b);
  auto rank = rank_or_natural(b);
  auto carrier = WeakRank::natural(poset, rank);
  return {carrier, rank, solve_g(eulerian_kernel(carrier))};
}

}  // namespace

Poly h_polynomial(const Poset& b) {
  auto data = eulerian_g(b);
  const int mn = *b.minimum();
  int n = 0;
  for (int z = 0; z < b.size(); ++z) n = std::max(n, data.rank[static_cast<size_t>(z)] - data.rank[static_cast<size_t>(mn)]);
  Poly sum;
  for (int z = 0; z < b.size(); ++z)
    sum += data.g(mn, z) * Poly::t_minus_1_pow(n - (data.rank[static_cast<size_t>(z)] - data.rank[static_cast<size_t>(mn)]));
  return poly_rev(sum, n);
}

Poly toric_h_boundary(const Poset& b) {
  auto top = b.maximum();
  if (!top) fail(ErrorCode::InvalidInput, "toric h of the boundary needs an Eulerian poset");
  auto data = eulerian_g(b);
  const int mn = *b.minimum();
  const int n = data.carrier->operator()(mn, *top);
  if (n <= 0) fail(ErrorCode::InvalidInput, "toric h of the boundary needs positive rank");
  const Poly& g = data.g(mn, *top);
  return poly_div_t_minus_1(poly_rev(g, n) - g);
}

WeakRankPtr product_weak_rank(const WeakRank& a, const WeakRank& b) {
  auto poset = std::make_shared<const Poset>(direct_product(a.poset(), b.poset()));
  const int nb = b.poset().size();
  std::vector<int> values(static_cast<size_t>(poset->num_intervals()));
  for (int s = 0; s < poset->num_intervals(); ++s) {
    auto [z, zp] = poset->interval(s);
    values[static_cast<size_t>(s)] = a(z / nb, zp / nb) + b(z % nb, zp % nb);
  }
  return std::make_shared<const WeakRank>(poset, std::move(values));
}

IncidenceElement product_element(const IncidenceElement& p, const IncidenceElement& q, WeakRankPtr product_carrier) {
  const int nb = q.poset().size();
  if (product_carrier->poset().size() != p.poset().size() * nb)
    fail(ErrorCode::MismatchedCarrier, "product carrier does not match the factors");
  return IncidenceElement::from_function(product_carrier, [&](int z, int zp) {
    return p(z / nb, zp / nb) * q(z % nb, zp % nb);
  });
}

}  // namespace kls
