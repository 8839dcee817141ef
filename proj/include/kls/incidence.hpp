#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kls/poly.hpp"
#include "kls/poset.hpp"

namespace kls {

/// Nonnegative interval weights, positive on strict intervals and additive along chains.
class WeakRank {
 public:
  /// values are indexed by interval slot of the poset.
  WeakRank(PosetPtr poset, std::vector<int> values);
  /// r(z, z') = rank(z') - rank(z).
  static std::shared_ptr<const WeakRank> natural(PosetPtr poset, const std::vector<int>& rank);
  /// Natural weak rank from the attached rank, else the inferred one.
  static std::shared_ptr<const WeakRank> natural(PosetPtr poset);

  const Poset& poset() const { return *poset_; }
  const PosetPtr& poset_ptr() const { return poset_; }
  int operator()(int z, int zp) const { return values_[static_cast<size_t>(poset_->slot(z, zp))]; }
  int at_slot(int s) const { return values_[static_cast<size_t>(s)]; }
  const std::vector<int>& values() const { return values_; }

 private:
  PosetPtr poset_;
  std::vector<int> values_;
};

using WeakRankPtr = std::shared_ptr<const WeakRank>;

bool same_carrier(const WeakRank& a, const WeakRank& b);

/// Polynomial-valued function on the closed intervals of a poset, tied to a weak rank.
class IncidenceElement {
 public:
  explicit IncidenceElement(WeakRankPtr carrier);
  IncidenceElement(WeakRankPtr carrier, std::vector<Poly> values);
  static IncidenceElement delta(WeakRankPtr carrier);
  static IncidenceElement from_function(WeakRankPtr carrier, const std::function<Poly(int, int)>& f);

  const Poset& poset() const { return carrier_->poset(); }
  const WeakRank& weak_rank() const { return *carrier_; }
  const WeakRankPtr& carrier() const { return carrier_; }
  int r(int z, int zp) const { return (*carrier_)(z, zp); }

  /// Value on [z, z']; throws when z is not <= z'.
  const Poly& operator()(int z, int zp) const;
  const Poly& at_slot(int s) const { return values_[static_cast<size_t>(s)]; }
  void set(int z, int zp, Poly p);
  void set_slot(int s, Poly p) { values_[static_cast<size_t>(s)] = std::move(p); }
  const std::vector<Poly>& values() const { return values_; }

  IncidenceElement& operator+=(const IncidenceElement& o);
  IncidenceElement& operator-=(const IncidenceElement& o);
  friend IncidenceElement operator+(IncidenceElement a, const IncidenceElement& b) { return a += b; }
  friend IncidenceElement operator-(IncidenceElement a, const IncidenceElement& b) { return a -= b; }
  friend IncidenceElement operator-(IncidenceElement a) {
    for (auto& v : a.values_) v = -v;
    return a;
  }
  friend IncidenceElement operator*(const IncidenceElement& a, const IncidenceElement& b);
  friend IncidenceElement operator*(const Poly& c, IncidenceElement a);
  friend bool operator==(const IncidenceElement& a, const IncidenceElement& b);
  friend bool operator!=(const IncidenceElement& a, const IncidenceElement& b) { return !(a == b); }

 private:
  WeakRankPtr carrier_;
  std::vector<Poly> values_;
};

void require_same_carrier(const IncidenceElement& a, const IncidenceElement& b);

/// First interval (in slot order) where a and b differ, or {-1,-1}.
std::pair<int, int> first_difference(const IncidenceElement& a, const IncidenceElement& b);

IncidenceElement convolve(const IncidenceElement& p, const IncidenceElement& q);
/// Throws NotInvertible unless every diagonal value is +1 or -1.
IncidenceElement invert(const IncidenceElement& p);
IncidenceElement rev(const IncidenceElement& p);
/// Sign (-1)^{rho(z,z')} for the natural rank of the carrier poset.
IncidenceElement hat(const IncidenceElement& p);
/// delta_truncate intervalwise with weak rank r(z,z'); zero on the diagonal.
IncidenceElement delta_op(const IncidenceElement& p);
/// Recovers l from delta_op(l) for elements satisfying the local symmetry.
IncidenceElement delta_op_inverse(const IncidenceElement& d);
IncidenceElement mask(const IncidenceElement& p, const std::function<bool(int, int)>& keep);

struct KernelCheck {
  bool ok = true;
  std::string reason;
  std::pair<int, int> witness{-1, -1};
};
/// Checks degree bounds, unit diagonal, and kappa * kappa^rev = delta.
KernelCheck validate_kernel(const IncidenceElement& kappa);
bool in_I_hat(const IncidenceElement& p);
bool is_multiplicative(const IncidenceElement& kappa);
bool is_rank_alternating(const IncidenceElement& kappa);

/// (t - 1)^{r(z,z')} on the given carrier.
IncidenceElement eulerian_kernel(WeakRankPtr carrier);

/// Throws MirrorConstraintViolated naming the interval when kappa is not a kernel.
IncidenceElement solve_g(const IncidenceElement& kappa);
IncidenceElement solve_f(const IncidenceElement& kappa);
/// Z = g kappa f; also checks Z = g^rev f = g f^rev and rev(Z) = Z (VerificationFailed otherwise).
IncidenceElement z_function(const IncidenceElement& kappa, const IncidenceElement& g, const IncidenceElement& f);
IncidenceElement z_function(const IncidenceElement& kappa);

/// h-polynomial of a lower Eulerian poset with a maximum-rank n.
Poly h_polynomial(const Poset& b);
/// h of the boundary of an Eulerian poset of positive rank.
Poly toric_h_boundary(const Poset& b);

WeakRankPtr product_weak_rank(const WeakRank& a, const WeakRank& b);
/// (p x p')((z1,z1'),(z2,z2')) = p(z1,z2) p'(z1',z2') on the given product carrier.
IncidenceElement product_element(const IncidenceElement& p, const IncidenceElement& q, WeakRankPtr product_carrier);

}  // namespace kls
