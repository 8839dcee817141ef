#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kls/group.hpp"
#include "kls/incidence.hpp"
#include "kls/subdivision.hpp"

namespace kls {

struct ActionCheck {
  bool ok = true;
  std::string reason;
  int element = -1;  // offending group element
  int point = -1;    // offending poset element when relevant
};
/// Every element is an automorphism; optionally the rank is invariant and q is fixed.
ActionCheck validate_action(const Group& w, const Poset& b, const std::optional<std::vector<int>>& rank = std::nullopt,
                            std::optional<int> q = std::nullopt);
/// B^w lower Eulerian for every w; the witness is the first failing conjugacy-class representative.
ActionCheck is_eulerian_action(const Group& w, const Poset& b);

/// W acting on a poset with a W-invariant weak rank. Stabilizers and fixed posets are cached.
class EquivCarrier {
 public:
  EquivCarrier(GroupPtr group, WeakRankPtr rank);

  struct Fixed {
    Subposet sub;
    WeakRankPtr rank;                       // restriction of the weak rank to B^w
    std::optional<std::vector<int>> natural;  // natural rank of B^w when it is ranked
  };

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const WeakRankPtr& weak_rank() const { return rank_; }
  const Poset& poset() const { return rank_->poset(); }
  const SubgroupPtr& whole() const { return whole_; }
  /// W_{z,z'} for an interval slot.
  const SubgroupPtr& stab(int slot) const { return stab_[static_cast<size_t>(slot)]; }
  const SubgroupPtr& stab(int z, int zp) const { return stab(poset().slot(z, zp)); }
  /// W_{z,z'',z'}.
  SubgroupPtr stab3(int z, int zm, int zp) const;
  const Fixed& fixed(int w) const;

 private:
  GroupPtr group_;
  WeakRankPtr rank_;
  SubgroupPtr whole_;
  std::vector<SubgroupPtr> stab_;
  mutable std::map<std::vector<int>, SubgroupPtr> stab3_;
  mutable std::vector<std::unique_ptr<Fixed>> fixed_;
};
using EquivCarrierPtr = std::shared_ptr<const EquivCarrier>;

/// Element of the equivariant incidence algebra: on [z, z'] a class polynomial on W_{z,z'}.
class EquivElement {
 public:
  explicit EquivElement(EquivCarrierPtr c);
  static EquivElement delta(EquivCarrierPtr c);
  /// f(z, z', u) is read at conjugacy-class representatives u of W_{z,z'}.
  static EquivElement from_function(EquivCarrierPtr c, const std::function<Poly(int, int, int)>& f);

  const EquivCarrierPtr& carrier() const { return c_; }
  const Poset& poset() const { return c_->poset(); }
  const ClassPoly& operator()(int z, int zp) const;
  const ClassPoly& at_slot(int s) const { return values_[static_cast<size_t>(s)]; }
  void set_slot(int s, ClassPoly p);
  /// Evaluation at w, an element of I(B^w) with the restricted weak rank.
  IncidenceElement ev(int w) const;

  EquivElement operator+(const EquivElement& o) const;
  EquivElement operator-(const EquivElement& o) const;
  EquivElement operator-() const;
  friend EquivElement operator*(const Poly& a, const EquivElement& p);
  bool operator==(const EquivElement& o) const;

 private:
  EquivCarrierPtr c_;
  std::vector<ClassPoly> values_;
};

/// Product by Ind/Res over orbit representatives of W_{z,z'} on [z, z'].
EquivElement equiv_multiply(const EquivElement& p, const EquivElement& q);
EquivElement rev(const EquivElement& p);
EquivElement delta_op(const EquivElement& p);
/// ev_w(hat p) = hat(ev_w p) with the natural rank of B^w; needs an Eulerian action.
EquivElement hat(const EquivElement& p);
EquivElement mask(const EquivElement& p, const std::function<bool(int, int)>& keep);

/// Slot of the first difference as a (z, z') pair, or {-1,-1}.
std::pair<int, int> first_difference(const EquivElement& a, const EquivElement& b);

/// Values at every group element are integers.
bool is_integral(const EquivElement& p);
/// p(u z, u z')(u w u^{-1}) = p(z, z')(w) for generators u.
Check check_conjugation_compatible(const EquivElement& p);

/// Builds the element with ev_w = per_rep(w) for W-class representatives w, transporting to conjugates.
/// Throws AssemblyInconsistent or NonIntegralCharacter.
EquivElement assemble(EquivCarrierPtr c, const std::function<IncidenceElement(int)>& per_rep);

/// Restriction of the action along the inclusion of a subgroup, as a new group acting on B.
EquivElement pullback(const EquivElement& p, const SubgroupPtr& h);
/// q(z, z')(u) = p(x^{-1} z, x^{-1} z')(x^{-1} u x).
EquivElement pullback_conjugation(const EquivElement& p, int x);

struct EquivKernelCheck {
  bool ok = true;
  std::string reason;
  int element = -1;
  std::pair<int, int> witness{-1, -1};
};
/// ev_w(kappa) is an integral B^w-kernel for every w.
EquivKernelCheck equiv_kernel_validate(const EquivElement& kappa);

EquivElement equiv_solve_g(const EquivElement& kappa);
EquivElement equiv_solve_f(const EquivElement& kappa);
EquivElement equiv_z(const EquivElement& kappa);
/// g^rev = g kappa and f^rev = kappa f through equiv_multiply, with unit diagonal and half-rank degrees.
Check check_equiv_solution(const EquivElement& kappa, const EquivElement& g, const EquivElement& f);

struct EquivLocalInvariants {
  EquivElement h;
  EquivElement ell;
  EquivElement delta_ell;
};
/// Requires an Eulerian action fixing q with W-invariant rank.
EquivLocalInvariants equiv_local_invariants(const SubdivisionTriple& t, const EquivElement& kappa);
/// The fixed triple (Gamma^w, natural rank, q) for one group element.
SubdivisionTriple fixed_triple(const SubdivisionTriple& t, const EquivCarrier& c, int w);
/// The equivariant g, f and Z identities via equiv_multiply, and per class representative on fixed triples.
Check check_equivariant_theorem(const SubdivisionTriple& t, const EquivElement& kappa);

}  // namespace kls
