#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kls/incidence.hpp"
#include "kls/poset.hpp"

namespace kls {

/// sigma: X -> Y; X and Y carry their rank functions as attached ranks.
struct StrongFormalSubdivision {
  Poset X;
  Poset Y;
  std::vector<int> sigma;
};

struct SfsCheck {
  bool ok = true;
  std::string condition;
  std::pair<int, int> witness{-1, -1};  // (x, y) indices into X and Y
};
SfsCheck validate_sfs(const StrongFormalSubdivision& s);

/// (Gamma, rho, q) with Gamma lower Eulerian under rho, q != min, and every z v q defined.
class SubdivisionTriple {
 public:
  SubdivisionTriple(const Poset& gamma, std::vector<int> rho, int q);

  const Poset& gamma() const { return *gamma_; }
  const PosetPtr& gamma_ptr() const { return gamma_; }
  const std::vector<int>& rho() const { return gamma_->rank().value(); }
  int q() const { return q_; }
  bool in_X(int z) const { return !gamma_->leq(q_, z); }
  bool in_Y(int z) const { return gamma_->leq(q_, z); }
  /// z v q as a Gamma index.
  int sigma(int x) const { return sigma_[static_cast<size_t>(x)]; }
  const std::vector<int>& X() const { return x_; }
  const std::vector<int>& Y() const { return y_; }
  bool is_XY(int z, int zp) const { return in_X(z) && in_Y(zp); }

 private:
  PosetPtr gamma_;
  int q_;
  std::vector<int> sigma_, x_, y_;
};

/// Gamma lists X first and then Y; q is the minimum of Y.
SubdivisionTriple mapping_cylinder(const StrongFormalSubdivision& s);

struct SplitTriple {
  StrongFormalSubdivision sfs;
  std::vector<int> x_to_gamma, y_to_gamma;
};
SplitTriple triple_to_sfs(const SubdivisionTriple& t);

/// Restriction of a carrier to an induced subposet, and transport of elements along the embedding.
WeakRankPtr restrict_weak_rank(const WeakRank& r, const Subposet& sub);
IncidenceElement restrict_element(const IncidenceElement& p, const Subposet& sub, WeakRankPtr sub_carrier);
/// Extends by zero off the image of the embedding.
IncidenceElement embed_element(const IncidenceElement& p, const Subposet& sub, WeakRankPtr carrier);

struct LocalInvariants {
  IncidenceElement h;
  IncidenceElement ell;
  IncidenceElement delta_ell;
};

/// Literal form: (t-1) h = g kappa|_{(X/Y)°}, ell = h g^{-1}, with g solved on all of Gamma.
LocalInvariants local_invariants(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa);
/// Expanded form using only g solved separately on X and on Y.
LocalInvariants local_invariants_expanded(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa);

struct Check {
  bool ok = true;
  std::string what;
  std::pair<int, int> witness{-1, -1};
};
Check compare(const IncidenceElement& lhs, const IncidenceElement& rhs, const std::string& what);

Check check_theorem_g(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa);
Check check_corollary_f(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa);
Check check_corollary_z(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa);
/// Delta ell = g|_{X/Y} hat(f).
Check check_remark_delta_ell(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa);
/// Symmetry of ell, the Delta round trip, h(x,sx) = ell(x,sx), Delta ell(x,sx) = g(x,sx), degree-0 terms.
Check check_local_properties(const SubdivisionTriple& t, WeakRankPtr r, const IncidenceElement& kappa);

/// Natural weak rank and Eulerian kernel of a triple.
WeakRankPtr natural_weak_rank(const SubdivisionTriple& t);

/// Braden-MacPherson recursion over [F, Q] inside a face lattice.
Poly relative_g_recursion(const Poset& face_lattice, int F);
/// The recursion, asserted equal to Delta ell of (face lattice, natural rank, F) at the top interval.
Poly relative_g(const Poset& face_lattice, int F);

StrongFormalSubdivision product_sfs(const StrongFormalSubdivision& a, const StrongFormalSubdivision& b);
StrongFormalSubdivision identity_sfs(const Poset& b);
StrongFormalSubdivision compose_sfs(const StrongFormalSubdivision& sigma, const StrongFormalSubdivision& tau);

/// Natural weak ranks and Eulerian kernels throughout.
Check check_product_sfs(const StrongFormalSubdivision& a, const StrongFormalSubdivision& b);
Check check_composition(const StrongFormalSubdivision& sigma, const StrongFormalSubdivision& tau);
/// h, ell and Delta ell of id_B x sigma against g_B x h, delta x ell, delta x Delta ell.
Check check_identity_product(const Poset& B, const StrongFormalSubdivision& s);

/// Face poset map of a refinement of [0,1] cut points (both sorted, fine contains coarse).
StrongFormalSubdivision segment_refinement(const std::vector<Rational>& fine, const std::vector<Rational>& coarse);

}  // namespace kls
