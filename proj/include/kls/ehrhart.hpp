#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kls/equivariant.hpp"
#include "kls/geometry.hpp"

namespace kls {

/// A lattice triangulation (fine) refining a polyhedral subdivision (coarse) of a lattice polytope,
/// with an affine action given by (dim+1) x (dim+1) integer matrices fixing the last coordinate.
struct LatticeComplex {
  int dim = 0;
  std::vector<Vector> vertices;
  std::vector<std::vector<int>> fine, coarse;  // vertex-index sets, empty set first
  std::vector<Matrix> generators;
  /// Cylinder of fine -> coarse in N + Z with phi = identity; Gamma indices are fine faces, then coarse faces.
  CylinderGeometry geometry;
  GroupPtr group;
  EquivElement kappa;  // cylinder kernel, on natural_weak_rank(geometry.triple)
  int num_fine() const { return static_cast<int>(fine.size()); }
  int coarse_index(int y) const { return num_fine() + y; }
  /// Coarse maximum (P itself), or -1.
  int top() const;
  std::vector<Vector> lifted(const std::vector<int>& face) const;
};
/// Without coarse faces the coarse subdivision is the fine one. Throws NotASimplex for a non-simplex fine face.
LatticeComplex make_complex(int dim, std::vector<Vector> vertices, std::vector<std::vector<int>> fine,
                            std::optional<std::vector<std::vector<int>>> coarse, std::vector<Matrix> generators,
                            size_t max_order = max_group_order());

/// Faces of the convex hull of full-dimensional points as sets of indices of its vertices, empty face first.
std::vector<std::vector<int>> hull_faces(int dim, const std::vector<Vector>& points);

/// Lattice points sum lambda_i (u_i, 1) with sum lambda_i = m and 0 <= lambda_i < 1, or 0 < lambda_i < 1 when open.
std::vector<Vector> box_points(const std::vector<Vector>& simplex, int dim, bool open, int m);

/// Box-point permutation characters of W_{x,y} for a fine face x and some Gamma element y above it.
ClassPoly simplex_hstar(const LatticeComplex& c, int x, int y);
ClassPoly simplex_local_hstar(const LatticeComplex& c, int x, int y);

/// Number of lattice points at heights 0..M in the cone over coarse face y (relative interior when interior),
/// fixed by the Gamma group element w.
Poly ehr_series(const LatticeComplex& c, int y, int w, int M, bool interior = false);
/// ehr_series times det(I - psi~ t) on the span of the cone, truncated at degree M.
Poly hstar_by_counting(const LatticeComplex& c, int y, int w, int M);

/// h*(F_y) for every coarse face y, as class polynomials on W_{0,y}, assembled from the fine simplices.
std::vector<ClassPoly> coarse_hstar(const LatticeComplex& c);
/// h*(P) from the fine simplices whose carrier is P.
ClassPoly hstar_from_subdivision(const LatticeComplex& c);
/// Sums of Ind(l*(F_x) h_sigma(x, 1)) and Ind(l*(F_x) l_sigma(x, 1)) over orbits of fine faces.
ClassPoly hstar_via_localh(const LatticeComplex& c);
ClassPoly localhstar_via_localh(const LatticeComplex& c);
/// l*(P) from h* of the faces of P and the inverse KLS g-function of face(P); needs the coarse faces to be face(P).
ClassPoly localhstar_from_faces(const LatticeComplex& c);

struct SeriesCheck {
  bool ok = true;
  int order = -1;  // first mismatching order
  std::string detail;
};
/// Ehr-interior against t^{dim+1} h*(1/t) / det(I - psi~(w) t) up to order M.
SeriesCheck reciprocity_check(const LatticeComplex& c, int w, int M, const Poly& hstar_at_w);
SeriesCheck reciprocity_check(const LatticeComplex& c, int w, int M);
/// For each coarse face orbit and class, h* from the fine simplices equals counting times det up to order M,
/// and the counted series vanishes above the face dimension.
SeriesCheck polynomial_action_check(const LatticeComplex& c, int M);
/// (t - 1) h*|_{X/Y} = h*|_X kappa|_{x, sigma(x)} in the equivariant incidence algebra of the cylinder.
Check check_hstar_identity(const LatticeComplex& c);
/// h*_Gamma: h*(F_z') on [0, z'], zero elsewhere.
EquivElement hstar_element(const LatticeComplex& c);

inline int default_truncation(int dim) { return 2 * (dim + 1); }

}  // namespace kls
