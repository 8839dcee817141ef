#pragma once

#include <optional>
#include <vector>

#include "kls/equivariant.hpp"
#include "kls/linalg.hpp"
#include "kls/poset.hpp"
#include "kls/subdivision.hpp"

namespace kls {

/// A rational fan with explicit combinatorics. cones[i] lists ray indices; cone 0 is the zero cone.
struct LatticeFan {
  int dim = 0;
  std::vector<Vector> rays;
  std::vector<std::vector<int>> cones;
  /// Ordered by ray containment, ranked by the dimension of the span.
  Poset face_poset;
  std::vector<Vector> generators(int cone) const;
};
/// The zero cone is added when missing. Optional covers (pairs of cone indices after that insertion) are checked.
LatticeFan make_fan(int dim, std::vector<Vector> rays, std::vector<std::vector<int>> cones,
                    const std::optional<std::vector<std::pair<int, int>>>& covers = std::nullopt);

/// Polytope with explicit face list; faces[i] are vertex indices, the empty face and P itself included.
struct Polytope {
  int dim = 0;
  std::vector<Vector> vertices;
  std::vector<std::vector<int>> faces;
  Poset face_lattice;  // rank = dim + 1, empty face 0
  int find_face(std::vector<int> vertices) const;
};
Polytope make_polytope(int dim, std::vector<Vector> vertices, std::vector<std::vector<int>> faces,
                       const std::optional<std::vector<std::pair<int, int>>>& covers = std::nullopt);
/// The cone over P x {1} in V + R, whose face poset is face(P).
LatticeFan cone_over(const Polytope& p);

/// Induced action of w on span(sup) / span(sub) in a chosen complement basis.
Matrix quotient_action(const Matrix& w, const std::vector<Vector>& sub, const std::vector<Vector>& sup, int dim);
int fixed_dim(const Matrix& w, const std::vector<Vector>& sub, const std::vector<Vector>& sup, int dim);
/// det(tI - w) on span(sup) / span(sub).
Poly quotient_charpoly(const Matrix& w, const std::vector<Vector>& sub, const std::vector<Vector>& sup, int dim);

/// Group generated by matrices preserving the fan, acting on the face poset; representation 0 is the matrices.
GroupPtr fan_group(const LatticeFan& fan, const std::vector<Matrix>& generators, size_t max_order = max_group_order());
/// Group generated by affine maps ((dim+1) x (dim+1), last row e_{dim+1}) preserving P, acting on face(P).
GroupPtr polytope_group(const Polytope& p, const std::vector<Matrix>& generators, size_t max_order = max_group_order());
/// Embeds a linear map of V as an affine map fixing the last coordinate.
Matrix affine_from_linear(const Matrix& m);

/// kappa(z, z') = det(tI - psi on V_{z'} / V_z), with the natural weak rank of the face poset.
EquivElement fan_kernel(const LatticeFan& fan, GroupPtr group);

struct FixedFan {
  LatticeFan fan;
  Subposet embedding;  // fixed subposet of the face poset; fan cone i is embedding.to_parent[i]
};
/// Sigma^w: the fixed cones intersected with V^w.
FixedFan fixed_fan(const LatticeFan& fan, const Group& group, int w);

/// phi: V' -> V with sigma: face(Sigma') -> face(Sigma) given; spans of the cylinder elements are derived.
struct CylinderGeometry {
  Matrix phi;
  LatticeFan source, target;
  std::vector<int> sigma;
  /// Gamma = Cyl(sigma), X first.
  SubdivisionTriple triple;
  /// Spanning vectors of V'_z in V' for every Gamma element.
  std::vector<std::vector<Vector>> spans;
};
CylinderGeometry make_cylinder(Matrix phi, LatticeFan source, LatticeFan target, std::vector<int> sigma);
/// Group acting on Gamma from matrices on V' (representation 0) and on V (representation 1).
GroupPtr cylinder_group(const CylinderGeometry& g, const std::vector<Matrix>& on_source, const std::vector<Matrix>& on_target,
                        size_t max_order = max_group_order());
/// Natural weak rank of Gamma with kappa = (t - 1)^{[z in X, z' in Y]} det(tI - psi' on V'_{z'} / V'_z).
EquivElement cylinder_kernel(const CylinderGeometry& g, GroupPtr group);

/// The triple (face(P), natural rank, F) for a face F with the origin in its relative interior,
/// with the geometric realization through the cones over the faces of P not containing F.
struct PolytopeConeTriple {
  SubdivisionTriple triple;
  CylinderGeometry geometry;
  std::vector<int> gamma_to_face;  // cylinder element -> face of P
};
PolytopeConeTriple polytope_cone_triple(const Polytope& p, int F);
/// Whether the origin lies in the relative interior of a face.
bool origin_in_relint(const Polytope& p, int face);
/// Group on the cylinder of polytope_cone_triple from linear maps of V preserving P.
GroupPtr polytope_cone_group(const PolytopeConeTriple& t, const std::vector<Matrix>& linear);

/// Whether v is a nonnegative combination of the generators.
bool in_cone(const Vector& v, const std::vector<Vector>& generators, int dim);

}  // namespace kls
