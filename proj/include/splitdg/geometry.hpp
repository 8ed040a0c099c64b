#pragma once

// Curved hexahedral elements: isoparametric mappings sampled at the LGL
// nodes, metric terms in both the cross-product and curl forms, and the
// conforming box mesh builder with its global smooth warp.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "splitdg/calculus.hpp"
#include "splitdg/field.hpp"
#include "splitdg/quadrature.hpp"
#include "splitdg/smallmat.hpp"

namespace splitdg {

enum class MetricMode { Cross, Curl };

// Analytic map from the reference element [-1,1]^3 into physical space.
struct ElementMapping {
  std::function<Vec3(double, double, double)> map;
};

// Nodal positions of the mapping: X[m] holds the m-th physical coordinate.
NodalVectorField map_positions(const Quadrature1D& q, const ElementMapping& em);

// Covariant basis a_i = dX/dxi^i from D applied to the nodal positions.
// cov[i][m] is the m-th physical component of a_i.
std::array<NodalVectorField, 3> covariant_vectors(const Quadrature1D& q,
                                                  const NodalVectorField& X);

// Contravariant metric vectors Ja^i, cross-product form: Ja^i = a_j x a_k
// with (i,j,k) cyclic. Pointwise; not discretely divergence free in general.
std::array<NodalVectorField, 3> contravariant_cross(
    const std::array<NodalVectorField, 3>& cov);

// Contravariant metric vectors in the conservative curl form, built from
// interpolated products of positions and covariant components. Discretely
// divergence free by construction (curl followed by divergence).
std::array<NodalVectorField, 3> contravariant_curl(
    const Quadrature1D& q, const NodalVectorField& X,
    const std::array<NodalVectorField, 3>& cov);

// J = a_1 . (a_2 x a_3); throws NonPositiveJacobian (with the given element
// id) if J <= 0 anywhere.
NodalScalarField jacobian(const std::array<NodalVectorField, 3>& cov,
                          int element_id = -1);

// max over Cartesian components of the max-norm of sum_d D_d (Ja^d)_n,
// normalized by the largest metric entry.
double metric_identity_defect(const Quadrature1D& q,
                              const std::array<NodalVectorField, 3>& contra);

// max |Ja^i . a_j - J delta_ij| over nodes and index pairs, normalized.
double duality_defect(const std::array<NodalVectorField, 3>& cov,
                      const std::array<NodalVectorField, 3>& contra,
                      const NodalScalarField& J);

struct FaceGeometry {
  // Everything indexed by face node (a,b) flattened b*n + a.
  std::vector<Vec3> normal_flux;   // outward s * Ja^d at the node
  std::vector<double> area;        // |normal_flux| (surface quadrature weight factor)
  std::vector<Vec3> unit_normal;   // normal_flux / area
  std::vector<Vec3> position;      // physical location of the face node
};

struct ElementGeometry {
  int degree = 0;
  MetricMode mode = MetricMode::Curl;
  NodalVectorField X;
  std::array<NodalVectorField, 3> cov;
  std::array<NodalVectorField, 3> contra;
  NodalScalarField jac;
  std::array<FaceGeometry, 6> faces;
};

ElementGeometry build_element_geometry(const Quadrature1D& q,
                                       const ElementMapping& em, MetricMode mode,
                                       int element_id = -1);

struct InteriorFace {
  int left = 0;          // owner element (lower cell index along the axis)
  int right = 0;
  Face left_face = Face::XiPlus;   // owner's plus side
  Face right_face = Face::XiMinus; // neighbor's minus side
  // Conforming box mesh: face node (a,b) matches (a,b) on the other side.
};

struct BoundaryFace {
  int elem = 0;
  Face face = Face::XiMinus;
};

struct Mesh {
  int degree = 0;
  MetricMode mode = MetricMode::Curl;
  Quadrature1D quad;
  std::array<double, 6> extents{};  // x0,x1,y0,y1,z0,z1
  std::array<int, 3> counts{};
  double warp = 0;
  std::vector<ElementMapping> maps;
  std::vector<ElementGeometry> elems;
  std::vector<InteriorFace> interior;
  std::vector<BoundaryFace> boundary;
  double h_min = 0;               // smallest unwarped cell extent
  double conformity_defect = 0;   // max face-node position mismatch
  double min_jacobian = 0;

  int n_elements() const { return static_cast<int>(elems.size()); }
};

// Conforming mesh of counts[0] x counts[1] x counts[2] mapped cubes covering
// the box, each cell's affine map composed with the global smooth warp
//   x_m += warp * L_m * sin(pi u_{m+1}) * sin(pi u_{m+2})
// where u are box-normalized coordinates and indices are cyclic. The warp is
// applied to the shared analytic cell map, so touching faces coincide.
Mesh build_box_mesh(const std::array<double, 6>& extents,
                    const std::array<int, 3>& counts, double warp, int degree,
                    MetricMode mode);

// One-object JSON description: sizes, metric mode, min J, identity defect.
std::string mesh_summary_json(const Mesh& mesh);

}  // namespace splitdg
