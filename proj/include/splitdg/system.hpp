#pragma once

// Linear symmetric hyperbolic systems u_t + sum_m A^(m)(x) u_xm = 0 with
// smooth coefficients, their characteristic decompositions along arbitrary
// (not necessarily unit) directions, and the upwind interface flux.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "splitdg/field.hpp"
#include "splitdg/geometry.hpp"
#include "splitdg/smallmat.hpp"

namespace splitdg {

struct EigenDecomp {
  int p = 0;
  SmallMat R, Rinv;
  std::array<double, SmallMat::MaxDim> lambda{};
};

struct HyperbolicSystem {
  std::string name;
  int p = 0;
  // A^(m)(x), symmetric.
  std::function<SmallMat(const Vec3&, int)> coeff;
  // sum_m dA^(m)/dx_m at x (analytic).
  std::function<SmallMat(const Vec3&)> coeff_divergence;
  // Decomposition of sum_m alpha_m A^(m)(x) = R Lambda R^-1. alpha may carry
  // a magnitude (e.g. a face-weighted normal); eigenvalues scale with it.
  std::function<EigenDecomp(const Vec3&, const Vec3&)> eigen;
  // Pointwise bound on |lambda| over unit directions (time step estimate).
  std::function<double(const Vec3&)> wave_speed;
};

// Constant-velocity scalar advection.
HyperbolicSystem make_advection_constant(const Vec3& a);

// Scalar advection with an analytically divergence-free velocity
//   a(x) = a0 + eps * (sin(2 pi y) sin(2 pi z),
//                      sin(2 pi z) sin(2 pi x),
//                      sin(2 pi x) sin(2 pi y)),
// the curl of a smooth vector potential (each component is free of its own
// coordinate, so div a = 0 exactly).
HyperbolicSystem make_advection_shear(const Vec3& a0, double eps);

// Scalar advection with a divergence-free recirculating velocity confined
// to the unit box: a = curl(amp B(x) B(y) B(z) (1,1,1)) with B(t) =
// sin^2(pi t). Every component of a carries a factor B or B' of each
// coordinate, so the velocity vanishes identically on the boundary of
// [0,1]^3 and transport never crosses it.
HyperbolicSystem make_advection_vortex(double amp);

// Pressure-velocity acoustics with constant sound speed c: state
// (u, v, w, ptilde), A(n) coupling velocity and pressure through c n.
HyperbolicSystem make_acoustics(double c);

// Characteristic split of W = sum_m alpha_m A^(m)(x): W is assembled from
// the coefficients, the split parts from the eigendecomposition with the
// half-sum convention Lambda+- = (Lambda +- |Lambda|)/2.
struct NormalSplit {
  int p = 0;
  SmallMat W;            // sum_m alpha_m A^(m)
  SmallMat absW;         // R |Lambda| R^-1
  SmallMat Wplus;        // R Lambda+ R^-1, PSD
  SmallMat Wminus;       // R Lambda- R^-1, NSD
  SmallMat sqrt_absWminus;  // R sqrt(|Lambda-|) R^-1
  EigenDecomp eig;
};

NormalSplit normal_split(const HyperbolicSystem& sys, const Vec3& alpha,
                         const Vec3& x);

// F* = 1/2 W (UL + UR) - sigma/2 |W| (UR - UL); consistent at sigma = 0
// (central) and fully upwind at sigma = 1.
void numerical_flux(const NormalSplit& ns, const double* UL, const double* UR,
                    double sigma, double* out);

// Interface energy production F*^T [U] - 1/2 [(W U)^T U] with [q] = qR - qL;
// equals -sigma/2 [U]^T |W| [U] <= 0.
double interface_dissipation(const NormalSplit& ns, const double* UL,
                             const double* UR, double sigma);

// Exterior state for the characteristic boundary: incoming characteristics
// (lambda < 0) take g, outgoing and tangent ones keep the interior trace.
void boundary_exterior_state(const NormalSplit& ns, const double* U,
                             const double* g, double* out);

// Both sides of the nodal boundary energy balance: the flux contribution
// (F* - 1/2 W U)^T U and its characteristic decomposition
// 1/2 U^T W+ U + 1/2 (U-g)^T |W-| (U-g) - 1/2 g^T |W-| g.
struct BoundaryEnergy {
  double flux_side = 0;
  double split_side = 0;
};
BoundaryEnergy boundary_energy_parts(const NormalSplit& ns, const double* U,
                                     const double* g);

// Nodal contravariant coefficients Atil^d = sum_m (Ja^d)_m A^(m)(x) and the
// collocation divergence of their interpolant, entrywise.
struct ContravariantCoefficients {
  int degree = 0;
  int p = 0;
  // Node-major blocks: entry (r,c) of node t lives at [t*p*p + r*p + c].
  std::array<std::vector<double>, 3> Atil;
  std::vector<double> divA;

  const double* atil(int d, size_t node) const {
    return Atil[d].data() + node * p * p;
  }
  const double* div_at(size_t node) const { return divA.data() + node * p * p; }
};

ContravariantCoefficients contravariant_coeffs(const HyperbolicSystem& sys,
                                               const ElementGeometry& geom,
                                               const Quadrature1D& q);

}  // namespace splitdg
