#pragma once

// Discrete calculus on the reference element: collocation derivatives of
// interpolants, quadrature inner products, surface quadrature, and defect
// functionals for the summation-by-parts integral identities.

#include <array>
#include <functional>

#include "splitdg/field.hpp"
#include "splitdg/quadrature.hpp"

namespace splitdg {

using ScalarFn = std::function<double(double, double, double)>;

// Apply an (N+1)x(N+1) matrix along one tensor direction of a scalar block:
// dir 0: out(i,j,k) = sum_q m(i,q) in(q,j,k), similarly for dirs 1 and 2.
// m is row-major; in and out must not alias.
void apply_matrix_dir(int degree, const double* m, const double* in, double* out,
                      int dir);

// Samples f at the tensor-product nodes (the interpolant's nodal values).
NodalScalarField interpolate(const Quadrature1D& q, const ScalarFn& f);

// Evaluate the interpolant off-node by tensor barycentric interpolation.
double eval_interpolant(const Quadrature1D& q, const NodalScalarField& f,
                        double x, double y, double z);

NodalVectorField gradient(const Quadrature1D& q, const NodalScalarField& f);
NodalScalarField divergence(const Quadrature1D& q, const NodalVectorField& F);
NodalVectorField curl(const Quadrature1D& q, const NodalVectorField& F);

// (f, g)_N = sum_ijk f g w_i w_j w_k
double inner_product(const Quadrature1D& q, const NodalScalarField& f,
                     const NodalScalarField& g);
// Sum of the three component inner products.
double vector_inner_product(const Quadrature1D& q, const NodalVectorField& F,
                            const NodalVectorField& G);
// Sum over state components.
double state_inner_product(const Quadrature1D& q, const NodalStateField& U,
                           const NodalStateField& V);

// ||I^N f||_E: the L2 norm of the interpolant, integrated exactly with a
// finer LGL rule (degree >= N+1 suffices for the squared interpolant).
double interpolant_l2_norm(const Quadrature1D& q, const NodalScalarField& f);

FaceScalarField face_trace(const NodalScalarField& f, Face face);

// Reference-element surface quadrature of boundary data g: each face
// contributes sum_ab w_a w_b g(a,b) signed + on plus faces and - on minus
// faces. For the flux form of the divergence theorem, pass the traces of
// F^(1) on the xi faces, F^(2) on the eta faces, F^(3) on the zeta faces.
double surface_integral(const Quadrature1D& q,
                        const std::array<FaceScalarField, 6>& g);

// Trace version of the divergence theorem for the component integrand F.
double surface_flux_integral(const Quadrature1D& q, const NodalVectorField& F);

// Relative defect of (div F, V)_N = surface - (F, grad V)_N.
double dxgl_defect(const Quadrature1D& q, const NodalVectorField& F,
                   const NodalScalarField& V);

// Relative defect of (div F, 1)_N = surface flux integral.
double dgl_defect(const Quadrature1D& q, const NodalVectorField& F);

struct GreensDefects {
  double first = 0;   // (lap Phi, V)_N + (grad Phi, grad V)_N - surface
  double second = 0;  // (lap Phi, V)_N - (lap V, Phi)_N - surface difference
};
GreensDefects greens_defects(const Quadrature1D& q, const NodalScalarField& Phi,
                             const NodalScalarField& V);

// Max-norm failure of the discrete product rule:
// grad I^N(UV) vs I^N(U grad V) + I^N(V grad U), normalized by the largest
// term magnitude (and floored at 1 so tiny fields stay meaningful).
double aliasing_defect(const Quadrature1D& q, const NodalScalarField& U,
                       const NodalScalarField& V);

}  // namespace splitdg
