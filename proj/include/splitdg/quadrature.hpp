#pragma once

// Legendre-Gauss-Lobatto quadrature on [-1, 1] and the collocation
// differentiation matrix. The pair (M, D) with M = diag(weights) satisfies
// the summation-by-parts identity M D + (M D)^T = B = diag(-1, 0, ..., 0, 1).

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace splitdg {

struct Quadrature1D {
  int degree = 0;                // N; N+1 nodes
  std::vector<double> nodes;     // ascending, nodes[0] = -1, nodes[N] = +1
  std::vector<double> weights;   // all positive, sum = 2
  std::vector<double> bary;      // barycentric weights of the node set
  std::vector<double> diff;      // (N+1)^2 row-major, diff[n*(N+1)+i] = l_i'(s_n)

  int n() const { return degree + 1; }
  double d(int row, int col) const { return diff[row * (degree + 1) + col]; }
};

// P_N and P_N' at x by the three-term recurrence.
std::pair<double, double> legendre_eval(int degree, double x);

// Nodes, weights, and differentiation matrix for degree N in [1, 64].
// Interior nodes are the roots of P_N' located by damped Newton from
// Chebyshev-Lobatto seeds; throws NonConvergence if an iteration stalls.
Quadrature1D build_lgl(int degree);

// Lagrange basis polynomial l_j evaluated at x (barycentric form; exact
// Kronecker delta when x coincides with a node).
double lagrange_eval(const Quadrature1D& q, int j, double x);

// Quadrature sum of nodal samples.
double quad_integrate(const Quadrature1D& q, std::span<const double> samples);

// max |(M D + (M D)^T - B)_ij|
double sbp_defect(const Quadrature1D& q);

// Debug dump: one "s,w" row per node, then D row-major.
void write_quadrature_csv(const Quadrature1D& q, std::ostream& os);

}  // namespace splitdg
