#include "splitdg/smallmat.hpp"

#include <algorithm>
#include <cmath>

namespace splitdg {

double sym_two_norm(const SmallMat& m) {
  const int p = m.dim();
  if (p == 1) return std::abs(m(0, 0));
  SmallMat a = m;
  // Cyclic Jacobi sweeps; the matrix is symmetric so the diagonal converges
  // to the eigenvalues.
  for (int sweep = 0; sweep < 30; ++sweep) {
    double off = 0;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) off = std::max(off, std::abs(a(i, j)));
    if (off <= 1e-15 * std::max(1.0, a.max_abs())) break;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) {
        if (a(i, j) == 0.0) continue;
        const double theta = (a(j, j) - a(i, i)) / (2.0 * a(i, j));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < p; ++k) {
          const double aik = a(i, k), ajk = a(j, k);
          a(i, k) = c * aik - s * ajk;
          a(j, k) = s * aik + c * ajk;
        }
        for (int k = 0; k < p; ++k) {
          const double aki = a(k, i), akj = a(k, j);
          a(k, i) = c * aki - s * akj;
          a(k, j) = s * aki + c * akj;
        }
      }
  }
  double r = 0;
  for (int i = 0; i < p; ++i) r = std::max(r, std::abs(a(i, i)));
  return r;
}

}  // namespace splitdg
