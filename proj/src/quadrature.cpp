#include "splitdg/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "splitdg/errors.hpp"

namespace splitdg {

std::pair<double, double> legendre_eval(int degree, double x) {
  if (degree == 0) return {1.0, 0.0};
  double pm = 1.0, p = x;     // P_0, P_1
  double dpm = 0.0, dp = 1.0;
  for (int k = 2; k <= degree; ++k) {
    const double pk = ((2 * k - 1) * x * p - (k - 1) * pm) / k;
    const double dpk = dpm + (2 * k - 1) * p;
    pm = p;
    p = pk;
    dpm = dp;
    dp = dpk;
  }
  return {p, dp};
}

Quadrature1D build_lgl(int degree) {
  if (degree < 1 || degree > 64)
    throw std::invalid_argument("build_lgl: degree must be in [1, 64]");

  const int N = degree;
  const int n = N + 1;
  Quadrature1D q;
  q.degree = N;
  q.nodes.resize(n);
  q.nodes[0] = -1.0;
  q.nodes[N] = 1.0;

  // Interior nodes: roots of (1 - x^2) P_N'(x). With the Legendre ODE the
  // Newton update needs only P_N: f = (1-x^2) P_N', f' = -N(N+1) P_N.
  const double scale = static_cast<double>(N) * (N + 1);
  auto resid = [&](double x) {
    auto [P, dP] = legendre_eval(N, x);
    (void)P;
    return (1.0 - x * x) * dP;
  };
  for (int j = 1; j < N; ++j) {
    double x = -std::cos(M_PI * j / N);
    double f = resid(x);
    bool done = std::abs(f) < 1e-15;
    for (int it = 0; it < 100 && !done; ++it) {
      const double P = legendre_eval(N, x).first;
      double step = f / (scale * P);  // -f/f'
      // Damp: halve the step until the residual decreases.
      double xt = x + step;
      double ft = resid(xt);
      for (int h = 0; h < 50 && std::abs(ft) > std::abs(f); ++h) {
        step *= 0.5;
        xt = x + step;
        ft = resid(xt);
      }
      x = xt;
      f = ft;
      if (std::abs(f) < 1e-15 || std::abs(step) < 1e-15) done = true;
    }
    if (!done)
      throw NonConvergence("build_lgl: Newton iteration did not converge", N, 100);
    q.nodes[j] = x;
  }
  // The root set is symmetric; enforce it exactly.
  for (int j = 1; j <= N / 2; ++j) {
    const double s = 0.5 * (q.nodes[N - j] - q.nodes[j]);
    q.nodes[j] = -s;
    q.nodes[N - j] = s;
  }
  if (N % 2 == 0) q.nodes[N / 2] = 0.0;

  q.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    auto [P, dP] = legendre_eval(N, q.nodes[j]);
    (void)dP;
    q.weights[j] = 2.0 / (scale * P * P);
  }

  // Barycentric weights; only ratios matter, so normalize by the largest.
  q.bary.resize(n);
  double bmax = 0;
  for (int j = 0; j < n; ++j) {
    double w = 1.0;
    for (int i = 0; i < n; ++i)
      if (i != j) w *= q.nodes[j] - q.nodes[i];
    q.bary[j] = 1.0 / w;
    bmax = std::max(bmax, std::abs(q.bary[j]));
  }
  for (int j = 0; j < n; ++j) q.bary[j] /= bmax;

  // D_ni = l_i'(s_n) from the barycentric weights; diagonal by the
  // negative-sum trick so each row sums to zero exactly.
  q.diff.assign(static_cast<size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r) {
    double rowsum = 0;
    for (int c = 0; c < n; ++c) {
      if (c == r) continue;
      const double d = (q.bary[c] / q.bary[r]) / (q.nodes[r] - q.nodes[c]);
      q.diff[r * n + c] = d;
      rowsum += d;
    }
    q.diff[r * n + r] = -rowsum;
  }
  return q;
}

double lagrange_eval(const Quadrature1D& q, int j, double x) {
  const int n = q.n();
  for (int i = 0; i < n; ++i)
    if (x == q.nodes[i]) return i == j ? 1.0 : 0.0;
  double num = q.bary[j] / (x - q.nodes[j]);
  double den = 0;
  for (int i = 0; i < n; ++i) den += q.bary[i] / (x - q.nodes[i]);
  return num / den;
}

double quad_integrate(const Quadrature1D& q, std::span<const double> samples) {
  double s = 0;
  for (int j = 0; j < q.n(); ++j) s += q.weights[j] * samples[j];
  return s;
}

double sbp_defect(const Quadrature1D& q) {
  const int n = q.n();
  double defect = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double b = 0;
      if (r == 0 && c == 0) b = -1.0;
      if (r == n - 1 && c == n - 1) b = 1.0;
      const double v = q.weights[r] * q.d(r, c) + q.weights[c] * q.d(c, r) - b;
      defect = std::max(defect, std::abs(v));
    }
  return defect;
}

void write_quadrature_csv(const Quadrature1D& q, std::ostream& os) {
  char buf[64];
  const int n = q.n();
  for (int j = 0; j < n; ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", q.nodes[j]);
    os << buf << ",";
    std::snprintf(buf, sizeof buf, "%.17g", q.weights[j]);
    os << buf << "\n";
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", q.d(r, c));
      os << buf << (c + 1 < n ? "," : "\n");
    }
  }
}

}  // namespace splitdg
