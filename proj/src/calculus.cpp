#include "splitdg/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace splitdg {

void apply_matrix_dir(int degree, const double* m, const double* in, double* out,
                      int dir) {
  const int n = degree + 1;
  const size_t nn = static_cast<size_t>(n) * n;
  if (dir == 0) {
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const double* col = in + nn * k + static_cast<size_t>(n) * j;
        double* ocol = out + nn * k + static_cast<size_t>(n) * j;
        for (int i = 0; i < n; ++i) {
          double s = 0;
          const double* mrow = m + static_cast<size_t>(i) * n;
          for (int t = 0; t < n; ++t) s += mrow[t] * col[t];
          ocol[i] = s;
        }
      }
  } else if (dir == 1) {
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const double* mrow = m + static_cast<size_t>(j) * n;
        double* ocol = out + nn * k + static_cast<size_t>(n) * j;
        for (int i = 0; i < n; ++i) {
          double s = 0;
          for (int t = 0; t < n; ++t)
            s += mrow[t] * in[nn * k + static_cast<size_t>(n) * t + i];
          ocol[i] = s;
        }
      }
  } else {
    for (int k = 0; k < n; ++k) {
      const double* mrow = m + static_cast<size_t>(k) * n;
      for (int j = 0; j < n; ++j) {
        double* ocol = out + nn * k + static_cast<size_t>(n) * j;
        for (int i = 0; i < n; ++i) {
          double s = 0;
          for (int t = 0; t < n; ++t)
            s += mrow[t] * in[nn * t + static_cast<size_t>(n) * j + i];
          ocol[i] = s;
        }
      }
    }
  }
}

NodalScalarField interpolate(const Quadrature1D& q, const ScalarFn& f) {
  NodalScalarField out(q.degree);
  const int n = q.n();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        out.at(i, j, k) = f(q.nodes[i], q.nodes[j], q.nodes[k]);
  return out;
}

double eval_interpolant(const Quadrature1D& q, const NodalScalarField& f,
                        double x, double y, double z) {
  const int n = q.n();
  // 1D barycentric basis values per direction.
  auto basis = [&](double t, std::vector<double>& l) {
    l.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
      if (t == q.nodes[i]) {
        l[i] = 1.0;
        return;
      }
    double den = 0;
    for (int i = 0; i < n; ++i) {
      l[i] = q.bary[i] / (t - q.nodes[i]);
      den += l[i];
    }
    for (int i = 0; i < n; ++i) l[i] /= den;
  };
  std::vector<double> lx, ly, lz;
  basis(x, lx);
  basis(y, ly);
  basis(z, lz);
  double s = 0;
  for (int k = 0; k < n; ++k) {
    if (lz[k] == 0.0) continue;
    double sy = 0;
    for (int j = 0; j < n; ++j) {
      if (ly[j] == 0.0) continue;
      double sx = 0;
      for (int i = 0; i < n; ++i) sx += lx[i] * f.at(i, j, k);
      sy += ly[j] * sx;
    }
    s += lz[k] * sy;
  }
  return s;
}

NodalVectorField gradient(const Quadrature1D& q, const NodalScalarField& f) {
  NodalVectorField g(q.degree);
  for (int m = 0; m < 3; ++m)
    apply_matrix_dir(q.degree, q.diff.data(), f.data(), g[m].data(), m);
  return g;
}

NodalScalarField divergence(const Quadrature1D& q, const NodalVectorField& F) {
  NodalScalarField d(q.degree);
  NodalScalarField tmp(q.degree);
  for (int m = 0; m < 3; ++m) {
    apply_matrix_dir(q.degree, q.diff.data(), F[m].data(), tmp.data(), m);
    for (size_t t = 0; t < d.size(); ++t) d.data()[t] += tmp.data()[t];
  }
  return d;
}

NodalVectorField curl(const Quadrature1D& q, const NodalVectorField& F) {
  NodalVectorField c(q.degree);
  NodalScalarField da(q.degree), db(q.degree);
  for (int m = 0; m < 3; ++m) {
    const int a = (m + 1) % 3, b = (m + 2) % 3;
    // (curl F)_m = d_a F_b - d_b F_a
    apply_matrix_dir(q.degree, q.diff.data(), F[b].data(), da.data(), a);
    apply_matrix_dir(q.degree, q.diff.data(), F[a].data(), db.data(), b);
    for (size_t t = 0; t < c[m].size(); ++t)
      c[m].data()[t] = da.data()[t] - db.data()[t];
  }
  return c;
}

double inner_product(const Quadrature1D& q, const NodalScalarField& f,
                     const NodalScalarField& g) {
  const int n = q.n();
  double s = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const double wjk = q.weights[j] * q.weights[k];
      for (int i = 0; i < n; ++i)
        s += q.weights[i] * wjk * f.at(i, j, k) * g.at(i, j, k);
    }
  return s;
}

double vector_inner_product(const Quadrature1D& q, const NodalVectorField& F,
                            const NodalVectorField& G) {
  return inner_product(q, F[0], G[0]) + inner_product(q, F[1], G[1]) +
         inner_product(q, F[2], G[2]);
}

double state_inner_product(const Quadrature1D& q, const NodalStateField& U,
                           const NodalStateField& V) {
  const int n = q.n();
  double s = 0;
  for (int c = 0; c < U.ncomp(); ++c)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const double wjk = q.weights[j] * q.weights[k];
        for (int i = 0; i < n; ++i)
          s += q.weights[i] * wjk * U.at(i, j, k, c) * V.at(i, j, k, c);
      }
  return s;
}

double interpolant_l2_norm(const Quadrature1D& q, const NodalScalarField& f) {
  // Degree N+1 integrates squares of degree-N polynomials exactly per
  // direction (2(N+1) - 1 = 2N + 1 >= 2N).
  const Quadrature1D fine = build_lgl(q.degree + 1);
  const int n = fine.n();
  double s = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double v = eval_interpolant(q, f, fine.nodes[i], fine.nodes[j],
                                          fine.nodes[k]);
        s += fine.weights[i] * fine.weights[j] * fine.weights[k] * v * v;
      }
  return std::sqrt(s);
}

FaceScalarField face_trace(const NodalScalarField& f, Face face) {
  const int N = f.degree();
  FaceScalarField t(N);
  for (int b = 0; b <= N; ++b)
    for (int a = 0; a <= N; ++a) {
      const auto [i, j, k] = face_node(face, a, b, N);
      t.at(a, b) = f.at(i, j, k);
    }
  return t;
}

double surface_integral(const Quadrature1D& q,
                        const std::array<FaceScalarField, 6>& g) {
  const int n = q.n();
  double s = 0;
  for (int f = 0; f < 6; ++f) {
    const double sign = face_side(static_cast<Face>(f)) == 0 ? -1.0 : 1.0;
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a)
        s += sign * q.weights[a] * q.weights[b] * g[f].at(a, b);
  }
  return s;
}

double surface_flux_integral(const Quadrature1D& q, const NodalVectorField& F) {
  const int n = q.n();
  double s = 0;
  for (int f = 0; f < 6; ++f) {
    const Face face = static_cast<Face>(f);
    const int m = face_dir(face);
    const double sign = face_side(face) == 0 ? -1.0 : 1.0;
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const auto [i, j, k] = face_node(face, a, b, q.degree);
        s += sign * q.weights[a] * q.weights[b] * F[m].at(i, j, k);
      }
  }
  return s;
}

namespace {

// Defect relative to the largest participating term, floored at 1 so that
// identities whose terms all cancel to roundoff stay meaningful.
double rel_defect(double lhs, std::initializer_list<double> terms) {
  double scale = 1.0;
  for (double t : terms) scale = std::max(scale, std::abs(t));
  return std::abs(lhs) / scale;
}

// Surface quadrature of the nodal product f * g over all faces, signed.
double surface_product(const Quadrature1D& q, const NodalVectorField& F,
                       const NodalScalarField& V) {
  const int n = q.n();
  double s = 0;
  for (int f = 0; f < 6; ++f) {
    const Face face = static_cast<Face>(f);
    const int m = face_dir(face);
    const double sign = face_side(face) == 0 ? -1.0 : 1.0;
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const auto [i, j, k] = face_node(face, a, b, q.degree);
        s += sign * q.weights[a] * q.weights[b] * F[m].at(i, j, k) * V.at(i, j, k);
      }
  }
  return s;
}

}  // namespace

double dxgl_defect(const Quadrature1D& q, const NodalVectorField& F,
                   const NodalScalarField& V) {
  const double t1 = inner_product(q, divergence(q, F), V);
  const double t2 = surface_product(q, F, V);
  const double t3 = vector_inner_product(q, F, gradient(q, V));
  return rel_defect(t1 - t2 + t3, {t1, t2, t3});
}

double dgl_defect(const Quadrature1D& q, const NodalVectorField& F) {
  NodalScalarField one(q.degree);
  std::fill(one.data(), one.data() + one.size(), 1.0);
  const double t1 = inner_product(q, divergence(q, F), one);
  const double t2 = surface_flux_integral(q, F);
  return rel_defect(t1 - t2, {t1, t2});
}

GreensDefects greens_defects(const Quadrature1D& q, const NodalScalarField& Phi,
                             const NodalScalarField& V) {
  const NodalVectorField gPhi = gradient(q, Phi);
  const NodalVectorField gV = gradient(q, V);
  const NodalScalarField lapPhi = divergence(q, gPhi);
  const NodalScalarField lapV = divergence(q, gV);

  GreensDefects d;
  {
    const double t1 = inner_product(q, lapPhi, V);
    const double t2 = vector_inner_product(q, gPhi, gV);
    const double t3 = surface_product(q, gPhi, V);
    d.first = rel_defect(t1 + t2 - t3, {t1, t2, t3});
  }
  {
    const double t1 = inner_product(q, lapPhi, V);
    const double t2 = inner_product(q, lapV, Phi);
    // The surface term is the quadrature of the pointwise difference so the
    // antisymmetric case Phi == V cancels exactly.
    const int n = q.n();
    double t3 = 0;
    for (int f = 0; f < 6; ++f) {
      const Face face = static_cast<Face>(f);
      const int m = face_dir(face);
      const double sign = face_side(face) == 0 ? -1.0 : 1.0;
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
          const auto [i, j, k] = face_node(face, a, b, q.degree);
          const double jump = gPhi[m].at(i, j, k) * V.at(i, j, k) -
                              gV[m].at(i, j, k) * Phi.at(i, j, k);
          t3 += sign * q.weights[a] * q.weights[b] * jump;
        }
    }
    d.second = rel_defect(t1 - t2 - t3, {t1, t2, t3});
  }
  return d;
}

double aliasing_defect(const Quadrature1D& q, const NodalScalarField& U,
                       const NodalScalarField& V) {
  NodalScalarField UV(q.degree);
  for (size_t t = 0; t < UV.size(); ++t)
    UV.data()[t] = U.data()[t] * V.data()[t];
  const NodalVectorField gUV = gradient(q, UV);
  const NodalVectorField gU = gradient(q, U);
  const NodalVectorField gV = gradient(q, V);

  double defect = 0, scale = 0;
  for (int m = 0; m < 3; ++m)
    for (size_t t = 0; t < UV.size(); ++t) {
      const double a = gUV[m].data()[t];
      const double b = U.data()[t] * gV[m].data()[t];
      const double c = V.data()[t] * gU[m].data()[t];
      defect = std::max(defect, std::abs(a - b - c));
      scale = std::max({scale, std::abs(a), std::abs(b), std::abs(c)});
    }
  return defect / std::max(1.0, scale);
}

}  // namespace splitdg
