#include "splitdg/system.hpp"

#include <cmath>

#include "splitdg/calculus.hpp"

namespace splitdg {

HyperbolicSystem make_advection_constant(const Vec3& a) {
  HyperbolicSystem s;
  s.name = "advection";
  s.p = 1;
  s.coeff = [a](const Vec3&, int m) {
    SmallMat A(1);
    A(0, 0) = a[m];
    return A;
  };
  s.coeff_divergence = [](const Vec3&) { return SmallMat(1); };
  s.eigen = [a](const Vec3& alpha, const Vec3&) {
    EigenDecomp e;
    e.p = 1;
    e.R = SmallMat::identity(1);
    e.Rinv = SmallMat::identity(1);
    e.lambda[0] = dot(alpha, a);
    return e;
  };
  s.wave_speed = [a](const Vec3&) { return norm(a); };
  return s;
}

HyperbolicSystem make_advection_shear(const Vec3& a0, double eps) {
  auto velocity = [a0, eps](const Vec3& x) {
    const double twopi = 2.0 * M_PI;
    return Vec3{a0.x + eps * std::sin(twopi * x.y) * std::sin(twopi * x.z),
                a0.y + eps * std::sin(twopi * x.z) * std::sin(twopi * x.x),
                a0.z + eps * std::sin(twopi * x.x) * std::sin(twopi * x.y)};
  };
  HyperbolicSystem s;
  s.name = "advection";
  s.p = 1;
  s.coeff = [velocity](const Vec3& x, int m) {
    SmallMat A(1);
    A(0, 0) = velocity(x)[m];
    return A;
  };
  // Each velocity component is independent of its own coordinate.
  s.coeff_divergence = [](const Vec3&) { return SmallMat(1); };
  s.eigen = [velocity](const Vec3& alpha, const Vec3& x) {
    EigenDecomp e;
    e.p = 1;
    e.R = SmallMat::identity(1);
    e.Rinv = SmallMat::identity(1);
    e.lambda[0] = dot(alpha, velocity(x));
    return e;
  };
  s.wave_speed = [velocity](const Vec3& x) { return norm(velocity(x)); };
  return s;
}

HyperbolicSystem make_advection_vortex(double amp) {
  auto velocity = [amp](const Vec3& x) {
    auto B = [](double t) {
      const double s = std::sin(M_PI * t);
      return s * s;
    };
    auto dB = [](double t) { return M_PI * std::sin(2.0 * M_PI * t); };
    const double bx = B(x.x), by = B(x.y), bz = B(x.z);
    const double cx = dB(x.x), cy = dB(x.y), cz = dB(x.z);
    // curl of B(x)B(y)B(z) * (1,1,1).
    return Vec3{amp * (bx * cy * bz - bx * by * cz),
                amp * (bx * by * cz - cx * by * bz),
                amp * (cx * by * bz - bx * cy * bz)};
  };
  HyperbolicSystem s;
  s.name = "advection";
  s.p = 1;
  s.coeff = [velocity](const Vec3& x, int m) {
    SmallMat A(1);
    A(0, 0) = velocity(x)[m];
    return A;
  };
  s.coeff_divergence = [](const Vec3&) { return SmallMat(1); };
  s.eigen = [velocity](const Vec3& alpha, const Vec3& x) {
    EigenDecomp e;
    e.p = 1;
    e.R = SmallMat::identity(1);
    e.Rinv = SmallMat::identity(1);
    e.lambda[0] = dot(alpha, velocity(x));
    return e;
  };
  s.wave_speed = [velocity](const Vec3& x) { return norm(velocity(x)); };
  return s;
}

HyperbolicSystem make_acoustics(double c) {
  HyperbolicSystem s;
  s.name = "acoustics";
  s.p = 4;
  s.coeff = [c](const Vec3&, int m) {
    SmallMat A(4);
    A(m, 3) = c;
    A(3, m) = c;
    return A;
  };
  s.coeff_divergence = [](const Vec3&) { return SmallMat(4); };
  s.eigen = [c](const Vec3& alpha, const Vec3&) {
    EigenDecomp e;
    e.p = 4;
    const double w = norm(alpha);
    if (w == 0.0) {
      e.R = SmallMat::identity(4);
      e.Rinv = SmallMat::identity(4);
      return e;
    }
    const Vec3 nh = alpha * (1.0 / w);
    // Tangent pair: cross against the axis least aligned with the normal.
    int axis = 0;
    double amin = std::abs(nh.x);
    if (std::abs(nh.y) < amin) { axis = 1; amin = std::abs(nh.y); }
    if (std::abs(nh.z) < amin) axis = 2;
    Vec3 ev{};
    ev[axis] = 1.0;
    Vec3 t1 = cross(nh, ev);
    t1 = t1 * (1.0 / norm(t1));
    const Vec3 t2 = cross(nh, t1);

    const double r = 1.0 / std::sqrt(2.0);
    SmallMat R(4);
    // Columns: outgoing and incoming pressure waves, then the two shear
    // directions carried with zero speed.
    for (int m = 0; m < 3; ++m) {
      R(m, 0) = r * nh[m];
      R(m, 1) = r * nh[m];
      R(m, 2) = t1[m];
      R(m, 3) = t2[m];
    }
    R(3, 0) = r;
    R(3, 1) = -r;
    e.R = R;
    e.Rinv = R.transposed();  // orthonormal columns
    e.lambda[0] = c * w;
    e.lambda[1] = -c * w;
    e.lambda[2] = 0.0;
    e.lambda[3] = 0.0;
    return e;
  };
  s.wave_speed = [c](const Vec3&) { return c; };
  return s;
}

NormalSplit normal_split(const HyperbolicSystem& sys, const Vec3& alpha,
                         const Vec3& x) {
  NormalSplit ns;
  ns.p = sys.p;
  ns.W = SmallMat(sys.p);
  for (int m = 0; m < 3; ++m) {
    const SmallMat Am = sys.coeff(x, m);
    for (int i = 0; i < sys.p * sys.p; ++i)
      ns.W.data()[i] += alpha[m] * Am.data()[i];
  }
  ns.eig = sys.eigen(alpha, x);

  auto assemble = [&](auto f) {
    SmallMat L(sys.p);
    for (int i = 0; i < sys.p; ++i) L(i, i) = f(ns.eig.lambda[i]);
    return ns.eig.R * L * ns.eig.Rinv;
  };
  ns.absW = assemble([](double l) { return std::abs(l); });
  ns.Wplus = assemble([](double l) { return 0.5 * (l + std::abs(l)); });
  ns.Wminus = assemble([](double l) { return 0.5 * (l - std::abs(l)); });
  ns.sqrt_absWminus =
      assemble([](double l) { return std::sqrt(0.5 * (std::abs(l) - l)); });
  return ns;
}

void numerical_flux(const NormalSplit& ns, const double* UL, const double* UR,
                    double sigma, double* out) {
  const int p = ns.p;
  double avg[SmallMat::MaxDim], jump[SmallMat::MaxDim];
  double central[SmallMat::MaxDim], diss[SmallMat::MaxDim];
  for (int i = 0; i < p; ++i) {
    avg[i] = 0.5 * (UL[i] + UR[i]);
    jump[i] = UR[i] - UL[i];
  }
  ns.W.apply(avg, central);
  ns.absW.apply(jump, diss);
  for (int i = 0; i < p; ++i) out[i] = central[i] - 0.5 * sigma * diss[i];
}

double interface_dissipation(const NormalSplit& ns, const double* UL,
                             const double* UR, double sigma) {
  const int p = ns.p;
  double fstar[SmallMat::MaxDim], wl[SmallMat::MaxDim], wr[SmallMat::MaxDim];
  numerical_flux(ns, UL, UR, sigma, fstar);
  ns.W.apply(UL, wl);
  ns.W.apply(UR, wr);
  double s = 0;
  for (int i = 0; i < p; ++i) {
    s += fstar[i] * (UR[i] - UL[i]);
    s -= 0.5 * (wr[i] * UR[i] - wl[i] * UL[i]);
  }
  return s;
}

void boundary_exterior_state(const NormalSplit& ns, const double* U,
                             const double* g, double* out) {
  const int p = ns.p;
  double wu[SmallMat::MaxDim], wg[SmallMat::MaxDim], wmix[SmallMat::MaxDim];
  ns.eig.Rinv.apply(U, wu);
  ns.eig.Rinv.apply(g, wg);
  for (int i = 0; i < p; ++i)
    wmix[i] = ns.eig.lambda[i] < 0 ? wg[i] : wu[i];
  ns.eig.R.apply(wmix, out);
}

BoundaryEnergy boundary_energy_parts(const NormalSplit& ns, const double* U,
                                     const double* g) {
  const int p = ns.p;
  double gext[SmallMat::MaxDim], fstar[SmallMat::MaxDim];
  boundary_exterior_state(ns, U, g, gext);
  numerical_flux(ns, U, gext, 1.0, fstar);

  double wu[SmallMat::MaxDim];
  ns.W.apply(U, wu);
  BoundaryEnergy be;
  for (int i = 0; i < p; ++i)
    be.flux_side += (fstar[i] - 0.5 * wu[i]) * U[i];

  double pu[SmallMat::MaxDim], dmg[SmallMat::MaxDim], mg[SmallMat::MaxDim];
  ns.Wplus.apply(U, pu);
  double diff[SmallMat::MaxDim];
  for (int i = 0; i < p; ++i) diff[i] = U[i] - g[i];
  // |W-| = -Wminus
  ns.Wminus.apply(diff, dmg);
  ns.Wminus.apply(g, mg);
  for (int i = 0; i < p; ++i) {
    be.split_side += 0.5 * U[i] * pu[i];
    be.split_side += 0.5 * diff[i] * (-dmg[i]);
    be.split_side -= 0.5 * g[i] * (-mg[i]);
  }
  return be;
}

ContravariantCoefficients contravariant_coeffs(const HyperbolicSystem& sys,
                                               const ElementGeometry& geom,
                                               const Quadrature1D& q) {
  const int n = q.n();
  const int p = sys.p;
  const size_t nn = static_cast<size_t>(n) * n * n;
  ContravariantCoefficients cc;
  cc.degree = q.degree;
  cc.p = p;
  for (int d = 0; d < 3; ++d) cc.Atil[d].assign(nn * p * p, 0.0);
  cc.divA.assign(nn * p * p, 0.0);

  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const size_t t = geom.X[0].idx(i, j, k);
        const Vec3 x{geom.X[0].data()[t], geom.X[1].data()[t],
                     geom.X[2].data()[t]};
        for (int m = 0; m < 3; ++m) {
          const SmallMat Am = sys.coeff(x, m);
          for (int d = 0; d < 3; ++d) {
            const double w = geom.contra[d][m].data()[t];
            double* blk = cc.Atil[d].data() + t * p * p;
            for (int r = 0; r < p; ++r)
              for (int c = 0; c < p; ++c) blk[r * p + c] += w * Am(r, c);
          }
        }
      }

  // Entrywise collocation divergence of the interpolated coefficients.
  std::vector<double> entry(nn), dentry(nn);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < p; ++c) {
      for (int d = 0; d < 3; ++d) {
        for (size_t t = 0; t < nn; ++t)
          entry[t] = cc.Atil[d][t * p * p + r * p + c];
        apply_matrix_dir(q.degree, q.diff.data(), entry.data(), dentry.data(), d);
        for (size_t t = 0; t < nn; ++t)
          cc.divA[t * p * p + r * p + c] += dentry[t];
      }
    }
  return cc;
}

}  // namespace splitdg
