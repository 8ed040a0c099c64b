// Serial reference assembly of the semidiscrete residual, written term by
// term against the calculus module's generic operations. The production
// kernels in solver.cpp must reproduce these values; tests compare the two.

#include <algorithm>
#include <cmath>
#include <vector>

#include "splitdg/calculus.hpp"
#include "splitdg/solver.hpp"

namespace splitdg {
namespace reference {

namespace {

// Nodal p x p block times the state at the same node, one component field
// at a time.
NodalStateField coeff_times(const std::vector<double>& blocks, int p,
                            const NodalStateField& U) {
  NodalStateField out(U.degree(), p);
  const size_t nnn = U.size() / p;
  for (size_t t = 0; t < nnn; ++t)
    for (int r = 0; r < p; ++r) {
      double s = 0;
      for (int c = 0; c < p; ++c)
        s += blocks[t * p * p + r * p + c] * U.data()[t + nnn * c];
      out.data()[t + nnn * r] = s;
    }
  return out;
}

NodalScalarField component(const NodalStateField& U, int c) {
  NodalScalarField f(U.degree());
  const size_t nnn = f.size();
  std::copy(U.comp(c), U.comp(c) + nnn, f.data());
  return f;
}

// The quadrature adjoint of the derivative, written as the literal weighted
// sum: out(n,m,l) = sum_i (w_i / w_n) D_in f(i,m,l) along the given axis.
NodalScalarField weak_derivative(const Quadrature1D& q,
                                 const NodalScalarField& f, int dir) {
  const int n = q.n();
  NodalScalarField out(q.degree);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int t = 0; t < n; ++t) {
          if (dir == 0)
            s += q.weights[t] / q.weights[i] * q.d(t, i) * f.at(t, j, k);
          else if (dir == 1)
            s += q.weights[t] / q.weights[j] * q.d(t, j) * f.at(i, t, k);
          else
            s += q.weights[t] / q.weights[k] * q.d(t, k) * f.at(i, j, t);
        }
        out.at(i, j, k) = s;
      }
  return out;
}

struct FaceFlux {
  // Outward-oriented interface flux per element face, node-major n^2 * p.
  std::vector<std::array<std::vector<double>, 6>> per_elem;
};

FaceFlux serial_face_flux(const SolverState& state) {
  const Discretization& disc = *state.disc;
  const Mesh& mesh = disc.mesh();
  const Quadrature1D& q = mesh.quad;
  const int n = q.n();
  const int N = mesh.degree;
  const int p = disc.ncomp();
  const size_t nn = static_cast<size_t>(n) * n;

  FaceFlux ff;
  ff.per_elem.resize(mesh.n_elements());
  for (auto& faces : ff.per_elem)
    for (auto& f : faces) f.assign(nn * p, 0.0);

  std::vector<double> UL(p), UR(p), fs(p);
  for (const InteriorFace& F : mesh.interior) {
    const auto& splits = disc.interior_split(
        static_cast<int>(&F - mesh.interior.data()));
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const size_t s = static_cast<size_t>(b) * n + a;
        const auto [li, lj, lk] = face_node(F.left_face, a, b, N);
        const auto [ri, rj, rk] = face_node(F.right_face, a, b, N);
        for (int c = 0; c < p; ++c) {
          UL[c] = state.U[F.left].at(li, lj, lk, c);
          UR[c] = state.U[F.right].at(ri, rj, rk, c);
        }
        numerical_flux(splits[s], UL.data(), UR.data(), state.sigma, fs.data());
        for (int c = 0; c < p; ++c) {
          ff.per_elem[F.left][static_cast<int>(F.left_face)][s * p + c] = fs[c];
          ff.per_elem[F.right][static_cast<int>(F.right_face)][s * p + c] = -fs[c];
        }
      }
  }

  std::vector<double> g(p, 0.0), gext(p);
  for (const BoundaryFace& F : mesh.boundary) {
    const int fi = static_cast<int>(&F - mesh.boundary.data());
    const auto& splits = disc.boundary_split(fi);
    const FaceGeometry& fg = mesh.elems[F.elem].faces[static_cast<int>(F.face)];
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const size_t s = static_cast<size_t>(b) * n + a;
        const auto [i, j, k] = face_node(F.face, a, b, N);
        for (int c = 0; c < p; ++c) UL[c] = state.U[F.elem].at(i, j, k, c);
        std::fill(g.begin(), g.end(), 0.0);
        if (disc.boundary()) disc.boundary()(fg.position[s], state.t, g.data());
        boundary_exterior_state(splits[s], UL.data(), g.data(), gext.data());
        numerical_flux(splits[s], UL.data(), gext.data(), 1.0, fs.data());
        for (int c = 0; c < p; ++c)
          ff.per_elem[F.elem][static_cast<int>(F.face)][s * p + c] = fs[c];
      }
  }
  return ff;
}

}  // namespace

std::vector<NodalStateField> residual(const SolverState& state, Form form) {
  const Discretization& disc = *state.disc;
  const Mesh& mesh = disc.mesh();
  const Quadrature1D& q = mesh.quad;
  const int n = q.n();
  const int N = mesh.degree;
  const int p = disc.ncomp();

  const FaceFlux ff = serial_face_flux(state);
  std::vector<NodalStateField> R;
  R.reserve(mesh.n_elements());

  for (int e = 0; e < mesh.n_elements(); ++e) {
    const NodalStateField& U = state.U[e];
    const ContravariantCoefficients& cc = disc.coeffs(e);
    const size_t nnn = U.size() / p;

    // Contravariant flux, one state field per reference direction.
    NodalStateVectorField Ft(N, p);
    for (int d = 0; d < 3; ++d) Ft[d] = coeff_times(cc.Atil[d], p, U);

    // Volume terms, per state component where they are componentwise.
    NodalStateField SD(N, p), WG(N, p), ADJ(N, p), AGRAD(N, p), ADIV(N, p);
    for (int c = 0; c < p; ++c) {
      NodalVectorField Fc(N);
      for (int d = 0; d < 3; ++d) Fc[d] = component(Ft[d], c);
      const NodalScalarField div = divergence(q, Fc);
      std::copy(div.data(), div.data() + nnn, SD.comp(c));

      NodalScalarField wg(N);
      for (int d = 0; d < 3; ++d) {
        const NodalScalarField wd = weak_derivative(q, Fc[d], d);
        for (size_t t = 0; t < nnn; ++t) wg.data()[t] += wd.data()[t];
      }
      std::copy(wg.data(), wg.data() + nnn, WG.comp(c));
    }
    {
      // Derivatives of the state, then the nodal coefficient blocks.
      NodalStateVectorField gradU(N, p), wgradU(N, p);
      for (int c = 0; c < p; ++c) {
        const NodalScalarField Uc = component(U, c);
        const NodalVectorField gc = gradient(q, Uc);
        for (int d = 0; d < 3; ++d) {
          std::copy(gc[d].data(), gc[d].data() + nnn, gradU[d].comp(c));
          const NodalScalarField wd = weak_derivative(q, Uc, d);
          std::copy(wd.data(), wd.data() + nnn, wgradU[d].comp(c));
        }
      }
      for (int d = 0; d < 3; ++d) {
        const NodalStateField a = coeff_times(cc.Atil[d], p, gradU[d]);
        const NodalStateField b = coeff_times(cc.Atil[d], p, wgradU[d]);
        for (size_t t = 0; t < nnn * p; ++t) {
          AGRAD.data()[t] += a.data()[t];
          ADJ.data()[t] += b.data()[t];
        }
      }
      ADIV = coeff_times(cc.divA, p, U);
    }

    NodalStateField T(N, p);
    double jump_coef = 0;
    switch (form) {
      case Form::DGSEM:
        for (size_t t = 0; t < nnn * p; ++t) T.data()[t] = -WG.data()[t];
        break;
      case Form::W:
        for (size_t t = 0; t < nnn * p; ++t)
          T.data()[t] =
              -0.5 * (WG.data()[t] + ADJ.data()[t] - ADIV.data()[t]);
        break;
      case Form::S:
        jump_coef = 1.0;
        for (size_t t = 0; t < nnn * p; ++t)
          T.data()[t] =
              0.5 * (SD.data()[t] + AGRAD.data()[t] + ADIV.data()[t]);
        break;
      case Form::SC:
        jump_coef = 1.0;
        for (size_t t = 0; t < nnn * p; ++t)
          T.data()[t] =
              SD.data()[t] + 0.5 * (AGRAD.data()[t] + ADIV.data()[t] -
                                    SD.data()[t]);
        break;
      case Form::DS:
        jump_coef = 0.5;
        for (size_t t = 0; t < nnn * p; ++t)
          T.data()[t] =
              0.5 * (SD.data()[t] - ADJ.data()[t] + ADIV.data()[t]);
        break;
    }

    for (int f = 0; f < 6; ++f) {
      const Face face = static_cast<Face>(f);
      const int d = face_dir(face);
      const double outward = face_side(face) == 0 ? -1.0 : 1.0;
      const double wend = q.weights[face_side(face) == 0 ? 0 : N];
      const std::vector<double>& fstar = ff.per_elem[e][f];
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
          const size_t s = static_cast<size_t>(b) * n + a;
          const auto [i, j, k] = face_node(face, a, b, N);
          for (int c = 0; c < p; ++c) {
            const double own = outward * Ft[d].at(i, j, k, c);
            T.at(i, j, k, c) += (fstar[s * p + c] - jump_coef * own) / wend;
          }
        }
    }

    NodalStateField r(N, p);
    const NodalScalarField& J = mesh.elems[e].jac;
    for (size_t t = 0; t < nnn; ++t)
      for (int c = 0; c < p; ++c)
        r.data()[t + nnn * c] = -T.data()[t + nnn * c] / J.data()[t];
    R.push_back(std::move(r));
  }
  return R;
}

}  // namespace reference
}  // namespace splitdg
