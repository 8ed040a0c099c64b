#include "splitdg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "splitdg/calculus.hpp"
#include "splitdg/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace splitdg {

namespace {

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

}  // namespace

const char* form_name(Form f) {
  switch (f) {
    case Form::DGSEM: return "DGSEM";
    case Form::W: return "W";
    case Form::S: return "S";
    case Form::SC: return "SC";
    case Form::DS: return "DS";
  }
  return "?";
}

Discretization::Discretization(Mesh mesh, HyperbolicSystem sys, BoundaryFn g,
                               int threads)
    : mesh_(std::move(mesh)), sys_(std::move(sys)), g_(std::move(g)),
      threads_(threads) {
  const Quadrature1D& q = mesh_.quad;
  const int n = q.n();
  const int ne = mesh_.n_elements();

  coeffs_.resize(ne);
  const int nt = resolve_threads(threads_);
#pragma omp parallel for num_threads(nt) schedule(static)
  for (int e = 0; e < ne; ++e)
    coeffs_[e] = contravariant_coeffs(sys_, mesh_.elems[e], q);

  weak_diff_.resize(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      weak_diff_[static_cast<size_t>(r) * n + c] =
          q.weights[c] / q.weights[r] * q.d(c, r);

  interior_split_.resize(mesh_.interior.size());
  for (size_t f = 0; f < mesh_.interior.size(); ++f) {
    const InteriorFace& F = mesh_.interior[f];
    const FaceGeometry& fg =
        mesh_.elems[F.left].faces[static_cast<int>(F.left_face)];
    auto& splits = interior_split_[f];
    splits.reserve(static_cast<size_t>(n) * n);
    for (int s = 0; s < n * n; ++s)
      splits.push_back(normal_split(sys_, fg.normal_flux[s], fg.position[s]));
  }
  boundary_split_.resize(mesh_.boundary.size());
  for (size_t f = 0; f < mesh_.boundary.size(); ++f) {
    const BoundaryFace& F = mesh_.boundary[f];
    const FaceGeometry& fg = mesh_.elems[F.elem].faces[static_cast<int>(F.face)];
    auto& splits = boundary_split_[f];
    splits.reserve(static_cast<size_t>(n) * n);
    for (int s = 0; s < n * n; ++s)
      splits.push_back(normal_split(sys_, fg.normal_flux[s], fg.position[s]));
  }

  elem_faces_.resize(ne);
  for (size_t f = 0; f < mesh_.interior.size(); ++f) {
    const InteriorFace& F = mesh_.interior[f];
    elem_faces_[F.left][static_cast<int>(F.left_face)] =
        FaceRef{false, static_cast<int>(f), 1.0};
    elem_faces_[F.right][static_cast<int>(F.right_face)] =
        FaceRef{false, static_cast<int>(f), -1.0};
  }
  for (size_t f = 0; f < mesh_.boundary.size(); ++f) {
    const BoundaryFace& F = mesh_.boundary[f];
    elem_faces_[F.elem][static_cast<int>(F.face)] =
        FaceRef{true, static_cast<int>(f), 1.0};
  }

  max_speed_ = 0;
  for (const ElementGeometry& eg : mesh_.elems)
    for (size_t t = 0; t < eg.X[0].size(); ++t) {
      const Vec3 x{eg.X[0].data()[t], eg.X[1].data()[t], eg.X[2].data()[t]};
      max_speed_ = std::max(max_speed_, sys_.wave_speed(x));
    }
}

SolverState make_state(std::shared_ptr<const Discretization> disc, Form form,
                       double sigma) {
  SolverState s;
  s.disc = std::move(disc);
  s.form = form;
  s.sigma = sigma;
  const int ne = s.disc->mesh().n_elements();
  s.U.reserve(ne);
  for (int e = 0; e < ne; ++e)
    s.U.emplace_back(s.disc->degree(), s.disc->ncomp());
  return s;
}

void set_state(SolverState& state, const StateFn& u0) {
  const Mesh& mesh = state.disc->mesh();
  const int p = state.disc->ncomp();
  double buf[SmallMat::MaxDim];
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry& eg = mesh.elems[e];
    NodalStateField& U = state.U[e];
    const size_t nnn = eg.X[0].size();
    for (size_t t = 0; t < nnn; ++t) {
      const Vec3 x{eg.X[0].data()[t], eg.X[1].data()[t], eg.X[2].data()[t]};
      u0(x, buf);
      for (int c = 0; c < p; ++c) U.data()[t + nnn * c] = buf[c];
    }
  }
}

void randomize_state(SolverState& state, std::uint64_t seed) {
  UniformPM1 rng(seed);
  for (NodalStateField& U : state.U)
    for (size_t t = 0; t < U.size(); ++t) U.data()[t] = rng();
}

FaceExchange face_exchange(const SolverState& state) {
  const Discretization& disc = *state.disc;
  const Mesh& mesh = disc.mesh();
  const int n = mesh.quad.n();
  const int N = mesh.degree;
  const int p = disc.ncomp();
  const size_t nn = static_cast<size_t>(n) * n;
  const int nt = resolve_threads(disc.threads());

  FaceExchange ex;
  ex.interior.resize(mesh.interior.size());
  ex.boundary.resize(mesh.boundary.size());

  const int nif = static_cast<int>(mesh.interior.size());
#pragma omp parallel for num_threads(nt) schedule(static)
  for (int f = 0; f < nif; ++f) {
    const InteriorFace& F = mesh.interior[f];
    auto& d = ex.interior[f];
    d.UL.resize(nn * p);
    d.UR.resize(nn * p);
    d.fstar.resize(nn * p);
    const NodalStateField& UL = state.U[F.left];
    const NodalStateField& UR = state.U[F.right];
    const size_t nnn = UL.size() / p;
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const size_t s = static_cast<size_t>(b) * n + a;
        const auto [li, lj, lk] = face_node(F.left_face, a, b, N);
        const auto [ri, rj, rk] = face_node(F.right_face, a, b, N);
        const size_t lt = UL.idx(li, lj, lk, 0);
        const size_t rt = UR.idx(ri, rj, rk, 0);
        for (int c = 0; c < p; ++c) {
          d.UL[s * p + c] = UL.data()[lt + nnn * c];
          d.UR[s * p + c] = UR.data()[rt + nnn * c];
        }
      }
    const auto& splits = disc.interior_split(f);
    for (size_t s = 0; s < nn; ++s)
      numerical_flux(splits[s], &d.UL[s * p], &d.UR[s * p], state.sigma,
                     &d.fstar[s * p]);
  }

  const int nbf = static_cast<int>(mesh.boundary.size());
  const BoundaryFn& g = disc.boundary();
#pragma omp parallel for num_threads(nt) schedule(static)
  for (int f = 0; f < nbf; ++f) {
    const BoundaryFace& F = mesh.boundary[f];
    const FaceGeometry& fg = mesh.elems[F.elem].faces[static_cast<int>(F.face)];
    auto& d = ex.boundary[f];
    d.U.resize(nn * p);
    d.gext.resize(nn * p);
    d.fstar.resize(nn * p);
    const NodalStateField& U = state.U[F.elem];
    const size_t nnn = U.size() / p;
    double graw[SmallMat::MaxDim] = {0};
    const auto& splits = disc.boundary_split(f);
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const size_t s = static_cast<size_t>(b) * n + a;
        const auto [i, j, k] = face_node(F.face, a, b, N);
        const size_t t = U.idx(i, j, k, 0);
        for (int c = 0; c < p; ++c) d.U[s * p + c] = U.data()[t + nnn * c];
        if (g) {
          g(fg.position[s], state.t, graw);
        } else {
          std::fill(graw, graw + p, 0.0);
        }
        boundary_exterior_state(splits[s], &d.U[s * p], graw, &d.gext[s * p]);
        // Boundary interfaces are always fully upwind.
        numerical_flux(splits[s], &d.U[s * p], &d.gext[s * p], 1.0,
                       &d.fstar[s * p]);
      }
  }
  return ex;
}

namespace {

// Per-thread scratch for one element's volume terms.
struct Workspace {
  size_t nnn = 0;
  int p = 0;
  std::array<std::vector<double>, 3> flux;  // contravariant flux per direction
  std::vector<double> t1, t2, acc;

  Workspace(int degree, int ncomp) {
    const size_t n = degree + 1;
    nnn = n * n * n;
    p = ncomp;
    for (auto& f : flux) f.resize(nnn * p);
    t1.resize(nnn * p);
    t2.resize(nnn * p);
    acc.resize(nnn * p);
  }
};

// out += coef * sum_d apply(M along d) of the three flux fields.
void add_flux_derivative(int degree, const double* M,
                         const std::array<std::vector<double>, 3>& flux, int p,
                         double coef, std::vector<double>& tmp, double* out) {
  const size_t nnn = flux[0].size() / p;
  for (int d = 0; d < 3; ++d)
    for (int c = 0; c < p; ++c) {
      apply_matrix_dir(degree, M, flux[d].data() + nnn * c, tmp.data() + nnn * c,
                       d);
      const double* src = tmp.data() + nnn * c;
      double* dst = out + nnn * c;
      for (size_t t = 0; t < nnn; ++t) dst[t] += coef * src[t];
    }
}

// out += coef * sum_d Atil^d (M_d U): derivative of the state first, then
// the nodal coefficient matrix.
void add_coeff_derivative(int degree, const double* M,
                          const ContravariantCoefficients& cc, const double* U,
                          double coef, std::vector<double>& tmp, double* out) {
  const int p = cc.p;
  const size_t nnn = tmp.size() / p;
  double u[SmallMat::MaxDim], f[SmallMat::MaxDim];
  for (int d = 0; d < 3; ++d) {
    for (int c = 0; c < p; ++c)
      apply_matrix_dir(degree, M, U + nnn * c, tmp.data() + nnn * c, d);
    for (size_t t = 0; t < nnn; ++t) {
      for (int c = 0; c < p; ++c) u[c] = tmp[t + nnn * c];
      const double* blk = cc.atil(d, t);
      for (int r = 0; r < p; ++r) {
        double s = 0;
        for (int c = 0; c < p; ++c) s += blk[r * p + c] * u[c];
        f[r] = s;
      }
      for (int c = 0; c < p; ++c) out[t + nnn * c] += coef * f[c];
    }
  }
}

// out += coef * (div Atil)(node) U(node)
void add_coeff_divergence(const ContravariantCoefficients& cc, const double* U,
                          double coef, size_t nnn, double* out) {
  const int p = cc.p;
  double u[SmallMat::MaxDim];
  for (size_t t = 0; t < nnn; ++t) {
    for (int c = 0; c < p; ++c) u[c] = U[t + nnn * c];
    const double* blk = cc.div_at(t);
    for (int r = 0; r < p; ++r) {
      double s = 0;
      for (int c = 0; c < p; ++c) s += blk[r * p + c] * u[c];
      out[t + nnn * r] += coef * s;
    }
  }
}

void element_residual(const SolverState& state, Form form, int e,
                      const FaceExchange& ex, Workspace& ws,
                      NodalStateField& out) {
  const Discretization& disc = *state.disc;
  const Quadrature1D& q = disc.quad();
  const int N = disc.degree();
  const int n = q.n();
  const int p = disc.ncomp();
  const size_t nnn = ws.nnn;
  const NodalStateField& U = state.U[e];
  const ContravariantCoefficients& cc = disc.coeffs(e);
  const ElementGeometry& eg = disc.mesh().elems[e];

  // Contravariant flux Ftil^d = Atil^d U at every node.
  double u[SmallMat::MaxDim];
  for (size_t t = 0; t < nnn; ++t) {
    for (int c = 0; c < p; ++c) u[c] = U.data()[t + nnn * c];
    for (int d = 0; d < 3; ++d) {
      const double* blk = cc.atil(d, t);
      for (int r = 0; r < p; ++r) {
        double s = 0;
        for (int c = 0; c < p; ++c) s += blk[r * p + c] * u[c];
        ws.flux[d][t + nnn * r] = s;
      }
    }
  }

  double* T = ws.acc.data();
  std::fill(ws.acc.begin(), ws.acc.end(), 0.0);
  const double* D = q.diff.data();
  const double* G = disc.weak_diff().data();

  double jump_coef = 0;
  switch (form) {
    case Form::DGSEM:
      add_flux_derivative(N, G, ws.flux, p, -1.0, ws.t1, T);
      break;
    case Form::W:
      add_flux_derivative(N, G, ws.flux, p, -0.5, ws.t1, T);
      add_coeff_derivative(N, G, cc, U.data(), -0.5, ws.t1, T);
      add_coeff_divergence(cc, U.data(), 0.5, nnn, T);
      break;
    case Form::S:
      jump_coef = 1.0;
      add_flux_derivative(N, D, ws.flux, p, 0.5, ws.t1, T);
      add_coeff_derivative(N, D, cc, U.data(), 0.5, ws.t1, T);
      add_coeff_divergence(cc, U.data(), 0.5, nnn, T);
      break;
    case Form::SC: {
      jump_coef = 1.0;
      // Strong divergence plus the explicit correction block.
      std::fill(ws.t2.begin(), ws.t2.end(), 0.0);
      add_flux_derivative(N, D, ws.flux, p, 1.0, ws.t1, ws.t2.data());
      for (size_t t = 0; t < nnn * p; ++t) T[t] += ws.t2[t];
      std::vector<double>& corr = ws.t2;  // becomes 1/2(AgradU + divA U - SD)
      for (size_t t = 0; t < nnn * p; ++t) corr[t] *= -0.5;
      add_coeff_derivative(N, D, cc, U.data(), 0.5, ws.t1, corr.data());
      add_coeff_divergence(cc, U.data(), 0.5, nnn, corr.data());
      for (size_t t = 0; t < nnn * p; ++t) T[t] += corr[t];
      break;
    }
    case Form::DS:
      jump_coef = 0.5;
      add_flux_derivative(N, D, ws.flux, p, 0.5, ws.t1, T);
      add_coeff_derivative(N, G, cc, U.data(), -0.5, ws.t1, T);
      add_coeff_divergence(cc, U.data(), 0.5, nnn, T);
      break;
  }

  // Surface contributions at the face nodes.
  const auto& refs = disc.faces_of(e);
  for (int f = 0; f < 6; ++f) {
    const Face face = static_cast<Face>(f);
    const int d = face_dir(face);
    const double outward = face_side(face) == 0 ? -1.0 : 1.0;
    const Discretization::FaceRef& fr = refs[f];
    const double* fstar = fr.is_boundary ? ex.boundary[fr.index].fstar.data()
                                         : ex.interior[fr.index].fstar.data();
    const double wend = q.weights[face_side(face) == 0 ? 0 : N];
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const size_t s = static_cast<size_t>(b) * n + a;
        const auto [i, j, k] = face_node(face, a, b, N);
        const size_t t = U.idx(i, j, k, 0);
        for (int c = 0; c < p; ++c) {
          const double fs = fr.sign * fstar[s * p + c];
          const double own = outward * ws.flux[d][t + nnn * c];
          T[t + nnn * c] += (fs - jump_coef * own) / wend;
        }
      }
  }

  for (size_t t = 0; t < nnn; ++t) {
    const double invJ = 1.0 / eg.jac.data()[t];
    for (int c = 0; c < p; ++c)
      out.data()[t + nnn * c] = -T[t + nnn * c] * invJ;
  }
}

}  // namespace

std::vector<NodalStateField> residual(const SolverState& state, Form form) {
  const Discretization& disc = *state.disc;
  const int ne = disc.mesh().n_elements();
  const FaceExchange ex = face_exchange(state);
  std::vector<NodalStateField> R(ne);
  for (int e = 0; e < ne; ++e) R[e] = NodalStateField(disc.degree(), disc.ncomp());

  const int nt = resolve_threads(disc.threads());
#pragma omp parallel num_threads(nt)
  {
    Workspace ws(disc.degree(), disc.ncomp());
#pragma omp for schedule(static)
    for (int e = 0; e < ne; ++e) element_residual(state, form, e, ex, ws, R[e]);
  }
  return R;
}

std::vector<NodalStateField> residual(const SolverState& state) {
  return residual(state, state.form);
}

std::vector<NodalStateField> correction_term(const SolverState& state) {
  const Discretization& disc = *state.disc;
  const Quadrature1D& q = disc.quad();
  const int ne = disc.mesh().n_elements();
  const int p = disc.ncomp();
  std::vector<NodalStateField> C(ne);
  for (int e = 0; e < ne; ++e) C[e] = NodalStateField(disc.degree(), p);

  const int nt = resolve_threads(disc.threads());
#pragma omp parallel num_threads(nt)
  {
    Workspace ws(disc.degree(), p);
#pragma omp for schedule(static)
    for (int e = 0; e < ne; ++e) {
      const NodalStateField& U = state.U[e];
      const ContravariantCoefficients& cc = disc.coeffs(e);
      const size_t nnn = ws.nnn;
      double u[SmallMat::MaxDim];
      for (size_t t = 0; t < nnn; ++t) {
        for (int c = 0; c < p; ++c) u[c] = U.data()[t + nnn * c];
        for (int d = 0; d < 3; ++d) {
          const double* blk = cc.atil(d, t);
          for (int r = 0; r < p; ++r) {
            double s = 0;
            for (int c = 0; c < p; ++c) s += blk[r * p + c] * u[c];
            ws.flux[d][t + nnn * r] = s;
          }
        }
      }
      std::fill(ws.acc.begin(), ws.acc.end(), 0.0);
      add_flux_derivative(disc.degree(), q.diff.data(), ws.flux, p, -0.5, ws.t1,
                          ws.acc.data());
      add_coeff_derivative(disc.degree(), q.diff.data(), cc, U.data(), 0.5,
                           ws.t1, ws.acc.data());
      add_coeff_divergence(cc, U.data(), 0.5, nnn, ws.acc.data());
      const ElementGeometry& eg = disc.mesh().elems[e];
      for (size_t t = 0; t < nnn; ++t) {
        const double invJ = 1.0 / eg.jac.data()[t];
        for (int c = 0; c < p; ++c)
          C[e].data()[t + nnn * c] = -ws.acc[t + nnn * c] * invJ;
      }
    }
  }
  return C;
}

}  // namespace splitdg
