#include <algorithm>
#include <cmath>

#include "splitdg/calculus.hpp"
#include "splitdg/solver.hpp"

namespace splitdg {

namespace {

// (J F, G)_N summed over elements, in element order for determinism.
double weighted_inner(const SolverState& state,
                      const std::vector<NodalStateField>& F,
                      const std::vector<NodalStateField>& G) {
  const Mesh& mesh = state.disc->mesh();
  const Quadrature1D& q = mesh.quad;
  const int n = q.n();
  const int p = state.disc->ncomp();
  double total = 0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const NodalScalarField& J = mesh.elems[e].jac;
    const size_t nnn = J.size();
    double acc = 0;
    for (int c = 0; c < p; ++c) {
      const double* f = F[e].data() + nnn * c;
      const double* g = G[e].data() + nnn * c;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          const double wjk = q.weights[j] * q.weights[k];
          const size_t base = J.idx(0, j, k);
          for (int i = 0; i < n; ++i)
            acc += q.weights[i] * wjk * J.data()[base + i] * f[base + i] *
                   g[base + i];
        }
    }
    total += acc;
  }
  return total;
}

std::vector<double> flux_rate_from_exchange(const SolverState& state,
                                            const FaceExchange& ex) {
  const Mesh& mesh = state.disc->mesh();
  const Quadrature1D& q = mesh.quad;
  const int n = q.n();
  const int p = state.disc->ncomp();
  std::vector<double> bf(p, 0.0);
  for (size_t f = 0; f < ex.boundary.size(); ++f) {
    const auto& d = ex.boundary[f];
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const size_t s = static_cast<size_t>(b) * n + a;
        const double w = q.weights[a] * q.weights[b];
        for (int c = 0; c < p; ++c) bf[c] += w * d.fstar[s * p + c];
      }
  }
  return bf;
}

}  // namespace

double total_energy(const SolverState& state) {
  return weighted_inner(state, state.U, state.U);
}

double semidiscrete_energy_rate(const SolverState& state) {
  const std::vector<NodalStateField> R = residual(state);
  return 2.0 * weighted_inner(state, R, state.U);
}

std::vector<double> conserved_integrals(const SolverState& state) {
  const Mesh& mesh = state.disc->mesh();
  const Quadrature1D& q = mesh.quad;
  const int n = q.n();
  const int p = state.disc->ncomp();
  std::vector<double> out(p, 0.0);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const NodalScalarField& J = mesh.elems[e].jac;
    const size_t nnn = J.size();
    for (int c = 0; c < p; ++c) {
      const double* u = state.U[e].data() + nnn * c;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          const double wjk = q.weights[j] * q.weights[k];
          const size_t base = J.idx(0, j, k);
          for (int i = 0; i < n; ++i)
            out[c] += q.weights[i] * wjk * J.data()[base + i] * u[base + i];
        }
    }
  }
  return out;
}

std::vector<double> boundary_flux_rate(const SolverState& state) {
  return flux_rate_from_exchange(state, face_exchange(state));
}

double conservation_defect(const SolverState& state) {
  const Mesh& mesh = state.disc->mesh();
  const Quadrature1D& q = mesh.quad;
  const int n = q.n();
  const int p = state.disc->ncomp();
  const std::vector<NodalStateField> R = residual(state);
  const std::vector<double> bf = boundary_flux_rate(state);

  double defect = 0;
  for (int c = 0; c < p; ++c) {
    double ddt = 0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const NodalScalarField& J = mesh.elems[e].jac;
      const size_t nnn = J.size();
      const double* r = R[e].data() + nnn * c;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          const double wjk = q.weights[j] * q.weights[k];
          const size_t base = J.idx(0, j, k);
          for (int i = 0; i < n; ++i)
            ddt += q.weights[i] * wjk * J.data()[base + i] * r[base + i];
        }
    }
    const double scale = std::max({1.0, std::abs(ddt), std::abs(bf[c])});
    defect = std::max(defect, std::abs(ddt + bf[c]) / scale);
  }
  return defect;
}

double gamma_hat(const Discretization& disc) {
  const Mesh& mesh = disc.mesh();
  const int p = disc.ncomp();
  double g = 0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ContravariantCoefficients& cc = disc.coeffs(e);
    const NodalScalarField& J = mesh.elems[e].jac;
    for (size_t t = 0; t < J.size(); ++t) {
      SmallMat m(p);
      const double* blk = cc.div_at(t);
      for (int i = 0; i < p * p; ++i) m.data()[i] = blk[i] / J.data()[t];
      g = std::max(g, 0.5 * sym_two_norm(m));
    }
  }
  return g;
}

double stable_dt(const Discretization& disc, double cfl) {
  const double lam = std::max(disc.max_wave_speed(), 1e-300);
  return cfl * disc.mesh().h_min / ((2.0 * disc.degree() + 1.0) * lam);
}

void rk4_step(SolverState& state, double dt, std::vector<double>* bflux_accum) {
  const int ne = state.disc->mesh().n_elements();
  const int p = state.disc->ncomp();
  const double t0 = state.t;

  std::vector<NodalStateField> U0 = state.U;
  std::vector<double> bf(p, 0.0);

  auto stage = [&](double tstage, double weight)
      -> std::vector<NodalStateField> {
    state.t = tstage;
    if (bflux_accum) {
      const FaceExchange ex = face_exchange(state);
      const std::vector<double> rate = flux_rate_from_exchange(state, ex);
      for (int c = 0; c < p; ++c) bf[c] += weight * rate[c];
    }
    return residual(state);
  };

  // Classic four-stage scheme; boundary data sees the stage times.
  const std::vector<NodalStateField> k1 = stage(t0, 1.0);
  for (int e = 0; e < ne; ++e)
    for (size_t t = 0; t < state.U[e].size(); ++t)
      state.U[e].data()[t] = U0[e].data()[t] + 0.5 * dt * k1[e].data()[t];
  const std::vector<NodalStateField> k2 = stage(t0 + 0.5 * dt, 2.0);
  for (int e = 0; e < ne; ++e)
    for (size_t t = 0; t < state.U[e].size(); ++t)
      state.U[e].data()[t] = U0[e].data()[t] + 0.5 * dt * k2[e].data()[t];
  const std::vector<NodalStateField> k3 = stage(t0 + 0.5 * dt, 2.0);
  for (int e = 0; e < ne; ++e)
    for (size_t t = 0; t < state.U[e].size(); ++t)
      state.U[e].data()[t] = U0[e].data()[t] + dt * k3[e].data()[t];
  const std::vector<NodalStateField> k4 = stage(t0 + dt, 1.0);

  for (int e = 0; e < ne; ++e)
    for (size_t t = 0; t < state.U[e].size(); ++t)
      state.U[e].data()[t] =
          U0[e].data()[t] + dt / 6.0 *
                                (k1[e].data()[t] + 2.0 * k2[e].data()[t] +
                                 2.0 * k3[e].data()[t] + k4[e].data()[t]);
  state.t = t0 + dt;
  if (bflux_accum)
    for (int c = 0; c < p; ++c) (*bflux_accum)[c] += dt / 6.0 * bf[c];
}

DiagnosticsRow diagnostics_row(const SolverState& state,
                               const std::vector<double>& bflux_accum) {
  DiagnosticsRow row;
  row.t = state.t;
  row.energy = total_energy(state);
  row.conserved = conserved_integrals(state);
  row.boundary_flux = bflux_accum;
  row.energy_rate = semidiscrete_energy_rate(state);
  row.conservation = conservation_defect(state);
  return row;
}

void run(SolverState& state, double T, double dt, double output_interval,
         const std::function<void(const DiagnosticsRow&)>& emit) {
  const int p = state.disc->ncomp();
  std::vector<double> bflux(p, 0.0);
  const double eps = 1e-12 * std::max(1.0, T);

  emit(diagnostics_row(state, bflux));
  if (T <= eps) return;

  const double interval = output_interval > 0 ? output_interval : T;
  double next_output = interval;
  while (state.t < T - eps) {
    const double step = std::min(dt, T - state.t);
    rk4_step(state, step, &bflux);
    if (state.t >= next_output - eps || state.t >= T - eps) {
      emit(diagnostics_row(state, bflux));
      while (next_output <= state.t + eps) next_output += interval;
    }
  }
}

}  // namespace splitdg
