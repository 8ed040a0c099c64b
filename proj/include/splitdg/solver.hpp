#pragma once

// DGSEM semidiscretization of u_t + div(A u) = 0 on a conforming curved
// mesh, with five algebraically equivalent volume-term arrangements and the
// characteristic upwind interface flux. Production kernels are OpenMP
// parallel over faces and elements; a serial textbook assembly is kept in
// splitdg::reference for cross-checking.

#include <functional>
#include <memory>
#include <vector>

#include "splitdg/field.hpp"
#include "splitdg/geometry.hpp"
#include "splitdg/system.hpp"

namespace splitdg {

enum class Form { DGSEM, W, S, SC, DS };

const char* form_name(Form f);

// Exterior data g(x, t) written into a p-vector; empty means g = 0.
using BoundaryFn = std::function<void(const Vec3&, double, double*)>;

// Nodal state sampler u(x) written into a p-vector.
using StateFn = std::function<void(const Vec3&, double*)>;

// Immutable problem setup: mesh, system, precomputed contravariant
// coefficients, face characteristic splits, and the weak-derivative matrix.
class Discretization {
public:
  Discretization(Mesh mesh, HyperbolicSystem sys, BoundaryFn g = {},
                 int threads = 0);

  const Mesh& mesh() const { return mesh_; }
  const HyperbolicSystem& system() const { return sys_; }
  const Quadrature1D& quad() const { return mesh_.quad; }
  int degree() const { return mesh_.degree; }
  int ncomp() const { return sys_.p; }
  const BoundaryFn& boundary() const { return g_; }
  int threads() const { return threads_; }

  const ContravariantCoefficients& coeffs(int e) const { return coeffs_[e]; }
  // Splits along the owner-side outward face normal, node-major.
  const std::vector<NormalSplit>& interior_split(int f) const {
    return interior_split_[f];
  }
  const std::vector<NormalSplit>& boundary_split(int f) const {
    return boundary_split_[f];
  }
  // G_ni = (w_i / w_n) D_in, the quadrature adjoint of D.
  const std::vector<double>& weak_diff() const { return weak_diff_; }

  struct FaceRef {
    bool is_boundary = false;
    int index = 0;     // into the mesh face arrays
    double sign = 1.0; // +1 owner side, -1 neighbor side
  };
  const std::array<FaceRef, 6>& faces_of(int e) const { return elem_faces_[e]; }

  // Largest nodal wave speed over the mesh.
  double max_wave_speed() const { return max_speed_; }

private:
  Mesh mesh_;
  HyperbolicSystem sys_;
  BoundaryFn g_;
  int threads_;
  std::vector<ContravariantCoefficients> coeffs_;
  std::vector<std::vector<NormalSplit>> interior_split_;
  std::vector<std::vector<NormalSplit>> boundary_split_;
  std::vector<std::array<FaceRef, 6>> elem_faces_;
  std::vector<double> weak_diff_;
  double max_speed_ = 0;
};

struct SolverState {
  std::shared_ptr<const Discretization> disc;
  std::vector<NodalStateField> U;  // one per element
  double t = 0;
  Form form = Form::DS;
  double sigma = 1.0;
};

SolverState make_state(std::shared_ptr<const Discretization> disc,
                       Form form = Form::DS, double sigma = 1.0);

// Sample u(x) at the mapped nodes of every element.
void set_state(SolverState& state, const StateFn& u0);

// Uniform [-1,1] nodal values, deterministic in the seed.
void randomize_state(SolverState& state, std::uint64_t seed);

// Traces and interface fluxes for one evaluation time. Interior fluxes are
// computed once, on the owner side; boundary fluxes always fully upwind
// against the characteristic exterior state.
struct FaceExchange {
  struct InteriorData {
    std::vector<double> UL, UR, fstar;  // n^2 * p, node-major
  };
  struct BoundaryData {
    std::vector<double> U, gext, fstar;
  };
  std::vector<InteriorData> interior;
  std::vector<BoundaryData> boundary;
};

FaceExchange face_exchange(const SolverState& state);

// Semidiscrete du/dt for the state's form (or an explicit one); OpenMP over
// faces and elements, bitwise deterministic for any thread count.
std::vector<NodalStateField> residual(const SolverState& state);
std::vector<NodalStateField> residual(const SolverState& state, Form form);

// -(1/J) * 1/2 (A grad U + (div A) U - div(A U)) per node: what separates
// the split forms from the divergence form. Zero when coefficients and
// metrics commute with the product rule (e.g. constant Atil).
std::vector<NodalStateField> correction_term(const SolverState& state);

namespace reference {
// Serial textbook assembly of the same five forms, written against the
// calculus module's generic operations; kept as the testing oracle.
std::vector<NodalStateField> residual(const SolverState& state, Form form);
}  // namespace reference

// sum_e (J U, U)_N
double total_energy(const SolverState& state);
// 2 sum_e (J du/dt, U)_N for the state's form.
double semidiscrete_energy_rate(const SolverState& state);
// sum_e (J U_c, 1)_N per component.
std::vector<double> conserved_integrals(const SolverState& state);
// sum over boundary faces of the surface quadrature of F*_c.
std::vector<double> boundary_flux_rate(const SolverState& state);
// max_c |d/dt integral + boundary flux| / max(1, term scale)
double conservation_defect(const SolverState& state);
// max over nodes of 1/2 ||divA/J||_2 (the growth-rate bound).
double gamma_hat(const Discretization& disc);

// CFL time step dt = cfl h_min / ((2N+1) lambda_max).
double stable_dt(const Discretization& disc, double cfl);

// Classic four-stage RK; boundary data is evaluated at the stage times. If
// bflux_accum is non-null the cumulative boundary flux integral is advanced
// with the same stage weights.
void rk4_step(SolverState& state, double dt, std::vector<double>* bflux_accum = nullptr);

struct DiagnosticsRow {
  double t = 0;
  double energy = 0;
  std::vector<double> conserved;
  std::vector<double> boundary_flux;  // cumulative integral since t = 0
  double energy_rate = 0;
  double conservation = 0;
};

DiagnosticsRow diagnostics_row(const SolverState& state,
                               const std::vector<double>& bflux_accum);

// Fixed-step RK4 to time T (last step clipped), emitting a diagnostics row
// at t = 0, then whenever t crosses the next output interval, and at T.
void run(SolverState& state, double T, double dt, double output_interval,
         const std::function<void(const DiagnosticsRow&)>& emit);

}  // namespace splitdg
