#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <vector>

#include "splitdg/calculus.hpp"
#include "splitdg/geometry.hpp"
#include "splitdg/smallmat.hpp"
#include "splitdg/solver.hpp"
#include "splitdg/system.hpp"

using namespace splitdg;

namespace {

std::shared_ptr<Discretization> make_disc(
    const HyperbolicSystem& sys, double warp, int degree,
    std::array<int, 3> counts = {2, 2, 2}, BoundaryFn g = {},
    MetricMode mode = MetricMode::Curl) {
  Mesh mesh = build_box_mesh({0, 1, 0, 1, 0, 1}, counts, warp, degree, mode);
  return std::make_shared<Discretization>(std::move(mesh), sys, std::move(g));
}

double state_scale(const SolverState& s) {
  double m = 1.0;
  for (const auto& u : s.U)
    for (size_t i = 0; i < u.size(); ++i)
      m = std::max(m, std::abs(u.data()[i]));
  return m;
}

double max_abs(const std::vector<NodalStateField>& r) {
  double m = 0;
  for (const auto& u : r)
    for (size_t i = 0; i < u.size(); ++i)
      m = std::max(m, std::abs(u.data()[i]));
  return m;
}

double max_diff(const std::vector<NodalStateField>& a,
                const std::vector<NodalStateField>& b) {
  double m = 0;
  for (size_t e = 0; e < a.size(); ++e)
    for (size_t i = 0; i < a[e].size(); ++i)
      m = std::max(m, std::abs(a[e].data()[i] - b[e].data()[i]));
  return m;
}

constexpr Form kForms[] = {Form::DGSEM, Form::W, Form::S, Form::SC, Form::DS};

}  // namespace

TEST_CASE("constant states are preserved by every form") {
  // Free-stream: the residual of u = const must vanish on a warped mesh.
  // This exercises the discrete metric identities inside the volume terms
  // and the consistency of the interface flux.
  const auto ac = make_acoustics(1.4);
  const BoundaryFn gac = [](const Vec3&, double, double* u) {
    u[0] = 0.3; u[1] = -0.2; u[2] = 0.75; u[3] = 1.1;
  };
  const auto disc = make_disc(ac, 0.08, 4, {2, 2, 2}, gac);
  for (const Form form : kForms) {
    auto s = make_state(disc, form, 1.0);
    set_state(s, [](const Vec3&, double* u) {
      u[0] = 0.3; u[1] = -0.2; u[2] = 0.75; u[3] = 1.1;
    });
    const auto r = residual(s);
    CHECK(max_abs(r) <= 1e-11);
  }

  // Constant-velocity advection: the contravariant coefficients inherit the
  // curl metric identity, so the constant survives on the warped mesh too.
  const auto adv = make_advection_constant({1.0, -0.4, 0.2});
  const BoundaryFn gadv = [](const Vec3&, double, double* u) { u[0] = 2.0; };
  const auto dadv = make_disc(adv, 0.06, 3, {2, 2, 2}, gadv);
  for (const Form form : kForms) {
    auto s = make_state(dadv, form, 0.5);
    set_state(s, [](const Vec3&, double* u) { u[0] = 2.0; });
    CHECK(max_abs(residual(s)) <= 1e-11);
  }

  // A spatially varying velocity aliases: even with div a = 0 analytically,
  // the interpolated coefficient field is not discretely divergence free and
  // the constant state is no longer steady at finite degree.
  const auto shear = make_advection_shear({1.0, -0.4, 0.2}, 0.3);
  const auto dshear = make_disc(shear, 0.06, 3, {2, 2, 2}, gadv);
  auto ss = make_state(dshear, Form::DS, 0.5);
  set_state(ss, [](const Vec3&, double* u) { u[0] = 2.0; });
  CHECK(max_abs(residual(ss)) > 1e-3);
}

TEST_CASE("zero state gives zero residual") {
  const auto disc = make_disc(make_acoustics(2.0), 0.05, 3);
  auto s = make_state(disc);
  CHECK(max_abs(residual(s)) == 0.0);
}

TEST_CASE("split forms agree on random states") {
  // W, S, SC, DS are algebraic rearrangements of the same operator: on any
  // nodal data, including rough random states, they differ only by roundoff.
  const auto ac = make_acoustics(1.2);
  const auto adv = make_advection_shear({0.7, 0.3, -0.5}, 0.4);
  for (const double warp : {0.0, 0.08}) {
    for (const int N : {2, 3, 4}) {
      for (const auto* sys : {&ac, &adv}) {
        const auto disc = make_disc(*sys, warp, N);
        auto s = make_state(disc, Form::W, 0.7);
        randomize_state(s, 42 + N);
        const double scale = state_scale(s);

        const auto rw = residual(s, Form::W);
        const auto rs = residual(s, Form::S);
        const auto rsc = residual(s, Form::SC);
        const auto rds = residual(s, Form::DS);
        const double tol = 1e-11 * scale * disc->max_wave_speed() *
                           (1 + N * N) / disc->mesh().h_min;
        CHECK(max_diff(rw, rs) <= tol);
        CHECK(max_diff(rw, rsc) <= tol);
        CHECK(max_diff(rw, rds) <= tol);
      }
    }
  }
}

TEST_CASE("divergence form agrees with the split forms for constant coefficients") {
  // With spatially constant A and affine elements the contravariant
  // coefficients are constant, the product rule is exact, and DGSEM
  // coincides with the split family.
  const auto adv = make_advection_constant({0.9, -0.6, 0.3});
  const auto disc = make_disc(adv, 0.0, 3);
  auto s = make_state(disc, Form::DGSEM, 0.4);
  randomize_state(s, 2024);
  const auto r0 = residual(s, Form::DGSEM);
  const auto rds = residual(s, Form::DS);
  CHECK(max_diff(r0, rds) <= 1e-11 * state_scale(s));

  // On a warped mesh the contravariant coefficients vary even for constant
  // A, and the forms separate by an O(1) aliasing term.
  const auto dw = make_disc(adv, 0.08, 3);
  auto sw = make_state(dw, Form::DGSEM, 0.4);
  randomize_state(sw, 2024);
  CHECK(max_diff(residual(sw, Form::DGSEM), residual(sw, Form::DS)) > 1e-4);
}

TEST_CASE("correction term turns the divergence form into the skew form") {
  // The SC arrangement evaluates the divergence form plus the explicit
  // correction; that identity must hold term-by-term on any state.
  const auto ac = make_acoustics(1.6);
  const auto disc = make_disc(ac, 0.07, 3);
  auto s = make_state(disc, Form::SC, 0.9);
  randomize_state(s, 77);

  const auto rsc = residual(s, Form::SC);
  const auto r0 = residual(s, Form::DGSEM);
  const auto corr = correction_term(s);
  double worst = 0;
  for (size_t e = 0; e < rsc.size(); ++e)
    for (size_t i = 0; i < rsc[e].size(); ++i)
      worst = std::max(worst, std::abs(rsc[e].data()[i] - r0[e].data()[i] -
                                       corr[e].data()[i]));
  const double scale = std::max(max_abs(rsc), max_abs(corr));
  CHECK(worst <= 1e-12 * std::max(1.0, scale));
  // And the correction is genuinely nonzero here (varying coefficients).
  CHECK(max_abs(corr) > 1e-3);
}

TEST_CASE("upwind skew forms never produce energy with zero boundary data") {
  // d/dt ||U||^2 = volume skew (zero) + interface dissipation (<= 0) +
  // boundary terms (<= 0 for g = 0): the rate is nonpositive up to roundoff
  // for every state when the coefficient divergence vanishes discretely.
  const auto adv = make_advection_constant({1.0, 0.5, -0.25});
  const auto disc = make_disc(adv, 0.09, 3);
  for (int trial = 0; trial < 25; ++trial) {
    auto s = make_state(disc, Form::DS, 1.0);
    randomize_state(s, 1000 + trial);
    const double E = total_energy(s);
    CHECK(semidiscrete_energy_rate(s) <= 1e-10 * E);
  }
  // Central flux on the W form: the rate collapses to the boundary terms,
  // still nonpositive with g = 0.
  for (int trial = 0; trial < 10; ++trial) {
    auto s = make_state(disc, Form::W, 0.0);
    randomize_state(s, 50 + trial);
    CHECK(semidiscrete_energy_rate(s) <= 1e-10 * total_energy(s));
  }
}

TEST_CASE("total energy of simple states") {
  const auto disc = make_disc(make_advection_constant({1, 0, 0}), 0.0, 2);
  auto s = make_state(disc);
  set_state(s, [](const Vec3&, double* u) { u[0] = 1.0; });
  // (J u, u) summed over the unit box with u = 1.
  CHECK(total_energy(s) == doctest::Approx(1.0).epsilon(1e-12));
  set_state(s, [](const Vec3& x, double* u) { u[0] = x.x; });
  CHECK(total_energy(s) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("conserved integrals and boundary flux close the budget") {
  // For each component: d/dt (integral of u) + (boundary F* integral) = 0 up
  // to roundoff, for all four split forms and the divergence form.
  const auto ac = make_acoustics(1.5);
  const auto disc = make_disc(ac, 0.08, 3);
  for (const Form form : kForms) {
    auto s = make_state(disc, form, 1.0);
    randomize_state(s, 7 + static_cast<int>(form));
    CHECK(conservation_defect(s) <= 1e-12);
  }
}

TEST_CASE("growth-rate bound reflects the coefficient divergence") {
  const auto cons = make_disc(make_advection_constant({1, 1, 1}), 0.05, 3);
  CHECK(gamma_hat(*cons) <= 1e-12);

  // The shear field is divergence free, so gamma_hat stays zero even though
  // the coefficients vary in space.
  const auto shear = make_disc(make_advection_shear({0.5, 0, 0}, 0.8), 0.0, 4);
  CHECK(gamma_hat(*shear) <= 1e-12);
}

TEST_CASE("time step scales like the mesh and the wave speed") {
  const auto disc = make_disc(make_advection_constant({2, 0, 0}), 0.0, 3);
  // h_min = 1/2, |a| = 2, N = 3: dt = cfl * 0.5 / (7 * 2).
  CHECK(stable_dt(*disc, 0.7) == doctest::Approx(0.7 * 0.5 / 14.0).epsilon(1e-12));
}

TEST_CASE("one RK4 step has fifth-order local error") {
  // Richardson: for a smooth autonomous-in-time problem, the one-step error
  // against a tiny-step reference scales like dt^5, so successive halvings
  // shrink the defect by about 32.
  const auto ac = make_acoustics(1.0);
  const auto disc = make_disc(ac, 0.04, 3, {2, 2, 2});
  const StateFn init = [](const Vec3& x, double* u) {
    u[0] = std::sin(2 * 3.14159265358979323846 * x.x);
    u[1] = 0; u[2] = 0;
    u[3] = std::cos(2 * 3.14159265358979323846 * x.y);
  };

  auto fine = make_state(disc, Form::DS, 1.0);
  set_state(fine, init);
  const double dt0 = 0.02;
  for (int i = 0; i < 32; ++i) rk4_step(fine, dt0 / 32);

  std::vector<double> errs;
  for (const double dt : {dt0, dt0 / 2, dt0 / 4}) {
    auto s = make_state(disc, Form::DS, 1.0);
    set_state(s, init);
    const int steps = static_cast<int>(std::lround(dt0 / dt));
    for (int i = 0; i < steps; ++i) rk4_step(s, dt);
    errs.push_back(max_diff(s.U, fine.U));
  }
  // Interpreted as a global error over the fixed window, RK4 is fourth
  // order: each halving divides the error by about 16.
  CHECK(errs[0] / errs[1] > 11.0);
  CHECK(errs[1] / errs[2] > 11.0);
  CHECK(fine.t == doctest::Approx(dt0).epsilon(1e-12));
}

TEST_CASE("rk4 accumulates the boundary flux with consistent weights") {
  // Advect a smooth pulse; the cumulative boundary flux must track the loss
  // of the conserved integral to machine-level accuracy over many steps.
  const auto adv = make_advection_constant({1.0, 0.25, 0});
  const auto disc = make_disc(adv, 0.05, 4);
  auto s = make_state(disc, Form::DS, 1.0);
  set_state(s, [](const Vec3& x, double* u) {
    const Vec3 d = x - Vec3{0.5, 0.5, 0.5};
    u[0] = std::exp(-dot(d, d) / 0.04);
  });
  const auto q0 = conserved_integrals(s);
  std::vector<double> bflux(1, 0.0);
  const double dt = stable_dt(*disc, 0.4);
  for (int i = 0; i < 25; ++i) rk4_step(s, dt, &bflux);
  const auto q1 = conserved_integrals(s);
  // The integral is linear in the state, so the stage-weighted flux sum
  // cancels the update exactly up to the per-stage conservation defect.
  CHECK(std::abs(q1[0] - q0[0] + bflux[0]) <= 1e-10 * std::max(1.0, std::abs(q0[0])));
}

TEST_CASE("run emits rows at the requested cadence") {
  const BoundaryFn g = [](const Vec3&, double, double* u) { u[0] = 1.0; };
  const auto disc = make_disc(make_advection_constant({1, 0, 0}), 0.0, 2,
                              {2, 2, 2}, g);
  auto s = make_state(disc, Form::DS, 1.0);
  set_state(s, [](const Vec3&, double* u) { u[0] = 1.0; });
  std::vector<DiagnosticsRow> rows;
  run(s, 0.1, 0.004, 0.025, [&](const DiagnosticsRow& r) { rows.push_back(r); });
  REQUIRE(rows.size() >= 5);
  CHECK(rows.front().t == doctest::Approx(0.0).scale(1).epsilon(1e-15));
  CHECK(rows.back().t == doctest::Approx(0.1).epsilon(1e-12));
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].t > rows[i - 1].t);
  // Constant state on exact boundary data: energy pinned at E(0).
  for (const auto& r : rows) {
    CHECK(r.energy == doctest::Approx(rows.front().energy).epsilon(1e-12));
    CHECK(r.conservation <= 1e-11);
  }
}

TEST_CASE("face exchange exposes consistent traces and fluxes") {
  const auto ac = make_acoustics(1.1);
  const auto disc = make_disc(ac, 0.06, 3);
  auto s = make_state(disc, Form::DS, 1.0);
  randomize_state(s, 5150);
  const auto fx = face_exchange(s);
  REQUIRE(fx.interior.size() == disc->mesh().interior.size());
  REQUIRE(fx.boundary.size() == disc->mesh().boundary.size());

  const int n = disc->degree() + 1;
  const int p = disc->ncomp();
  // Interior traces must reproduce the nodal values of both elements.
  for (size_t f = 0; f < fx.interior.size(); ++f) {
    const auto& mf = disc->mesh().interior[f];
    const auto& d = fx.interior[f];
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const auto ln = face_node(mf.left_face, a, b, disc->degree());
        const auto rn = face_node(mf.right_face, a, b, disc->degree());
        for (int c = 0; c < p; ++c) {
          const size_t t = (static_cast<size_t>(b) * n + a) * p + c;
          CHECK(d.UL[t] == s.U[mf.left].at(ln[0], ln[1], ln[2], c));
          CHECK(d.UR[t] == s.U[mf.right].at(rn[0], rn[1], rn[2], c));
        }
      }
  }
  // Boundary fluxes are fully upwind against the characteristic exterior
  // state regardless of sigma: recompute nodewise.
  for (size_t f = 0; f < fx.boundary.size(); ++f) {
    const auto& d = fx.boundary[f];
    const auto& splits = disc->boundary_split(static_cast<int>(f));
    for (int t = 0; t < n * n; ++t) {
      std::vector<double> ext(p), want(p);
      boundary_exterior_state(splits[t], &d.U[static_cast<size_t>(t) * p],
                              &d.gext[static_cast<size_t>(t) * p], ext.data());
      numerical_flux(splits[t], &d.U[static_cast<size_t>(t) * p], ext.data(),
                     1.0, want.data());
      for (int c = 0; c < p; ++c)
        CHECK(d.fstar[static_cast<size_t>(t) * p + c] ==
              doctest::Approx(want[c]).scale(1).epsilon(1e-13));
    }
  }
}
