#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "splitdg/calculus.hpp"
#include "splitdg/field.hpp"
#include "splitdg/quadrature.hpp"
#include "splitdg/smallmat.hpp"

using namespace splitdg;

namespace {

NodalScalarField random_field(const Quadrature1D& q, UniformPM1& rng) {
  NodalScalarField f(q.degree);
  for (size_t i = 0; i < f.size(); ++i) f.data()[i] = rng();
  return f;
}

double max_diff(const NodalScalarField& a, const NodalScalarField& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

TEST_CASE("gradient of polynomial interpolants is exact") {
  const auto q = build_lgl(4);
  // f = x^2 y  =>  grad f = (2xy, x^2, 0).
  const auto f = interpolate(q, [](double x, double y, double) { return x * x * y; });
  const auto g = gradient(q, f);
  const int n = q.n();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double x = q.nodes[i], y = q.nodes[j];
        CHECK(g[0].at(i, j, k) == doctest::Approx(2 * x * y).epsilon(1e-13));
        CHECK(g[1].at(i, j, k) == doctest::Approx(x * x).epsilon(1e-13));
        CHECK(g[2].at(i, j, k) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
      }
}

TEST_CASE("divergence of polynomial vector fields") {
  const auto q = build_lgl(3);
  const int n = q.n();

  NodalVectorField F(q.degree);
  F[0] = interpolate(q, [](double x, double, double) { return x; });
  F[1] = interpolate(q, [](double, double y, double) { return y; });
  F[2] = interpolate(q, [](double, double, double z) { return z; });
  auto div = divergence(q, F);
  for (size_t i = 0; i < div.size(); ++i)
    CHECK(div.data()[i] == doctest::Approx(3.0).epsilon(1e-13));

  // Rotated identity has zero divergence.
  NodalVectorField G(q.degree);
  G[0] = interpolate(q, [](double, double y, double) { return y; });
  G[1] = interpolate(q, [](double, double, double z) { return z; });
  G[2] = interpolate(q, [](double x, double, double) { return x; });
  div = divergence(q, G);
  for (size_t i = 0; i < div.size(); ++i)
    CHECK(div.data()[i] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));

  NodalVectorField H(q.degree);
  H[0] = interpolate(q, [](double x, double, double) { return x * x; });
  div = divergence(q, H);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        CHECK(div.at(i, j, k) == doctest::Approx(2 * q.nodes[i]).epsilon(1e-13));
}

TEST_CASE("curl of polynomial vector fields") {
  const auto q = build_lgl(3);
  const int n = q.n();
  // F = (0, 0, xy)  =>  curl F = (x, -y, 0).
  NodalVectorField F(q.degree);
  F[2] = interpolate(q, [](double x, double y, double) { return x * y; });
  const auto c = curl(q, F);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        CHECK(c[0].at(i, j, k) == doctest::Approx(q.nodes[i]).epsilon(1e-13));
        CHECK(c[1].at(i, j, k) == doctest::Approx(-q.nodes[j]).epsilon(1e-13));
        CHECK(c[2].at(i, j, k) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
      }
}

TEST_CASE("vector identities hold discretely for interpolant data") {
  // curl(grad f) = 0 and div(curl F) = 0 node-by-node, for any nodal data:
  // both follow from the commutation of the one-dimensional derivative
  // matrices along distinct directions.
  UniformPM1 rng(404);
  for (const int N : {1, 2, 5, 8}) {
    const auto q = build_lgl(N);
    const auto f = random_field(q, rng);
    const auto g = gradient(q, f);
    const auto cg = curl(q, g);
    double scale = 1.0;
    for (int m = 0; m < 3; ++m)
      for (size_t i = 0; i < f.size(); ++i)
        scale = std::max(scale, std::abs(g[m].data()[i]));
    for (int m = 0; m < 3; ++m)
      for (size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(cg[m].data()[i]) <= 1e-12 * scale * (1 + N * N));

    NodalVectorField F(N);
    for (int m = 0; m < 3; ++m) F[m] = random_field(q, rng);
    const auto cF = curl(q, F);
    const auto dc = divergence(q, cF);
    double cscale = 1.0;
    for (int m = 0; m < 3; ++m)
      for (size_t i = 0; i < f.size(); ++i)
        cscale = std::max(cscale, std::abs(cF[m].data()[i]));
    for (size_t i = 0; i < f.size(); ++i)
      CHECK(std::abs(dc.data()[i]) <= 1e-12 * cscale * (1 + N * N));
  }
}

TEST_CASE("quadrature inner products on the reference cube") {
  const auto q = build_lgl(4);
  const auto one = interpolate(q, [](double, double, double) { return 1.0; });
  const auto x = interpolate(q, [](double x, double, double) { return x; });
  CHECK(inner_product(q, one, one) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(inner_product(q, x, x) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(inner_product(q, x, one) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  NodalVectorField F(q.degree), G(q.degree);
  F[0] = x;
  F[1] = one;
  G[0] = x;
  G[1] = one;
  // (x,x) + (1,1) = 8/3 + 8.
  CHECK(vector_inner_product(q, F, G) ==
        doctest::Approx(8.0 / 3.0 + 8.0).epsilon(1e-14));

  NodalStateField U(q.degree, 2), V(q.degree, 2);
  const int n = q.n();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        U.at(i, j, k, 0) = V.at(i, j, k, 0) = q.nodes[i];
        U.at(i, j, k, 1) = V.at(i, j, k, 1) = 1.0;
      }
  CHECK(state_inner_product(q, U, V) ==
        doctest::Approx(8.0 / 3.0 + 8.0).epsilon(1e-14));
}

TEST_CASE("interpolant L2 norm agrees with exact integrals") {
  const auto q = build_lgl(3);
  const auto x = interpolate(q, [](double x, double, double) { return x; });
  CHECK(interpolant_l2_norm(q, x) ==
        doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-13));
  // x^3: integral of x^6 over the cube is (2/7)*4.
  const auto x3 = interpolate(q, [](double x, double, double) { return x * x * x; });
  CHECK(interpolant_l2_norm(q, x3) ==
        doctest::Approx(std::sqrt(8.0 / 7.0)).epsilon(1e-13));
}

TEST_CASE("discrete norm bounds the interpolant L2 norm") {
  // ||I f||_L2 <= ||f||_N <= (2 + 1/N)^{3/2} ||I f||_L2 for any nodal data.
  UniformPM1 rng(77);
  for (const int N : {1, 2, 4, 7}) {
    const auto q = build_lgl(N);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_field(q, rng);
      const double l2 = interpolant_l2_norm(q, f);
      const double qn = std::sqrt(inner_product(q, f, f));
      CHECK(l2 <= qn * (1 + 1e-12));
      CHECK(qn <= std::pow(2.0 + 1.0 / N, 1.5) * l2 * (1 + 1e-12));
    }
  }
}

TEST_CASE("face traces pick the pinned-index slices") {
  const auto q = build_lgl(2);
  const int n = q.n();
  NodalScalarField f(q.degree);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        f.at(i, j, k) = 100 * i + 10 * j + k;

  const auto xm = face_trace(f, Face::XiMinus);
  const auto xp = face_trace(f, Face::XiPlus);
  const auto ep = face_trace(f, Face::EtaPlus);
  const auto zp = face_trace(f, Face::ZetaPlus);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      CHECK(xm.at(a, b) == f.at(0, a, b));
      CHECK(xp.at(a, b) == f.at(2, a, b));
      CHECK(ep.at(a, b) == f.at(a, 2, b));
      CHECK(zp.at(a, b) == f.at(a, b, 2));
    }
}

TEST_CASE("surface quadrature with signed faces") {
  const auto q = build_lgl(3);
  // g = 1 on every face: plus and minus contributions cancel.
  std::array<FaceScalarField, 6> g;
  for (auto& face : g) {
    face = FaceScalarField(q.degree);
    for (int b = 0; b < q.n(); ++b)
      for (int a = 0; a < q.n(); ++a) face.at(a, b) = 1.0;
  }
  CHECK(surface_integral(q, g) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  // Zero out all but xi-plus: the face carries + area 4.
  for (int f = 1; f < 6; ++f) g[f] = FaceScalarField(q.degree);
  std::swap(g[0], g[static_cast<int>(Face::XiPlus)]);
  CHECK(surface_integral(q, g) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("surface flux integral matches the divergence theorem") {
  const auto q = build_lgl(3);
  // F = (1,0,0): closed-surface integral of a constant field vanishes.
  NodalVectorField F(q.degree);
  F[0] = interpolate(q, [](double, double, double) { return 1.0; });
  CHECK(surface_flux_integral(q, F) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));

  // F = (x,0,0): integral of div F = 1 over the cube is 8.
  F[0] = interpolate(q, [](double x, double, double) { return x; });
  CHECK(surface_flux_integral(q, F) == doctest::Approx(8.0).epsilon(1e-13));

  // F = (x^2 y, 0, 0): both xi faces see y, so the signed sum cancels.
  F[0] = interpolate(q, [](double x, double y, double) { return x * x * y; });
  CHECK(surface_flux_integral(q, F) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
}

TEST_CASE("divergence theorem defects vanish for interpolant data") {
  UniformPM1 rng(2026);
  for (const int N : {1, 3, 6}) {
    const auto q = build_lgl(N);
    for (int trial = 0; trial < 25; ++trial) {
      NodalVectorField F(N);
      for (int m = 0; m < 3; ++m) F[m] = random_field(q, rng);
      const auto V = random_field(q, rng);
      CHECK(dxgl_defect(q, F, V) <= 1e-12);
      CHECK(dgl_defect(q, F) <= 1e-12);
    }
  }
}

TEST_CASE("integration-by-parts identities for scalar pairs") {
  UniformPM1 rng(31);
  for (const int N : {1, 2, 4, 8}) {
    const auto q = build_lgl(N);
    for (int trial = 0; trial < 25; ++trial) {
      const auto Phi = random_field(q, rng);
      const auto V = random_field(q, rng);
      const auto d = greens_defects(q, Phi, V);
      CHECK(d.first <= 1e-12);
      CHECK(d.second <= 1e-12);
    }
  }
}

TEST_CASE("product rule fails at the aliasing threshold and not below") {
  // U = V = x^N: the product x^{2N} is inexact under degree-N interpolation,
  // so the discrete product rule must visibly break...
  for (const int N : {2, 4, 6}) {
    const auto q = build_lgl(N);
    const auto u = interpolate(q, [N](double x, double, double) {
      return std::pow(x, N);
    });
    CHECK(aliasing_defect(q, u, u) > 1e-6);

    // ...while products that stay inside degree N are differentiated exactly.
    const int h = N / 2;
    const auto a = interpolate(q, [h](double x, double y, double) {
      return std::pow(x, h) + 0.5 * y;
    });
    const auto b = interpolate(q, [h](double, double y, double z) {
      return std::pow(y, h - 1 > 0 ? h - 1 : 0) - 0.25 * z;
    });
    CHECK(aliasing_defect(q, a, b) <= 1e-12);
  }
}

TEST_CASE("interpolant evaluation reproduces nodal data and polynomials") {
  const auto q = build_lgl(4);
  const auto f = interpolate(q, [](double x, double y, double z) {
    return x * x * y - 0.5 * z * z * z + 2.0;
  });
  // Exact node hits take the early-out path.
  CHECK(eval_interpolant(q, f, q.nodes[2], q.nodes[1], q.nodes[4]) ==
        doctest::Approx(f.at(2, 1, 4)).epsilon(1e-15));
  // Off-node, a degree-<=4 polynomial is reproduced exactly.
  const double x = 0.3123, y = -0.777, z = 0.05;
  CHECK(eval_interpolant(q, f, x, y, z) ==
        doctest::Approx(x * x * y - 0.5 * z * z * z + 2.0).epsilon(1e-13));
  // Mixed on-node/off-node coordinates.
  CHECK(eval_interpolant(q, f, q.nodes[0], y, z) ==
        doctest::Approx(y - 0.5 * z * z * z + 2.0).epsilon(1e-13));
}

TEST_CASE("apply_matrix_dir orients rows along the chosen axis") {
  const auto q = build_lgl(2);
  const int n = q.n();
  NodalScalarField f(q.degree);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        f.at(i, j, k) = 100 * i + 10 * j + k;

  // Identity leaves the block untouched in every direction.
  std::vector<double> eye(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) eye[static_cast<size_t>(i) * n + i] = 1.0;
  NodalScalarField out(q.degree);
  for (int dir = 0; dir < 3; ++dir) {
    apply_matrix_dir(q.degree, eye.data(), f.data(), out.data(), dir);
    CHECK(max_diff(out, f) == 0.0);
  }

  // A matrix with one 1 in row 0, column 2 shifts slot 2 into slot 0
  // along the chosen axis only.
  std::vector<double> pick(static_cast<size_t>(n) * n, 0.0);
  pick[2] = 1.0;
  apply_matrix_dir(q.degree, pick.data(), f.data(), out.data(), 0);
  CHECK(out.at(0, 1, 2) == f.at(2, 1, 2));
  apply_matrix_dir(q.degree, pick.data(), f.data(), out.data(), 1);
  CHECK(out.at(1, 0, 2) == f.at(1, 2, 2));
  apply_matrix_dir(q.degree, pick.data(), f.data(), out.data(), 2);
  CHECK(out.at(1, 2, 0) == f.at(1, 2, 2));
}
