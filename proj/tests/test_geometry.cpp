#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <string>

#include "splitdg/errors.hpp"
#include "splitdg/geometry.hpp"

using namespace splitdg;

namespace {

ElementMapping affine_box(Vec3 lo, Vec3 h) {
  return {[=](double xi, double eta, double zeta) {
    return Vec3{lo.x + 0.5 * h.x * (xi + 1), lo.y + 0.5 * h.y * (eta + 1),
                lo.z + 0.5 * h.z * (zeta + 1)};
  }};
}

}  // namespace

TEST_CASE("affine element metric terms") {
  // Box of extents (1,2,4): a_1=(1/2,0,0), a_2=(0,1,0), a_3=(0,0,2), J=1.
  const auto q = build_lgl(3);
  const auto em = affine_box({0, 0, 0}, {1, 2, 4});
  const auto X = map_positions(q, em);
  const auto cov = covariant_vectors(q, X);
  const auto contra = contravariant_cross(cov);
  const auto J = jacobian(cov);

  const int n = q.n();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        CHECK(cov[0][0].at(i, j, k) == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(cov[0][1].at(i, j, k) == doctest::Approx(0.0).scale(1).epsilon(1e-13));
        CHECK(cov[1][1].at(i, j, k) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(cov[2][2].at(i, j, k) == doctest::Approx(2.0).epsilon(1e-13));
        // Ja^1 = a_2 x a_3 = (2,0,0).
        CHECK(contra[0][0].at(i, j, k) == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(contra[0][1].at(i, j, k) == doctest::Approx(0.0).scale(1).epsilon(1e-13));
        CHECK(contra[1][1].at(i, j, k) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(contra[2][2].at(i, j, k) == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(J.at(i, j, k) == doctest::Approx(1.0).epsilon(1e-13));
      }

  // Position samples hit the analytic map.
  CHECK(X[0].at(0, 0, 0) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(X[0].at(n - 1, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(X[2].at(0, 0, n - 1) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("element faces carry outward scaled normals") {
  const auto q = build_lgl(2);
  const auto em = affine_box({0, 0, 0}, {1, 2, 4});
  const auto geom = build_element_geometry(q, em, MetricMode::Curl);

  // xi faces: normal flux +-Ja^1 = (+-2, 0, 0); quadrature area sums to the
  // physical face area 2*4 = 8 (reference face measure 4 times |Ja^1|=2).
  const auto& fp = geom.faces[static_cast<int>(Face::XiPlus)];
  const auto& fm = geom.faces[static_cast<int>(Face::XiMinus)];
  double area_sum = 0;
  for (int b = 0; b < q.n(); ++b)
    for (int a = 0; a < q.n(); ++a) {
      const auto idx = static_cast<size_t>(b) * q.n() + a;
      CHECK(fp.normal_flux[idx].x == doctest::Approx(2.0).epsilon(1e-13));
      CHECK(fm.normal_flux[idx].x == doctest::Approx(-2.0).epsilon(1e-13));
      CHECK(fp.unit_normal[idx].x == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(fm.unit_normal[idx].x == doctest::Approx(-1.0).epsilon(1e-13));
      CHECK(fp.position[idx].x == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(fm.position[idx].x == doctest::Approx(0.0).scale(1).epsilon(1e-13));
      area_sum += q.weights[a] * q.weights[b] * fp.area[idx];
    }
  CHECK(area_sum == doctest::Approx(8.0).epsilon(1e-13));

  // zeta-plus: normal flux (0,0,+|Ja^3|) with |Ja^3| = 1/2, area 1*2 = 2.
  const auto& zp = geom.faces[static_cast<int>(Face::ZetaPlus)];
  double zarea = 0;
  for (int b = 0; b < q.n(); ++b)
    for (int a = 0; a < q.n(); ++a) {
      const auto idx = static_cast<size_t>(b) * q.n() + a;
      CHECK(zp.normal_flux[idx].z == doctest::Approx(0.5).epsilon(1e-13));
      zarea += q.weights[a] * q.weights[b] * zp.area[idx];
    }
  CHECK(zarea == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("curl metrics satisfy the discrete identity where cross metrics fail") {
  // Warped mapping of a unit cell. The cross form is only pointwise exact;
  // its interpolation residue violates sum_d D_d Ja^d = 0 at finite degree,
  // while the curl form satisfies it to roundoff by construction.
  const auto q = build_lgl(4);
  const double alpha = 0.05;
  const ElementMapping em{[=](double xi, double eta, double zeta) {
    const double x = 0.5 * (xi + 1), y = 0.5 * (eta + 1), z = 0.5 * (zeta + 1);
    const double pi = 3.14159265358979323846;
    return Vec3{x + alpha * std::sin(pi * y) * std::sin(pi * z),
                y + alpha * std::sin(pi * z) * std::sin(pi * x),
                z + alpha * std::sin(pi * x) * std::sin(pi * y)};
  }};
  const auto X = map_positions(q, em);
  const auto cov = covariant_vectors(q, X);
  const auto cross = contravariant_cross(cov);
  const auto curlm = contravariant_curl(q, X, cov);

  CHECK(metric_identity_defect(q, curlm) <= 1e-12);
  CHECK(metric_identity_defect(q, cross) > 1e-5);

  // Cross metrics are the pointwise duals of the covariant basis.
  const auto J = jacobian(cov);
  CHECK(duality_defect(cov, cross, J) <= 1e-13);
  // Curl metrics agree with cross only up to interpolation error.
  CHECK(duality_defect(cov, curlm, J) > 1e-8);
}

TEST_CASE("inverted mappings are rejected with the element id") {
  const auto q = build_lgl(2);
  // Mirror one axis: J < 0 everywhere.
  const ElementMapping em{[](double xi, double eta, double zeta) {
    return Vec3{-xi, eta, zeta};
  }};
  const auto X = map_positions(q, em);
  const auto cov = covariant_vectors(q, X);
  CHECK_THROWS_AS(jacobian(cov, 7), NonPositiveJacobian);
  try {
    (void)jacobian(cov, 7);
  } catch (const NonPositiveJacobian& e) {
    CHECK(e.element() == 7);
  }
  CHECK_THROWS_AS(build_element_geometry(q, em, MetricMode::Curl, 3),
                  NonPositiveJacobian);
}

TEST_CASE("box mesh connectivity and sizes") {
  const Mesh mesh = build_box_mesh({0, 1, 0, 1, 0, 1}, {2, 2, 2}, 0.0, 2,
                                   MetricMode::Curl);
  CHECK(mesh.n_elements() == 8);
  // 2x2x2: three axes with 1x2x2 = 4 interior faces each; the rest of the
  // 6*8 = 48 element faces lie on the boundary.
  CHECK(mesh.interior.size() == 12);
  CHECK(mesh.boundary.size() == 24);
  CHECK(mesh.h_min == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mesh.conformity_defect <= 1e-13);
  CHECK(mesh.min_jacobian > 0);

  for (const auto& f : mesh.interior) {
    // Owner sits on the minus side of the shared plane, so its face is the
    // plus face of the shared direction and the neighbor's is the minus face.
    CHECK(face_side(f.left_face) == 1);
    CHECK(face_side(f.right_face) == 0);
    CHECK(face_dir(f.left_face) == face_dir(f.right_face));
    CHECK(f.left != f.right);
  }
  // Every element shows up; each boundary element/face pair is unique.
  std::set<std::pair<int, int>> bset;
  for (const auto& b : mesh.boundary)
    bset.insert({b.elem, static_cast<int>(b.face)});
  CHECK(bset.size() == mesh.boundary.size());
}

TEST_CASE("interior faces have dir-specific sides on both elements") {
  const Mesh mesh = build_box_mesh({0, 2, 0, 1, 0, 1}, {3, 1, 2}, 0.0, 3,
                                   MetricMode::Curl);
  CHECK(mesh.n_elements() == 6);
  // x: 2*1*2 = 4, y: 0, z: 3*1*1 = 3.
  CHECK(mesh.interior.size() == 7);
  CHECK(mesh.boundary.size() == 6 * 6 - 2 * 7);
  CHECK(mesh.h_min == doctest::Approx(0.5).epsilon(1e-14));
  int per_dir[3] = {0, 0, 0};
  for (const auto& f : mesh.interior) ++per_dir[face_dir(f.left_face)];
  CHECK(per_dir[0] == 4);
  CHECK(per_dir[1] == 0);
  CHECK(per_dir[2] == 3);
}

TEST_CASE("warped mesh stays conforming and oriented") {
  const Mesh mesh = build_box_mesh({0, 1, 0, 2, 0, 1}, {2, 2, 2}, 0.08, 4,
                                   MetricMode::Curl);
  CHECK(mesh.conformity_defect <= 1e-13);
  CHECK(mesh.min_jacobian > 0);
  for (const auto& e : mesh.elems) CHECK(metric_identity_defect(mesh.quad, e.contra) <= 1e-12);

  const Mesh cross = build_box_mesh({0, 1, 0, 2, 0, 1}, {2, 2, 2}, 0.08, 4,
                                    MetricMode::Cross);
  double worst = 0;
  for (const auto& e : cross.elems)
    worst = std::max(worst, metric_identity_defect(cross.quad, e.contra));
  CHECK(worst > 1e-5);

  // A warp this large must actually move nodes off the affine grid.
  double max_shift = 0;
  const auto& X = mesh.elems[0].X;
  const auto affine = build_box_mesh({0, 1, 0, 2, 0, 1}, {2, 2, 2}, 0.0, 4,
                                     MetricMode::Curl);
  for (int m = 0; m < 3; ++m)
    for (size_t i = 0; i < X[m].size(); ++i)
      max_shift = std::max(max_shift, std::abs(X[m].data()[i] -
                                               affine.elems[0].X[m].data()[i]));
  CHECK(max_shift > 1e-2);
}

TEST_CASE("excessive warp folds the mesh and is rejected") {
  CHECK_THROWS_AS(build_box_mesh({0, 1, 0, 1, 0, 1}, {2, 2, 2}, 0.9, 3,
                                 MetricMode::Curl),
                  NonPositiveJacobian);
}

TEST_CASE("mesh summary serializes the headline numbers") {
  const Mesh mesh = build_box_mesh({0, 1, 0, 1, 0, 1}, {2, 1, 1}, 0.02, 3,
                                   MetricMode::Curl);
  const std::string s = mesh_summary_json(mesh);
  CHECK(s.find("\"elements\": 2") != std::string::npos);
  CHECK(s.find("\"metric\": \"curl\"") != std::string::npos);
  CHECK(s.find("min_jacobian") != std::string::npos);
  CHECK(s.find("metric_identity_defect") != std::string::npos);
  CHECK(s.find("interior_faces") != std::string::npos);
}
