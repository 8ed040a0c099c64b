#include "splitdg/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "splitdg/errors.hpp"

namespace splitdg {

NodalVectorField map_positions(const Quadrature1D& q, const ElementMapping& em) {
  const int n = q.n();
  NodalVectorField X(q.degree);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Vec3 x = em.map(q.nodes[i], q.nodes[j], q.nodes[k]);
        for (int m = 0; m < 3; ++m) X[m].at(i, j, k) = x[m];
      }
  return X;
}

std::array<NodalVectorField, 3> covariant_vectors(const Quadrature1D& q,
                                                  const NodalVectorField& X) {
  std::array<NodalVectorField, 3> cov{NodalVectorField(q.degree),
                                      NodalVectorField(q.degree),
                                      NodalVectorField(q.degree)};
  for (int d = 0; d < 3; ++d)
    for (int m = 0; m < 3; ++m)
      apply_matrix_dir(q.degree, q.diff.data(), X[m].data(), cov[d][m].data(), d);
  return cov;
}

std::array<NodalVectorField, 3> contravariant_cross(
    const std::array<NodalVectorField, 3>& cov) {
  const int deg = cov[0].degree();
  std::array<NodalVectorField, 3> contra{NodalVectorField(deg),
                                         NodalVectorField(deg),
                                         NodalVectorField(deg)};
  const size_t sz = cov[0][0].size();
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    for (size_t t = 0; t < sz; ++t) {
      const Vec3 aj{cov[j][0].data()[t], cov[j][1].data()[t], cov[j][2].data()[t]};
      const Vec3 ak{cov[k][0].data()[t], cov[k][1].data()[t], cov[k][2].data()[t]};
      const Vec3 c = cross(aj, ak);
      for (int m = 0; m < 3; ++m) contra[i][m].data()[t] = c[m];
    }
  }
  return contra;
}

std::array<NodalVectorField, 3> contravariant_curl(
    const Quadrature1D& q, const NodalVectorField& X,
    const std::array<NodalVectorField, 3>& cov) {
  const int deg = q.degree;
  std::array<NodalVectorField, 3> contra{NodalVectorField(deg),
                                         NodalVectorField(deg),
                                         NodalVectorField(deg)};
  const size_t sz = X[0].size();
  NodalVectorField v(deg);
  for (int n = 0; n < 3; ++n) {
    const int m = (n + 1) % 3, l = (n + 2) % 3;
    // v_d = 1/2 (X_l dX_m/dxi^d - X_m dX_l/dxi^d), interpolated nodally.
    for (int d = 0; d < 3; ++d)
      for (size_t t = 0; t < sz; ++t)
        v[d].data()[t] = 0.5 * (X[l].data()[t] * cov[d][m].data()[t] -
                                X[m].data()[t] * cov[d][l].data()[t]);
    const NodalVectorField cv = curl(q, v);
    for (int i = 0; i < 3; ++i)
      for (size_t t = 0; t < sz; ++t) contra[i][n].data()[t] = -cv[i].data()[t];
  }
  return contra;
}

NodalScalarField jacobian(const std::array<NodalVectorField, 3>& cov,
                          int element_id) {
  const int deg = cov[0].degree();
  NodalScalarField J(deg);
  const size_t sz = J.size();
  for (size_t t = 0; t < sz; ++t) {
    const Vec3 a1{cov[0][0].data()[t], cov[0][1].data()[t], cov[0][2].data()[t]};
    const Vec3 a2{cov[1][0].data()[t], cov[1][1].data()[t], cov[1][2].data()[t]};
    const Vec3 a3{cov[2][0].data()[t], cov[2][1].data()[t], cov[2][2].data()[t]};
    const double j = dot(a1, cross(a2, a3));
    if (!(j > 0.0))
      throw NonPositiveJacobian("mapping has non-positive Jacobian", element_id,
                                static_cast<int>(t));
    J.data()[t] = j;
  }
  return J;
}

double metric_identity_defect(const Quadrature1D& q,
                              const std::array<NodalVectorField, 3>& contra) {
  const int deg = q.degree;
  double scale = 0;
  for (int d = 0; d < 3; ++d)
    for (int m = 0; m < 3; ++m)
      for (size_t t = 0; t < contra[d][m].size(); ++t)
        scale = std::max(scale, std::abs(contra[d][m].data()[t]));

  double defect = 0;
  NodalScalarField acc(deg), tmp(deg);
  for (int m = 0; m < 3; ++m) {
    std::fill(acc.data(), acc.data() + acc.size(), 0.0);
    for (int d = 0; d < 3; ++d) {
      apply_matrix_dir(deg, q.diff.data(), contra[d][m].data(), tmp.data(), d);
      for (size_t t = 0; t < acc.size(); ++t) acc.data()[t] += tmp.data()[t];
    }
    for (size_t t = 0; t < acc.size(); ++t)
      defect = std::max(defect, std::abs(acc.data()[t]));
  }
  return defect / std::max(1.0, scale);
}

double duality_defect(const std::array<NodalVectorField, 3>& cov,
                      const std::array<NodalVectorField, 3>& contra,
                      const NodalScalarField& J) {
  double defect = 0, scale = 0;
  const size_t sz = J.size();
  for (size_t t = 0; t < sz; ++t) scale = std::max(scale, std::abs(J.data()[t]));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (size_t t = 0; t < sz; ++t) {
        double s = 0;
        for (int m = 0; m < 3; ++m)
          s += contra[i][m].data()[t] * cov[j][m].data()[t];
        const double expect = i == j ? J.data()[t] : 0.0;
        defect = std::max(defect, std::abs(s - expect));
      }
  return defect / std::max(1.0, scale);
}

ElementGeometry build_element_geometry(const Quadrature1D& q,
                                       const ElementMapping& em, MetricMode mode,
                                       int element_id) {
  ElementGeometry g;
  g.degree = q.degree;
  g.mode = mode;
  g.X = map_positions(q, em);
  g.cov = covariant_vectors(q, g.X);
  g.contra = mode == MetricMode::Cross ? contravariant_cross(g.cov)
                                       : contravariant_curl(q, g.X, g.cov);
  g.jac = jacobian(g.cov, element_id);

  const int n = q.n();
  for (int f = 0; f < 6; ++f) {
    const Face face = static_cast<Face>(f);
    const int d = face_dir(face);
    const double sign = face_side(face) == 0 ? -1.0 : 1.0;
    FaceGeometry& fg = g.faces[f];
    fg.normal_flux.resize(static_cast<size_t>(n) * n);
    fg.area.resize(static_cast<size_t>(n) * n);
    fg.unit_normal.resize(static_cast<size_t>(n) * n);
    fg.position.resize(static_cast<size_t>(n) * n);
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const auto [i, j, k] = face_node(face, a, b, q.degree);
        const size_t s = static_cast<size_t>(b) * n + a;
        Vec3 w{g.contra[d][0].at(i, j, k), g.contra[d][1].at(i, j, k),
               g.contra[d][2].at(i, j, k)};
        w = sign * w;
        fg.normal_flux[s] = w;
        fg.area[s] = norm(w);
        fg.unit_normal[s] = fg.area[s] > 0 ? w * (1.0 / fg.area[s]) : Vec3{};
        fg.position[s] = {g.X[0].at(i, j, k), g.X[1].at(i, j, k),
                          g.X[2].at(i, j, k)};
      }
  }
  return g;
}

Mesh build_box_mesh(const std::array<double, 6>& extents,
                    const std::array<int, 3>& counts, double warp, int degree,
                    MetricMode mode) {
  Mesh mesh;
  mesh.degree = degree;
  mesh.mode = mode;
  mesh.quad = build_lgl(degree);
  mesh.extents = extents;
  mesh.counts = counts;
  mesh.warp = warp;

  const Vec3 origin{extents[0], extents[2], extents[4]};
  const Vec3 L{extents[1] - extents[0], extents[3] - extents[2],
               extents[5] - extents[4]};
  const Vec3 h{L.x / counts[0], L.y / counts[1], L.z / counts[2]};
  mesh.h_min = std::min({h.x, h.y, h.z});

  auto cell_map = [origin, L, h, warp](int cx, int cy, int cz) {
    return [=](double xi, double eta, double zeta) {
      Vec3 x{origin.x + h.x * (cx + 0.5 * (xi + 1.0)),
             origin.y + h.y * (cy + 0.5 * (eta + 1.0)),
             origin.z + h.z * (cz + 0.5 * (zeta + 1.0))};
      const Vec3 u{(x.x - origin.x) / L.x, (x.y - origin.y) / L.y,
                   (x.z - origin.z) / L.z};
      const double sx = std::sin(M_PI * u.x), sy = std::sin(M_PI * u.y),
                   sz = std::sin(M_PI * u.z);
      x.x += warp * L.x * sy * sz;
      x.y += warp * L.y * sz * sx;
      x.z += warp * L.z * sx * sy;
      return x;
    };
  };

  auto cell_index = [&](int cx, int cy, int cz) {
    return (cz * counts[1] + cy) * counts[0] + cx;
  };

  for (int cz = 0; cz < counts[2]; ++cz)
    for (int cy = 0; cy < counts[1]; ++cy)
      for (int cx = 0; cx < counts[0]; ++cx) {
        mesh.maps.push_back(ElementMapping{cell_map(cx, cy, cz)});
        mesh.elems.push_back(build_element_geometry(
            mesh.quad, mesh.maps.back(), mode, cell_index(cx, cy, cz)));
      }

  // Face tables: owner is the lower cell along each axis.
  for (int cz = 0; cz < counts[2]; ++cz)
    for (int cy = 0; cy < counts[1]; ++cy)
      for (int cx = 0; cx < counts[0]; ++cx) {
        const int e = cell_index(cx, cy, cz);
        const std::array<int, 3> c{cx, cy, cz};
        for (int d = 0; d < 3; ++d) {
          if (c[d] + 1 < counts[d]) {
            std::array<int, 3> cn = c;
            ++cn[d];
            mesh.interior.push_back(InteriorFace{
                e, cell_index(cn[0], cn[1], cn[2]), make_face(d, 1),
                make_face(d, 0)});
          } else {
            mesh.boundary.push_back(BoundaryFace{e, make_face(d, 1)});
          }
          if (c[d] == 0)
            mesh.boundary.push_back(BoundaryFace{e, make_face(d, 0)});
        }
      }

  // Watertightness: coincident face nodes must agree to roundoff.
  const int n = mesh.quad.n();
  double conf = 0;
  for (const InteriorFace& f : mesh.interior) {
    const FaceGeometry& gl = mesh.elems[f.left].faces[static_cast<int>(f.left_face)];
    const FaceGeometry& gr = mesh.elems[f.right].faces[static_cast<int>(f.right_face)];
    for (int s = 0; s < n * n; ++s)
      conf = std::max(conf, norm(gl.position[s] - gr.position[s]));
  }
  mesh.conformity_defect = conf;

  double jmin = std::numeric_limits<double>::max();
  for (const ElementGeometry& g : mesh.elems)
    for (size_t t = 0; t < g.jac.size(); ++t)
      jmin = std::min(jmin, g.jac.data()[t]);
  mesh.min_jacobian = jmin;

  return mesh;
}

std::string mesh_summary_json(const Mesh& mesh) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  double defect = 0;
  for (const ElementGeometry& g : mesh.elems)
    defect = std::max(defect, metric_identity_defect(mesh.quad, g.contra));

  std::ostringstream os;
  os << "{\n";
  os << "  \"elements\": " << mesh.n_elements() << ",\n";
  os << "  \"degree\": " << mesh.degree << ",\n";
  os << "  \"counts\": [" << mesh.counts[0] << ", " << mesh.counts[1] << ", "
     << mesh.counts[2] << "],\n";
  os << "  \"metric\": \""
     << (mesh.mode == MetricMode::Curl ? "curl" : "cross") << "\",\n";
  os << "  \"warp\": " << num(mesh.warp) << ",\n";
  os << "  \"h_min\": " << num(mesh.h_min) << ",\n";
  os << "  \"min_jacobian\": " << num(mesh.min_jacobian) << ",\n";
  os << "  \"conformity_defect\": " << num(mesh.conformity_defect) << ",\n";
  os << "  \"metric_identity_defect\": " << num(defect) << ",\n";
  os << "  \"interior_faces\": " << mesh.interior.size() << ",\n";
  os << "  \"boundary_faces\": " << mesh.boundary.size() << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace splitdg
