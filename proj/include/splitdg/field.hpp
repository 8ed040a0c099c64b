#pragma once

// Nodal data on the tensor-product LGL grid of the reference element
// E = [-1,1]^3. Every field is one contiguous array indexed (i,j,k,comp)
// with i fastest, so direction-1 derivative sweeps are unit stride.

#include <array>
#include <cstddef>
#include <vector>

namespace splitdg {

class NodalScalarField {
public:
  NodalScalarField() = default;
  explicit NodalScalarField(int degree)
      : degree_(degree), n_(degree + 1),
        v_(static_cast<size_t>(n_) * n_ * n_, 0.0) {}

  int degree() const { return degree_; }
  int n() const { return n_; }
  size_t size() const { return v_.size(); }

  double& at(int i, int j, int k) { return v_[idx(i, j, k)]; }
  double at(int i, int j, int k) const { return v_[idx(i, j, k)]; }
  size_t idx(int i, int j, int k) const {
    return static_cast<size_t>(i) + static_cast<size_t>(n_) * (j + static_cast<size_t>(n_) * k);
  }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

private:
  int degree_ = 0;
  int n_ = 1;
  std::vector<double> v_;
};

// Three scalar components (a vector quantity per node).
struct NodalVectorField {
  std::array<NodalScalarField, 3> comp;

  NodalVectorField() = default;
  explicit NodalVectorField(int degree)
      : comp{NodalScalarField(degree), NodalScalarField(degree),
             NodalScalarField(degree)} {}

  int degree() const { return comp[0].degree(); }
  NodalScalarField& operator[](int m) { return comp[m]; }
  const NodalScalarField& operator[](int m) const { return comp[m]; }
};

// A p-component state vector per node, stored component-major: the c-th
// component is itself a contiguous (i,j,k) block.
class NodalStateField {
public:
  NodalStateField() = default;
  NodalStateField(int degree, int ncomp)
      : degree_(degree), n_(degree + 1), p_(ncomp),
        v_(static_cast<size_t>(n_) * n_ * n_ * p_, 0.0) {}

  int degree() const { return degree_; }
  int n() const { return n_; }
  int ncomp() const { return p_; }
  size_t size() const { return v_.size(); }

  size_t idx(int i, int j, int k, int c) const {
    return static_cast<size_t>(i) +
           static_cast<size_t>(n_) *
               (j + static_cast<size_t>(n_) * (k + static_cast<size_t>(n_) * c));
  }
  double& at(int i, int j, int k, int c) { return v_[idx(i, j, k, c)]; }
  double at(int i, int j, int k, int c) const { return v_[idx(i, j, k, c)]; }

  // The c-th component viewed as a scalar block.
  double* comp(int c) { return v_.data() + static_cast<size_t>(n_) * n_ * n_ * c; }
  const double* comp(int c) const {
    return v_.data() + static_cast<size_t>(n_) * n_ * n_ * c;
  }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

private:
  int degree_ = 0;
  int n_ = 1;
  int p_ = 0;
  std::vector<double> v_;
};

// One state field per reference direction (e.g. the contravariant flux).
struct NodalStateVectorField {
  std::array<NodalStateField, 3> comp;

  NodalStateVectorField() = default;
  NodalStateVectorField(int degree, int ncomp)
      : comp{NodalStateField(degree, ncomp), NodalStateField(degree, ncomp),
             NodalStateField(degree, ncomp)} {}

  NodalStateField& operator[](int m) { return comp[m]; }
  const NodalStateField& operator[](int m) const { return comp[m]; }
};

// Scalar samples on one face of the reference element, indexed by the two
// tangential node indices (a, b) in cyclic order of the remaining axes.
class FaceScalarField {
public:
  FaceScalarField() = default;
  explicit FaceScalarField(int degree)
      : n_(degree + 1), v_(static_cast<size_t>(n_) * n_, 0.0) {}

  int n() const { return n_; }
  double& at(int a, int b) { return v_[static_cast<size_t>(b) * n_ + a]; }
  double at(int a, int b) const { return v_[static_cast<size_t>(b) * n_ + a]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

private:
  int n_ = 1;
  std::vector<double> v_;
};

// Face identifiers: direction d in {0,1,2}, side s in {0 (xi^d = -1), 1 (+1)}.
enum class Face : int {
  XiMinus = 0, XiPlus = 1,
  EtaMinus = 2, EtaPlus = 3,
  ZetaMinus = 4, ZetaPlus = 5,
};

inline int face_dir(Face f) { return static_cast<int>(f) / 2; }
inline int face_side(Face f) { return static_cast<int>(f) % 2; }
inline Face make_face(int dir, int side) { return static_cast<Face>(2 * dir + side); }

// Volume (i,j,k) of face node (a,b): the normal index is pinned to 0 or N and
// (a,b) fill the other two axes in increasing order.
inline std::array<int, 3> face_node(Face f, int a, int b, int degree) {
  const int fixed = face_side(f) == 0 ? 0 : degree;
  switch (face_dir(f)) {
    case 0: return {fixed, a, b};
    case 1: return {a, fixed, b};
    default: return {a, b, fixed};
  }
}

}  // namespace splitdg
