#pragma once

// Small fixed-size linear algebra used throughout: 3-vectors for geometry and
// dense row-major p x p matrices (p <= 8) for the system coefficients.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace splitdg {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Dense row-major p x p matrix with inline storage.
class SmallMat {
public:
  static constexpr int MaxDim = 8;

  SmallMat() = default;
  explicit SmallMat(int p) : p_(p) { a_.fill(0.0); }

  int dim() const { return p_; }
  double& operator()(int r, int c) { return a_[r * p_ + c]; }
  double operator()(int r, int c) const { return a_[r * p_ + c]; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  static SmallMat identity(int p) {
    SmallMat m(p);
    for (int i = 0; i < p; ++i) m(i, i) = 1.0;
    return m;
  }

  SmallMat operator+(const SmallMat& o) const {
    SmallMat r(p_);
    for (int i = 0; i < p_ * p_; ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }
  SmallMat operator-(const SmallMat& o) const {
    SmallMat r(p_);
    for (int i = 0; i < p_ * p_; ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }
  SmallMat operator*(double s) const {
    SmallMat r(p_);
    for (int i = 0; i < p_ * p_; ++i) r.a_[i] = a_[i] * s;
    return r;
  }
  SmallMat operator*(const SmallMat& o) const {
    SmallMat r(p_);
    for (int i = 0; i < p_; ++i)
      for (int k = 0; k < p_; ++k) {
        const double aik = (*this)(i, k);
        for (int j = 0; j < p_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  SmallMat transposed() const {
    SmallMat r(p_);
    for (int i = 0; i < p_; ++i)
      for (int j = 0; j < p_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  // y = M u
  void apply(const double* u, double* y) const {
    for (int i = 0; i < p_; ++i) {
      double s = 0;
      for (int j = 0; j < p_; ++j) s += (*this)(i, j) * u[j];
      y[i] = s;
    }
  }

  double max_abs() const {
    double m = 0;
    for (int i = 0; i < p_ * p_; ++i) m = std::max(m, std::abs(a_[i]));
    return m;
  }

  double symmetry_defect() const {
    double d = 0;
    for (int i = 0; i < p_; ++i)
      for (int j = i + 1; j < p_; ++j)
        d = std::max(d, std::abs((*this)(i, j) - (*this)(j, i)));
    return d;
  }

private:
  int p_ = 0;
  std::array<double, MaxDim * MaxDim> a_{};
};

// Spectral 2-norm of a symmetric matrix via cyclic Jacobi rotations.
double sym_two_norm(const SmallMat& m);

// Deterministic uniform draw on [-1, 1] from raw mt19937_64 bits, independent
// of the standard library's distribution implementation.
class UniformPM1 {
public:
  explicit UniformPM1(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  double operator()() {
    // splitmix64; top 53 bits give a uniform double in [0, 1)
    s_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  }

private:
  std::uint64_t s_;
};

}  // namespace splitdg
