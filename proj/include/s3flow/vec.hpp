#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace s3flow {

/// Fixed-size real vector with the handful of operations the geometry code needs.
template <std::size_t N>
struct Vec {
  std::array<double, N> c{};

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  constexpr Vec& operator/=(double s) {
    for (auto& v : c) v /= s;
    return *this;
  }

  friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
  friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
  friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
  friend constexpr Vec operator/(Vec a, double s) { return a /= s; }
  friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

using Vec3 = Vec<3>;
using Vec4 = Vec<4>;

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& a) {
  return std::sqrt(dot(a, a));
}

template <std::size_t N>
double max_abs(const Vec<N>& a) {
  double m = 0.0;
  for (double v : a.c) m = std::max(m, std::abs(v));
  return m;
}

constexpr Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

/// Determinant of the 4x4 matrix with the given columns.
double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

/// Quaternion product with q = c[0] + i c[1] + j c[2] + k c[3].
constexpr Vec4 quat_mul(const Vec4& a, const Vec4& b) {
  return {{a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
           a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
           a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
           a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]}};
}

}  // namespace s3flow
