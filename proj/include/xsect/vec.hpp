#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace xsect {

/// Fixed-dimension point/vector used throughout (D = 2 or 3).
template <int D>
struct Vec {
  static_assert(D == 2 || D == 3, "only 2D and 3D are supported");
  std::array<double, D> c{};

  constexpr Vec() = default;
  constexpr explicit Vec(const std::array<double, D>& a) : c(a) {}
  constexpr Vec(double x, double y) requires(D == 2) : c{x, y} {}
  constexpr Vec(double x, double y, double z) requires(D == 3) : c{x, y, z} {}

  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  constexpr Vec& operator+=(const Vec& o) {
    for (int i = 0; i < D; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    for (int i = 0; i < D; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    for (int i = 0; i < D; ++i) c[i] *= s;
    return *this;
  }
  friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
  friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
  friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
  friend constexpr bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }

  friend std::ostream& operator<<(std::ostream& os, const Vec& v) {
    os << '(';
    for (int i = 0; i < D; ++i) os << (i ? ", " : "") << v.c[i];
    return os << ')';
  }
};

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <int D>
constexpr double dot(const Vec<D>& a, const Vec<D>& b) {
  double s = 0.0;
  for (int i = 0; i < D; ++i) s += a[i] * b[i];
  return s;
}

template <int D>
inline double norm(const Vec<D>& a) {
  return std::sqrt(dot(a, a));
}

template <int D>
inline double distance(const Vec<D>& a, const Vec<D>& b) {
  return norm(a - b);
}

template <int D>
inline Vec<D> normalized(const Vec<D>& a) {
  return a * (1.0 / norm(a));
}

template <int D>
inline bool is_finite(const Vec<D>& a) {
  for (int i = 0; i < D; ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

constexpr double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Counter-clockwise perpendicular.
constexpr Vec2 perp(const Vec2& a) { return {-a[1], a[0]}; }

}  // namespace xsect
