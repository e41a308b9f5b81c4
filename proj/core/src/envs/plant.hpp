#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>

namespace stlf::envs::detail {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }
inline double norm_xy(const Vec3& a) { return std::hypot(a[0], a[1]); }

inline constexpr double kGravity = 9.81;
inline constexpr double kAccelMax = 20.0;  // m/s^2 per unit of normalized action
inline constexpr Vec3 kHome = {0.3, 0.0, 0.3};
inline constexpr Vec3 kWorkspaceLo = {-0.3, -0.9, -0.1};
inline constexpr Vec3 kWorkspaceHi = {1.3, 0.9, 1.3};

/// End effector as a 3-D double integrator under gravity.
struct Plant {
  Vec3 p{};
  Vec3 v{};
  Vec3 a{};  // acceleration applied during the last step

  /// Semi-implicit Euler with normalized action u in [-1, 1]^3.
  void step(std::span<const double> u, double dt) {
    for (std::size_t i = 0; i < 3; ++i) a[i] = kAccelMax * u[i];
    a[2] -= kGravity;
    for (std::size_t i = 0; i < 3; ++i) {
      v[i] += a[i] * dt;
      p[i] += v[i] * dt;
      if (p[i] < kWorkspaceLo[i]) {
        p[i] = kWorkspaceLo[i];
        v[i] = std::max(v[i], 0.0);
      } else if (p[i] > kWorkspaceHi[i]) {
        p[i] = kWorkspaceHi[i];
        v[i] = std::min(v[i], 0.0);
      }
    }
  }

  /// Rests on a horizontal surface at height z.
  void floor(double z) {
    if (p[2] < z) {
      p[2] = z;
      v[2] = std::max(v[2], 0.0);
    }
  }
};

struct Gains {
  double k_pos;  // signed: negative under gain_flip
  double k_vel;
  double v_max;
};

/// Cascaded position/velocity tracking with gravity compensation. Returns the
/// nominal normalized action (not yet clipped).
inline Vec3 track(const Vec3& target, const Plant& ee, const Gains& g) {
  Vec3 v_des = (target - ee.p) * g.k_pos;
  const double speed = norm(v_des);
  if (speed > g.v_max) v_des = v_des * (g.v_max / speed);
  Vec3 acc = (v_des - ee.v) * g.k_vel;
  acc[2] += kGravity;
  return acc * (1.0 / kAccelMax);
}

}  // namespace stlf::envs::detail
