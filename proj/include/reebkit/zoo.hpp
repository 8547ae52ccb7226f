#pragma once

// Example contact manifolds with explicit contact forms.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reebkit/geometry.hpp"

namespace reebkit {

/// Positive weights (w_0, ..., w_n) of H_w(z) = pi * sum_j w_j |z_j|^2.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);
  const std::vector<double>& values() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  std::vector<double> w_;
};

/// Metric e^{2f} g_round on S^2; f is a field on R^3 evaluated at the unit vector q.
struct SurfaceMetric {
  ScalarField conformal_factor;
  std::string name = "round";
  bool is_round = true;

  static SurfaceMetric round();
  /// f(q) = amplitude * q_3.
  static SurfaceMetric tilted(double amplitude);
};

namespace zoo {

/// S^{2n+1} in C^{n+1} = R^{2n+2} (coordinates x_0, y_0, x_1, y_1, ...) with
/// scale * alpha_st, alpha_st = 1/2 sum_j (x_j dy_j - y_j dx_j).
ContactManifold standard_sphere(int n, double scale = 1.0);

/// T^3 = (R / 2 pi Z)^3 with alpha_n = cos(n t) dx - sin(n t) dy.
ContactManifold torus3(int n);

/// T^3 with the closed form dx; fails the contact condition everywhere.
ContactManifold degenerate_torus();

/// Ellipsoid {H_w = 1} with the restriction of alpha_st.
ContactManifold weighted_sphere(const WeightVector& w);

/// Unit cotangent bundle of (S^2, g) in R^3 x R^3 with alpha = p . dq.
ContactManifold unit_cotangent_surface(const SurfaceMetric& g);

/// Hopf map S^3 -> S^2, (2 Re(z0 conj z1), 2 Im(z0 conj z1), |z0|^2 - |z1|^2).
Eigen::Vector3d hopf_projection(const Eigen::VectorXd& z);

template <class T>
std::array<T, 3> hopf_coordinates(std::span<const T> z) {
  // z0 conj(z1) = (x0 x1 + y0 y1) + i (y0 x1 - x0 y1)
  return {2.0 * (z[0] * z[2] + z[1] * z[3]), 2.0 * (z[1] * z[2] - z[0] * z[3]),
          z[0] * z[0] + z[1] * z[1] - z[2] * z[2] - z[3] * z[3]};
}

/// Closed-form weighted Reeb flow z_j(t) = exp(2 pi i w_j t) z_j(0).
Eigen::VectorXd weighted_flow_exact(const WeightVector& w, const Eigen::VectorXd& z0, double t);

inline constexpr double golden_ratio = 1.6180339887498948482;

}  // namespace zoo
}  // namespace reebkit
