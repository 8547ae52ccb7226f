#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "reebkit/geometry.hpp"
#include "reebkit/random.hpp"

namespace testing {

inline std::vector<double> vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline Eigen::VectorXd eig(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double gaussian(reebkit::SplitMix64& rng) {
  const double u = 1.0 - rng.uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * rng.uniform());
}

// Random unit vector tangent to M at x, as a combination of frame vectors.
inline Eigen::VectorXd random_tangent(const reebkit::ContactManifold& m, const Eigen::VectorXd& x,
                                      reebkit::SplitMix64& rng) {
  const Eigen::MatrixXd F = reebkit::frame_matrix(m, x);
  Eigen::VectorXd c(F.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = gaussian(rng);
  return F * c.normalized();
}

// Random rotation of R^d from the QR factorization of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(int d, reebkit::SplitMix64& rng) {
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gaussian(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

}  // namespace testing
