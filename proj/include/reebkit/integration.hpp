#pragma once

// Integration of functions against the contact volume alpha ^ (d alpha)^n.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "reebkit/geometry.hpp"

namespace reebkit {

enum class IntegrationMethod { automatic, quadrature, monte_carlo };

std::string to_string(IntegrationMethod m);

struct Budget {
  std::size_t samples = 200'000;  // Monte Carlo sample count
  int nodes = 48;                 // quadrature nodes per dimension
  std::uint64_t seed = 20240611;
  IntegrationMethod method = IntegrationMethod::automatic;
  /// When positive, results with larger std_error are flagged.
  double target_std_error = 0.0;
};

struct IntegralResult {
  double value = 0.0;
  double std_error = 0.0;
  IntegrationMethod method = IntegrationMethod::quadrature;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool flagged = false;
};

/// Weighted nodes representing the contact volume: the integral of f is
/// approximated by sum_i weight_i f(x_i). Monte Carlo sets store weights that
/// already include the 1/N factor.
class MeasureSamples {
 public:
  MeasureSamples(int dim, IntegrationMethod method, std::uint64_t seed) : dim_(dim), method_(method), seed_(seed) {}

  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  IntegrationMethod method() const { return method_; }
  std::uint64_t seed() const { return seed_; }

  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)}; }
  Eigen::VectorXd point_vector(std::size_t i) const;
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  void resize(std::size_t n) {
    coords_.assign(n * static_cast<std::size_t>(dim_), 0.0);
    weights_.assign(n, 0.0);
  }
  std::span<double> mutable_point(std::size_t i) { return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)}; }
  double& mutable_weight(std::size_t i) { return weights_[i]; }

 private:
  int dim_;
  IntegrationMethod method_;
  std::uint64_t seed_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

/// Product trapezoid nodes on the torus, or reference-measure samples
/// reweighted by density * contact_defect on embedded manifolds.
MeasureSamples sample_measure(const ContactManifold& m, const Budget& budget);

/// sample_measure with a small process-wide cache keyed by manifold id and budget.
std::shared_ptr<const MeasureSamples> cached_measure(const ContactManifold& m, const Budget& budget);

/// Combines per-node integrand values into an estimate with standard error.
IntegralResult combine(const MeasureSamples& s, std::span<const double> values, std::size_t begin, std::size_t end);
IntegralResult combine(const MeasureSamples& s, std::span<const double> values);

std::vector<double> evaluate(const MeasureSamples& s, const std::function<double(std::span<const double>)>& f);

IntegralResult integrate(const MeasureSamples& s, const ScalarField& f);
IntegralResult integrate(const ContactManifold& m, const ScalarField& f, const Budget& budget);

/// vol_alpha(M).
IntegralResult volume(const ContactManifold& m, const Budget& budget);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// True when |a - b| <= k sigma, plus a round-off floor of 1e-12 relative to
/// max(|a|, |b|, scale). Pass `scale` when the values cancel to near zero.
bool within_sigma(double a, double b, double sigma, double k = 3.0, double scale = 0.0);

}  // namespace reebkit
