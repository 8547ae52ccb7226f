#include "reebkit/integration.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "reebkit/detail/parallel.hpp"

namespace reebkit {

using std::numbers::pi;

std::string to_string(IntegrationMethod m) {
  switch (m) {
    case IntegrationMethod::automatic: return "automatic";
    case IntegrationMethod::quadrature: return "quadrature";
    case IntegrationMethod::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

Eigen::VectorXd MeasureSamples::point_vector(std::size_t i) const {
  auto p = point(i);
  return Eigen::Map<const Eigen::VectorXd>(p.data(), dim_);
}

MeasureSamples sample_measure(const ContactManifold& m, const Budget& budget) {
  IntegrationMethod method = budget.method;
  if (method == IntegrationMethod::automatic) {
    method = m.is_torus() ? IntegrationMethod::quadrature : IntegrationMethod::monte_carlo;
  }
  const int d = m.ambient_dim;
  MeasureSamples s(d, method, budget.seed);

  if (method == IntegrationMethod::quadrature) {
    if (!m.is_torus()) throw std::invalid_argument(m.name + ": product quadrature is only available on the torus");
    if (budget.nodes < 1) throw std::invalid_argument("quadrature needs at least one node per dimension");
    const std::size_t nn = static_cast<std::size_t>(budget.nodes);
    const double h = 2.0 * pi / static_cast<double>(nn);
    s.resize(nn * nn * nn);
    detail::parallel_for(nn * nn * nn, [&](std::size_t idx) {
      auto x = s.mutable_point(idx);
      x[0] = h * static_cast<double>(idx / (nn * nn));
      x[1] = h * static_cast<double>((idx / nn) % nn);
      x[2] = h * static_cast<double>(idx % nn);
      Eigen::VectorXd xv = Eigen::Map<Eigen::VectorXd>(x.data(), 3);
      s.mutable_weight(idx) = h * h * h * contact_defect(m, {xv});
    });
    return s;
  }

  if (budget.samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  const std::size_t n = budget.samples;
  s.resize(n);
  const double scale = m.reference_measure / static_cast<double>(n);
  detail::parallel_for(n, [&](std::size_t i) {
    SplitMix64 rng = SplitMix64::stream(budget.seed, i);
    WeightedPoint wp = m.sampler(rng);
    auto x = s.mutable_point(i);
    for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(k)] = wp.x[k];
    s.mutable_weight(i) = scale * wp.density * contact_defect(m, {wp.x});
  });
  return s;
}

std::shared_ptr<const MeasureSamples> cached_measure(const ContactManifold& m, const Budget& budget) {
  using Key = std::tuple<std::uint64_t, std::size_t, int, std::uint64_t, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const MeasureSamples>> cache;
  static std::deque<Key> order;
  constexpr std::size_t capacity = 6;

  const Key key{m.id, budget.samples, budget.nodes, budget.seed, static_cast<int>(budget.method)};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto fresh = std::make_shared<const MeasureSamples>(sample_measure(m, budget));
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(key, fresh);
  if (inserted) {
    order.push_back(key);
    if (order.size() > capacity) {
      cache.erase(order.front());
      order.pop_front();
    }
  }
  return it->second;
}

IntegralResult combine(const MeasureSamples& s, std::span<const double> values, std::size_t begin, std::size_t end) {
  IntegralResult r;
  r.method = s.method();
  r.seed = s.seed();
  r.samples = end - begin;
  if (s.method() == IntegrationMethod::quadrature) {
    detail::CompensatedSum sum;
    for (std::size_t i = begin; i < end; ++i) sum.add(s.weight(i) * values[i]);
    r.value = sum.value();
    return r;
  }
  const double total = static_cast<double>(s.size());
  const double count = static_cast<double>(end - begin);
  detail::CompensatedSum sum;
  for (std::size_t i = begin; i < end; ++i) sum.add(s.weight(i) * values[i] * total);
  const double mean = sum.value() / count;
  detail::CompensatedSum var;
  for (std::size_t i = begin; i < end; ++i) {
    const double dev = s.weight(i) * values[i] * total - mean;
    var.add(dev * dev);
  }
  r.value = mean;
  r.std_error = count > 1.0 ? std::sqrt(var.value() / (count - 1.0) / count) : 0.0;
  return r;
}

IntegralResult combine(const MeasureSamples& s, std::span<const double> values) {
  return combine(s, values, 0, s.size());
}

std::vector<double> evaluate(const MeasureSamples& s, const std::function<double(std::span<const double>)>& f) {
  std::vector<double> v(s.size());
  detail::parallel_for(s.size(), [&](std::size_t i) { v[i] = s.weight(i) == 0.0 ? 0.0 : f(s.point(i)); });
  return v;
}

IntegralResult integrate(const MeasureSamples& s, const ScalarField& f) {
  std::vector<double> v = evaluate(s, [&f](std::span<const double> x) { return f(x); });
  return combine(s, v);
}

IntegralResult integrate(const ContactManifold& m, const ScalarField& f, const Budget& budget) {
  IntegralResult r = integrate(*cached_measure(m, budget), f);
  r.flagged = budget.target_std_error > 0.0 && r.std_error > budget.target_std_error;
  return r;
}

IntegralResult volume(const ContactManifold& m, const Budget& budget) {
  return integrate(m, ScalarField::constant(1.0), budget);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  // Golub-Welsch: eigen-decomposition of the Jacobi matrix.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    weights[static_cast<std::size_t>(i)] = 2.0 * v0 * v0;
  }
}

bool within_sigma(double a, double b, double sigma, double k, double scale) {
  const double floor = 1e-12 * std::max({std::abs(a), std::abs(b), std::abs(scale)});
  return std::abs(a - b) <= k * sigma + floor;
}

}  // namespace reebkit
