#include "reebkit/zoo.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "reebkit/detail/local.hpp"

namespace reebkit {

using std::numbers::pi;

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.size() < 2) throw std::invalid_argument("WeightVector: need at least two weights");
  for (double v : w_) {
    if (!(v > 0.0)) throw std::invalid_argument("WeightVector: weights must be positive");
  }
}

SurfaceMetric SurfaceMetric::round() {
  return {ScalarField::constant(0.0), "round", true};
}

SurfaceMetric SurfaceMetric::tilted(double amplitude) {
  std::ostringstream name;
  name.precision(17);
  name << "tilted(" << amplitude << ")";
  ScalarField f([amplitude](auto q) { return amplitude * q[2]; });
  return {std::move(f), name.str(), amplitude == 0.0};
}

namespace zoo {
namespace {

double sphere_area(int ambient_dim) {
  // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
  return 2.0 * std::pow(pi, ambient_dim / 2.0) / std::tgamma(ambient_dim / 2.0);
}

Eigen::VectorXd uniform_sphere(SplitMix64& rng, int d) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd u(d);
  do {
    for (int i = 0; i < d; ++i) u[i] = normal(rng);
  } while (u.norm() < 1e-12);
  return u / u.norm();
}

OneForm liouville_form(int d, double scale) {
  return OneForm(d, [d, scale](auto x, auto out) {
    for (int j = 0; j < d / 2; ++j) {
      out[static_cast<std::size_t>(2 * j)] = -0.5 * scale * x[static_cast<std::size_t>(2 * j + 1)];
      out[static_cast<std::size_t>(2 * j + 1)] = 0.5 * scale * x[static_cast<std::size_t>(2 * j)];
    }
  });
}

}  // namespace

ContactManifold standard_sphere(int n, double scale) {
  if (n < 1) throw std::invalid_argument("standard_sphere: n must be >= 1");
  if (!(scale > 0.0)) throw std::invalid_argument("standard_sphere: scale must be positive");
  const int d = 2 * n + 2;
  ContactManifold m;
  std::ostringstream name;
  name.precision(17);
  name << "sphere(n=" << n << ",scale=" << scale << ")";
  m.name = name.str();
  m.id = next_manifold_id();
  m.n = n;
  m.ambient_dim = d;
  m.constraints.emplace_back([](auto x) {
    using T = scalar_of<decltype(x)>;
    T s(0.0);
    for (const auto& xi : x) s += xi * xi;
    return s - 1.0;
  });
  m.form = liouville_form(d, scale);
  m.form_scale = scale;
  m.reeb_period = pi * scale;
  m.reference_measure = sphere_area(d);
  m.sampler = [d](SplitMix64& rng) { return WeightedPoint{uniform_sphere(rng, d), 1.0}; };
  return m;
}

ContactManifold torus3(int n) {
  if (n < 1) throw std::invalid_argument("torus3: n must be >= 1");
  ContactManifold m;
  m.name = "torus3(n=" + std::to_string(n) + ")";
  m.id = next_manifold_id();
  m.n = 1;
  m.ambient_dim = 3;
  m.kind = ManifoldKind::flat_torus;
  const double k = n;
  m.form = OneForm(3, [k](auto x, auto out) {
    using std::cos;
    using std::sin;
    out[0] = cos(k * x[2]);
    out[1] = -sin(k * x[2]);
    out[2] = 0.0 * x[2];
  });
  m.reference_measure = std::pow(2.0 * pi, 3);
  m.sampler = [](SplitMix64& rng) {
    Eigen::VectorXd x(3);
    for (int i = 0; i < 3; ++i) x[i] = 2.0 * pi * rng.uniform();
    return WeightedPoint{x, 1.0};
  };
  return m;
}

ContactManifold degenerate_torus() {
  ContactManifold m = torus3(1);
  m.name = "degenerate_torus";
  m.id = next_manifold_id();
  m.form = OneForm(3, [](auto x, auto out) {
    out[0] = 1.0 + 0.0 * x[0];
    out[1] = 0.0 * x[0];
    out[2] = 0.0 * x[0];
  });
  return m;
}

ContactManifold weighted_sphere(const WeightVector& w) {
  const int d = 2 * static_cast<int>(w.size());
  std::vector<double> wv = w.values();
  ContactManifold m;
  std::ostringstream name;
  name.precision(17);
  name << "weighted(";
  for (std::size_t i = 0; i < wv.size(); ++i) name << (i ? "," : "") << wv[i];
  name << ")";
  m.name = name.str();
  m.id = next_manifold_id();
  m.n = static_cast<int>(w.size()) - 1;
  m.ambient_dim = d;
  m.constraints.emplace_back([wv](auto x) {
    using T = scalar_of<decltype(x)>;
    T s(0.0);
    for (std::size_t j = 0; j < wv.size(); ++j) s += wv[j] * (x[2 * j] * x[2 * j] + x[2 * j + 1] * x[2 * j + 1]);
    return pi * s - 1.0;
  });
  m.form = liouville_form(d, 1.0);
  bool equal = true;
  for (double v : wv) equal = equal && v == wv[0];
  if (equal) m.reeb_period = 1.0 / wv[0];
  m.reference_measure = sphere_area(d);
  m.sampler = [wv, d](SplitMix64& rng) {
    // Radial projection of the round sphere; density is the area Jacobian
    // r^{d-1} / <u, nu>.
    Eigen::VectorXd u = uniform_sphere(rng, d);
    double h = 0.0;
    Eigen::VectorXd grad(d);
    for (std::size_t j = 0; j < wv.size(); ++j) {
      h += pi * wv[j] * (u[2 * j] * u[2 * j] + u[2 * j + 1] * u[2 * j + 1]);
    }
    const double r = 1.0 / std::sqrt(h);
    Eigen::VectorXd p = r * u;
    for (std::size_t j = 0; j < wv.size(); ++j) {
      grad[2 * j] = 2.0 * pi * wv[j] * p[2 * j];
      grad[2 * j + 1] = 2.0 * pi * wv[j] * p[2 * j + 1];
    }
    const double cosine = u.dot(grad) / grad.norm();
    return WeightedPoint{p, std::pow(r, d - 1) / cosine};
  };
  return m;
}

ContactManifold unit_cotangent_surface(const SurfaceMetric& g) {
  ContactManifold m;
  m.name = "cotangent(" + g.name + ")";
  m.id = next_manifold_id();
  m.n = 1;
  m.ambient_dim = 6;
  const ScalarField f = g.conformal_factor;
  m.constraints.emplace_back([](auto x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - 1.0; });
  m.constraints.emplace_back([](auto x) { return x[0] * x[3] + x[1] * x[4] + x[2] * x[5]; });
  m.constraints.emplace_back([f](auto x) {
    using T = scalar_of<decltype(x)>;
    using std::exp;
    T fq = f.eval<T>(x.subspan(0, 3));
    return exp(-2.0 * fq) * (x[3] * x[3] + x[4] * x[4] + x[5] * x[5]) - 1.0;
  });
  m.form = OneForm(6, [](auto x, auto out) {
    for (std::size_t i = 0; i < 3; ++i) {
      out[i] = x[i + 3];
      out[i + 3] = 0.0 * x[i];
    }
  });
  if (g.is_round) m.reeb_period = 2.0 * pi;
  m.reference_measure = 8.0 * pi * pi;  // |S^2| * 2 pi
  m.sampler = [f](SplitMix64& rng) {
    Eigen::VectorXd q0 = uniform_sphere(rng, 3);
    const double theta = 2.0 * pi * rng.uniform();
    Eigen::Index axis = 0;
    q0.cwiseAbs().minCoeff(&axis);
    Eigen::Vector3d a = Eigen::Vector3d::Zero();
    a[axis] = 1.0;
    // (q, theta) -> (q, e^{f(q)} (cos theta u1(q) + sin theta u2(q))), smooth near q0.
    auto chart = [&](std::span<const D1> s, std::span<D1> out) {
      using std::cos;
      using std::sin;
      using std::sqrt;
      using std::exp;
      D1 nq = sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
      std::array<D1, 3> q{s[0] / nq, s[1] / nq, s[2] / nq};
      D1 aq = a[0] * q[0] + a[1] * q[1] + a[2] * q[2];
      std::array<D1, 3> u1{a[0] - aq * q[0], a[1] - aq * q[1], a[2] - aq * q[2]};
      D1 n1 = sqrt(u1[0] * u1[0] + u1[1] * u1[1] + u1[2] * u1[2]);
      for (auto& c : u1) c = c / n1;
      std::array<D1, 3> u2{q[1] * u1[2] - q[2] * u1[1], q[2] * u1[0] - q[0] * u1[2], q[0] * u1[1] - q[1] * u1[0]};
      D1 scale = exp(f.eval<D1>(std::span<const D1>(q.data(), 3)));
      for (std::size_t i = 0; i < 3; ++i) {
        out[i] = q[i];
        out[i + 3] = scale * (cos(s[3]) * u1[i] + sin(s[3]) * u2[i]);
      }
    };
    Eigen::Vector3d aq0 = a - a.dot(q0.head<3>()) * q0.head<3>();
    Eigen::Vector3d e1 = aq0.normalized();
    Eigen::Vector3d e2 = q0.head<3>().cross(e1);
    Eigen::Matrix<double, 6, 3> cols;
    Eigen::VectorXd point(6);
    for (int k = 0; k < 3; ++k) {
      std::array<D1, 4> s;
      for (int i = 0; i < 3; ++i) {
        const double dir = k == 0 ? e1[i] : k == 1 ? e2[i] : 0.0;
        s[static_cast<std::size_t>(i)] = D1(q0[i], dir);
      }
      s[3] = D1(theta, k == 2 ? 1.0 : 0.0);
      std::array<D1, 6> out;
      chart(std::span<const D1>(s.data(), 4), std::span<D1>(out.data(), 6));
      for (int i = 0; i < 6; ++i) {
        cols(i, k) = out[static_cast<std::size_t>(i)].d;
        point[i] = out[static_cast<std::size_t>(i)].v;
      }
    }
    const double jac = std::sqrt((cols.transpose() * cols).determinant());
    return WeightedPoint{point, jac};
  };
  // The contact orientation of a 3-manifold does not depend on the sign of
  // alpha; fix the frame orientation so that alpha ^ d alpha is positive.
  Eigen::VectorXd ref(6);
  ref << 1.0, 0.0, 0.0, 0.0, std::exp(f(Eigen::Vector3d(1.0, 0.0, 0.0))), 0.0;
  if (contact_defect(m, {ref}) < 0.0) m.orientation = -1;
  return m;
}

Eigen::Vector3d hopf_projection(const Eigen::VectorXd& z) {
  std::array<double, 3> s = hopf_coordinates<double>({z.data(), 4});
  return {s[0], s[1], s[2]};
}

Eigen::VectorXd weighted_flow_exact(const WeightVector& w, const Eigen::VectorXd& z0, double t) {
  Eigen::VectorXd z(z0.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double ang = 2.0 * pi * w[j] * t;
    const double c = std::cos(ang);
    const double s = std::sin(ang);
    const auto i = static_cast<Eigen::Index>(2 * j);
    z[i] = c * z0[i] - s * z0[i + 1];
    z[i + 1] = s * z0[i] + c * z0[i + 1];
  }
  return z;
}

}  // namespace zoo
}  // namespace reebkit
