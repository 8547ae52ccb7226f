#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "reebkit/flow.hpp"
#include "reebkit/integration.hpp"
#include "reebkit/zoo.hpp"
#include "support.hpp"

using namespace reebkit;
using testing::eig;
using testing::vec;

TEST_CASE("every zoo manifold is contact at 10^4 random points") {
  const std::vector<ContactManifold> zoo_list{zoo::standard_sphere(1),
                                              zoo::standard_sphere(2),
                                              zoo::torus3(1),
                                              zoo::torus3(4),
                                              zoo::weighted_sphere(WeightVector({1.0, zoo::golden_ratio})),
                                              zoo::weighted_sphere(WeightVector({0.3, 2.0, 5.0})),
                                              zoo::unit_cotangent_surface(SurfaceMetric::round()),
                                              zoo::unit_cotangent_surface(SurfaceMetric::tilted(0.1))};
  SplitMix64 rng(1);
  for (const auto& m : zoo_list) {
    double lo = 1e300;
    for (int i = 0; i < 10000; ++i) lo = std::min(lo, contact_defect(m, random_point(m, rng)));
    INFO(m.name);
    CHECK(lo > 0.0);
  }
}

TEST_CASE("constructors reject invalid parameters") {
  CHECK_THROWS_AS(zoo::standard_sphere(0), std::invalid_argument);
  CHECK_THROWS_AS(zoo::torus3(0), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("S^5 Reeb residuals") {
  const auto S5 = zoo::standard_sphere(2);
  SplitMix64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const AmbientPoint p = random_point(S5, rng);
    const auto r = reeb_residuals(S5, p, reeb_field(S5, p));
    CHECK(r.alpha <= 1e-10);
    CHECK(r.kernel <= 1e-10);
  }
}

TEST_CASE("T^3 volumes are n (2 pi)^3") {
  for (int n : {1, 2, 3}) {
    const auto r = volume(zoo::torus3(n), {});
    CHECK(r.method == IntegrationMethod::quadrature);
    CHECK(r.std_error == 0.0);
    CHECK(r.value == doctest::Approx(n * std::pow(2.0 * M_PI, 3)).epsilon(1e-13));
  }
}

TEST_CASE("weights 1/pi give the unit sphere with alpha_st") {
  const auto E = zoo::weighted_sphere(WeightVector({1.0 / M_PI, 1.0 / M_PI}));
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const AmbientPoint p = random_point(E, rng);
    CHECK(p.coords.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(contact_defect(E, p) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK((reeb_field(E, p).components - eig(oracle::sphere_reeb(vec(p.coords)))).norm() <= 1e-8);
  }
}

TEST_CASE("weighted Reeb orbits follow exp(2 pi i w_j t)") {
  const std::vector<double> w{0.8, 1.7};
  const auto E = zoo::weighted_sphere(WeightVector(w));
  SplitMix64 rng(4);
  const AmbientPoint p = random_point(E, rng);
  for (double t : {0.1, 1.0, 3.3}) {
    CHECK((zoo::weighted_flow_exact(WeightVector(w), p.coords, t) - eig(oracle::weighted_flow(vec(p.coords), w, t)))
              .norm() <= 1e-14);
    CHECK((flow_map(E, ReebFlow{}, p.coords, t) - eig(oracle::weighted_flow(vec(p.coords), w, t))).norm() <= 1e-8);
  }
}

TEST_CASE("golden weights: no periodic orbit through a generic start within T = 200") {
  // Expected to fail: t = 144 and phi * 144 are both within 0.0016 of an
  // integer, so every start returns to within a few thousandths.
  const std::vector<double> w{1.0, zoo::golden_ratio};
  const auto E = zoo::weighted_sphere(WeightVector(w));
  SplitMix64 rng(5);
  const AmbientPoint p = random_point(E, rng);
  const auto traj = integrate_flow(E, ReebFlow{}, p, 200.0);
  const ReturnResult r = min_return_distance(E, traj, 1.0);
  const double brute = oracle::weighted_return_bruteforce(vec(p.coords), w, 1.0, 200.0, 4'000'000);
  CHECK(r.distance == doctest::Approx(brute).epsilon(1e-3));
  CHECK(r.distance > 1e-2);
}

TEST_CASE("round ST*S^2: Reeb orbits are great circles of period 2 pi") {
  const auto M = zoo::unit_cotangent_surface(SurfaceMetric::round());
  SplitMix64 rng(6);
  for (int i = 0; i < 5; ++i) {
    const AmbientPoint p = random_point(M, rng);
    CHECK((reeb_field(M, p).components - eig(oracle::round_cotangent_reeb(vec(p.coords)))).norm() <= 1e-8);
    const Eigen::VectorXd back = flow_map(M, ReebFlow{}, p.coords, 2.0 * M_PI);
    CHECK((back - p.coords).norm() <= 1e-6);
    const Eigen::VectorXd half = flow_map(M, ReebFlow{}, p.coords, M_PI);
    CHECK((half.head<3>() + p.coords.head<3>()).norm() <= 1e-6);
  }
  CHECK(strictness_check(M, ReebFlow{}, 1.0, 20) <= 1e-8);
}

TEST_CASE("tilted metric: geodesic energy is conserved") {
  const double a = 0.1;
  const auto M = zoo::unit_cotangent_surface(SurfaceMetric::tilted(a));
  SplitMix64 rng(7);
  const AmbientPoint p = random_point(M, rng);
  const auto traj = integrate_flow(M, ReebFlow{}, p, 20.0);
  double worst = 0.0;
  for (const auto& x : traj.points) {
    const double energy = std::exp(-a * x[2]) * x.tail<3>().norm();
    worst = std::max(worst, std::abs(energy - 1.0));
  }
  CHECK(traj.size() > 10);
  CHECK(worst <= 1e-8);
}

TEST_CASE("Hopf projection") {
  Eigen::VectorXd z(4);
  z << 1, 0, 0, 0;
  CHECK((zoo::hopf_projection(z) - Eigen::Vector3d(0, 0, 1)).norm() == 0.0);
  const auto S3 = zoo::standard_sphere(1);
  SplitMix64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd x = random_point(S3, rng).coords;
    const Eigen::Vector3d s = zoo::hopf_projection(x);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const double t = 2.0 * M_PI * rng.uniform();
    const Eigen::VectorXd y = eig(oracle::weighted_flow(vec(x), {1.0 / M_PI, 1.0 / M_PI}, t));
    CHECK((zoo::hopf_projection(y) - s).norm() <= 1e-12);
  }
}

TEST_CASE("Hopf projection is constant along the integrated Reeb flow") {
  const auto S3 = zoo::standard_sphere(1);
  SplitMix64 rng(9);
  const AmbientPoint p = random_point(S3, rng);
  const auto traj = integrate_flow(S3, ReebFlow{}, p, 10.0);
  const Eigen::Vector3d s0 = zoo::hopf_projection(p.coords);
  double worst = 0.0;
  for (const auto& x : traj.points) worst = std::max(worst, (zoo::hopf_projection(x) - s0).norm());
  CHECK(worst <= 1e-10);
}
