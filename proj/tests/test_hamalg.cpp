#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "reebkit/chern_weil.hpp"
#include "reebkit/flow.hpp"
#include "reebkit/hamiltonian.hpp"
#include "reebkit/zoo.hpp"
#include "support.hpp"

using namespace reebkit;
using testing::eig;
using testing::vec;

namespace {

// Random trigonometric polynomial on T^3, usable with either dual type.
struct Trig {
  struct Term {
    double c, phase;
    int kx, ky, kt;
  };
  std::vector<Term> terms;

  static Trig random(SplitMix64& rng, int count = 4) {
    Trig t;
    auto freq = [&] { return static_cast<int>(rng() % 5) - 2; };
    for (int i = 0; i < count; ++i) t.terms.push_back({testing::gaussian(rng), 2.0 * M_PI * rng.uniform(), freq(), freq(), freq()});
    return t;
  }

  template <class T>
  T operator()(T x, T y, T t) const {
    using std::cos;
    T s = 0.0 * x;
    for (const auto& k : terms) s = s + k.c * cos(double(k.kx) * x + double(k.ky) * y + double(k.kt) * t + k.phase);
    return s;
  }
};

template <class F>
Hamiltonian on_torus(F h) {
  return Hamiltonian(ScalarField([h](auto x) { return h(x[0], x[1], x[2]); }));
}

std::array<double, 3> arr(const Eigen::VectorXd& v) { return {v[0], v[1], v[2]}; }

Hamiltonian ambient_trig(SplitMix64& rng, int d) {
  std::vector<double> a(static_cast<std::size_t>(2 * d));
  for (auto& c : a) c = testing::gaussian(rng);
  return Hamiltonian(ScalarField([a, d](auto x) {
    using std::cos;
    using std::sin;
    auto s = 0.0 * x[0];
    for (int j = 0; j < d; ++j) s = s + a[2 * j] * sin(a[2 * j + 1] * x[j] + 0.3 * j) + 0.2 * x[j] * x[(j + 1) % d];
    return s;
  }));
}

const Hamiltonian one{ScalarField::constant(1.0), ReebInvariance::yes};

}  // namespace

TEST_CASE("alpha of the Reeb field is 1") {
  const auto S3 = zoo::standard_sphere(1);
  const VectorField R(4, [](auto x, auto out) {
    out[0] = -2.0 * x[1];
    out[1] = 2.0 * x[0];
    out[2] = -2.0 * x[3];
    out[3] = 2.0 * x[2];
  });
  SplitMix64 rng(1);
  for (int i = 0; i < 50; ++i) CHECK(field_to_hamiltonian(S3, R, random_point(S3, rng)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("alpha of iz is 1/2 and alpha of a contact-plane field is 0") {
  const auto S3 = zoo::standard_sphere(1);
  const VectorField iz(4, [](auto x, auto out) {
    out[0] = -x[1];
    out[1] = x[0];
    out[2] = -x[3];
    out[3] = x[2];
  });
  // (-conj z_1, conj z_0) lies in ker alpha_st.
  const VectorField jz(4, [](auto x, auto out) {
    out[0] = -x[2];
    out[1] = x[3];
    out[2] = x[0];
    out[3] = -x[1];
  });
  SplitMix64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const AmbientPoint p = random_point(S3, rng);
    CHECK(field_to_hamiltonian(S3, iz, p) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(field_to_hamiltonian(S3, jz, p)) <= 1e-15);
    CHECK(tangency_defect(S3, {jz(p.coords), p}) <= 1e-15);
  }
}

TEST_CASE("the contact field of 1 is the Reeb field") {
  SplitMix64 rng(3);
  for (const auto& m : {zoo::standard_sphere(1), zoo::torus3(2), zoo::weighted_sphere(WeightVector({1.0, 2.5})),
                        zoo::unit_cotangent_surface(SurfaceMetric::tilted(0.2))}) {
    for (int i = 0; i < 20; ++i) {
      const AmbientPoint p = random_point(m, rng);
      CHECK((hamiltonian_to_field(m, one, p).components - reeb_field(m, p).components).norm() <= 1e-10);
    }
  }
}

TEST_CASE("moment Hamiltonians generate the fundamental fields") {
  SplitMix64 rng(4);
  const auto T3 = zoo::torus3(2);
  const auto shift = GroupAction::torus_shift(T3);
  Eigen::VectorXd ab(2);
  ab << 0.7, -1.2;
  const auto H = moment_hamiltonian(shift, LieAlgebraElement::torus(ab));
  for (int i = 0; i < 20; ++i) {
    const AmbientPoint p = random_point(T3, rng);
    CHECK((hamiltonian_to_field(T3, H, p).components - Eigen::Vector3d(0.7, -1.2, 0.0)).norm() <= 1e-8);
  }
  const auto S5 = zoo::standard_sphere(2);
  const auto diag = GroupAction::diagonal_torus(S5);
  Eigen::VectorXd a(3);
  a << 0.4, -1.0, 2.0;
  const auto A = LieAlgebraElement::torus(a);
  const auto Ha = moment_hamiltonian(diag, A);
  for (int i = 0; i < 20; ++i) {
    const AmbientPoint p = random_point(S5, rng);
    Eigen::VectorXd expect(6);
    for (int j = 0; j < 3; ++j) {
      expect[2 * j] = -a[j] * p.coords[2 * j + 1];
      expect[2 * j + 1] = a[j] * p.coords[2 * j];
    }
    const auto X = hamiltonian_to_field(S5, Ha, p);
    CHECK((X.components - expect).norm() <= 1e-8);
    CHECK((X.components - diag.fundamental_field(A)(p.coords)).norm() <= 1e-8);
  }
}

TEST_CASE("round trip H -> X_H -> alpha(X_H) on 100 instances") {
  SplitMix64 rng(5);
  const std::vector<ContactManifold> ms{zoo::standard_sphere(1), zoo::torus3(1),
                                        zoo::weighted_sphere(WeightVector({0.5, 1.5})), zoo::standard_sphere(2)};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& m = ms[static_cast<std::size_t>(i) % ms.size()];
    const Hamiltonian H = ambient_trig(rng, m.ambient_dim);
    const AmbientPoint p = random_point(m, rng);
    const TangentVector X = hamiltonian_to_field(m, H, p);
    CHECK(tangency_defect(m, X) <= 1e-10);
    worst = std::max(worst, std::abs(m.form.apply(p.coords, X.components) - H(p.coords)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("the correspondence is linear") {
  SplitMix64 rng(6);
  const auto S3 = zoo::standard_sphere(1);
  for (int i = 0; i < 50; ++i) {
    const Hamiltonian H1 = ambient_trig(rng, 4), H2 = ambient_trig(rng, 4);
    const double a = testing::gaussian(rng), b = testing::gaussian(rng);
    const Hamiltonian H(H1.f.scaled(a) + H2.f.scaled(b));
    const AmbientPoint p = random_point(S3, rng);
    const Eigen::VectorXd lhs = hamiltonian_to_field(S3, H, p).components;
    const Eigen::VectorXd rhs =
        a * hamiltonian_to_field(S3, H1, p).components + b * hamiltonian_to_field(S3, H2, p).components;
    CHECK((lhs - rhs).norm() <= 1e-9);
  }
}

TEST_CASE("bracket of H with itself vanishes") {
  SplitMix64 rng(7);
  const auto S3 = zoo::standard_sphere(1);
  for (int i = 0; i < 20; ++i) {
    const Hamiltonian H = ambient_trig(rng, 4);
    CHECK(std::abs(bracket(S3, H, H, random_point(S3, rng))) <= 1e-12);
  }
}

TEST_CASE("bracket with 1 vanishes on Reeb-invariant H") {
  SplitMix64 rng(8);
  const auto S3 = zoo::standard_sphere(1);
  const Hamiltonian H{ScalarField([](auto x) { return x[0] * x[0] + x[1] * x[1] - 0.3 * (x[2] * x[2] + x[3] * x[3]); })};
  for (int i = 0; i < 20; ++i) CHECK(std::abs(bracket(S3, one, H, random_point(S3, rng))) <= 1e-12);
}

TEST_CASE("bracket(cos nt, sin nt) matches -alpha([X, Y])") {
  SplitMix64 rng(9);
  for (int n : {1, 2, 3}) {
    const auto T3 = zoo::torus3(n);
    auto c = [n](auto, auto, auto t) {
      using std::cos;
      return cos(double(n) * t);
    };
    auto s = [n](auto, auto, auto t) {
      using std::sin;
      return sin(double(n) * t);
    };
    for (int i = 0; i < 20; ++i) {
      const AmbientPoint p = random_point(T3, rng);
      const double ref = oracle::torus_bracket_oracle(c, s, arr(p.coords), n);
      // Both are moment Hamiltonians of the abelian shift action.
      CHECK(std::abs(ref) <= 1e-12);
      CHECK(std::abs(bracket(T3, on_torus(c), on_torus(s), p) - ref) <= 1e-7);
    }
  }
}

TEST_CASE("bracket of random trigonometric Hamiltonians matches the Lie bracket oracle") {
  SplitMix64 rng(10);
  const auto T3 = zoo::torus3(2);
  double largest = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Trig a = Trig::random(rng), b = Trig::random(rng);
    const AmbientPoint p = random_point(T3, rng);
    const double ref = oracle::torus_bracket_oracle(a, b, arr(p.coords), 2);
    largest = std::max(largest, std::abs(ref));
    CHECK(std::abs(bracket(T3, on_torus(a), on_torus(b), p) - ref) <= 1e-7 * std::max(1.0, std::abs(ref)));
  }
  CHECK(largest > 1.0);
}

TEST_CASE("bracket antisymmetry on 100 random pairs") {
  SplitMix64 rng(11);
  const std::vector<ContactManifold> ms{zoo::torus3(1), zoo::standard_sphere(1), zoo::weighted_sphere(WeightVector({1.0, 3.0}))};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& m = ms[static_cast<std::size_t>(i) % ms.size()];
    const Hamiltonian H1 = m.is_torus() ? on_torus(Trig::random(rng)) : ambient_trig(rng, 4);
    const Hamiltonian H2 = m.is_torus() ? on_torus(Trig::random(rng)) : ambient_trig(rng, 4);
    const AmbientPoint p = random_point(m, rng);
    worst = std::max(worst, std::abs(bracket(m, H1, H2, p) + bracket(m, H2, H1, p)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("Jacobi identity on 100 random triples on T^3") {
  SplitMix64 rng(12);
  const auto T3 = zoo::torus3(1);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Hamiltonian A = on_torus(Trig::random(rng, 3)), B = on_torus(Trig::random(rng, 3)),
                      C = on_torus(Trig::random(rng, 3));
    const AmbientPoint p = random_point(T3, rng);
    const double j = bracket(T3, A, bracket_field(T3, B, C), p) + bracket(T3, B, bracket_field(T3, C, A), p) +
                     bracket(T3, C, bracket_field(T3, A, B), p);
    worst = std::max(worst, std::abs(j));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("Reeb invariance detection") {
  const auto S3 = zoo::standard_sphere(1);
  const Hamiltonian z0sq{ScalarField([](auto x) { return x[0] * x[0] + x[1] * x[1]; })};
  const Hamiltonian re_z0{ScalarField([](auto x) { return x[0]; })};
  const Hamiltonian c(ScalarField::constant(3.0));
  const auto a = is_reeb_invariant(S3, z0sq, 1000);
  CHECK(a.invariant);
  CHECK(a.max_defect <= 1e-8);
  const auto b = is_reeb_invariant(S3, re_z0, 1000);
  CHECK_FALSE(b.invariant);
  CHECK(b.max_defect > 1.0);
  CHECK(is_reeb_invariant(S3, c, 1000).invariant);
  CHECK(checked(S3, z0sq).reeb_invariant == ReebInvariance::yes);
  CHECK(checked(S3, re_z0).reeb_invariant == ReebInvariance::no);
}

TEST_CASE("adjoint action: identity and Reeb flows") {
  const auto S3 = zoo::standard_sphere(1);
  const Hamiltonian inv{ScalarField([](auto x) { return x[0] * x[0] + x[1] * x[1] + 0.5 * (x[0] * x[2] + x[1] * x[3]); })};
  const Hamiltonian gen = one;
  const Hamiltonian Hx{ScalarField([](auto x) { return x[0] + x[3] * x[1]; })};
  SplitMix64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const AmbientPoint p = random_point(S3, rng);
    CHECK(adjoint(S3, 0.0, Hx, Hx, p.coords) == doctest::Approx(Hx(p.coords)).epsilon(1e-14));
    CHECK(adjoint(S3, 0.9, gen, inv, p.coords) == doctest::Approx(inv(p.coords)).epsilon(1e-8));
  }
}

TEST_CASE("adjoint of a strict flow preserves I_1") {
  const auto T3 = zoo::torus3(1);
  const Hamiltonian gen = one;
  const Hamiltonian H = on_torus([](auto x, auto y, auto t) {
    using std::cos;
    using std::sin;
    return cos(x) + sin(2.0 * y) * cos(t) + 0.5;
  });
  Budget b;
  b.nodes = 12;
  const ScalarField ad = adjoint_field(T3, 1.3, gen, H);
  const auto lhs = integrate(T3, ad, b);
  const auto rhs = integrate(T3, H.f, b);
  CHECK(lhs.value == doctest::Approx(rhs.value).epsilon(1e-9));
}

TEST_CASE("conformal factor of strict and non-strict flows") {
  const auto S3 = zoo::standard_sphere(1);
  const Hamiltonian inv{ScalarField([](auto x) { return 1.0 + 0.4 * (x[0] * x[0] + x[1] * x[1]); }), ReebInvariance::yes};
  const Hamiltonian re_z0{ScalarField([](auto x) { return 1.5 + x[0]; })};
  SplitMix64 rng(14);
  for (int i = 0; i < 5; ++i) {
    const AmbientPoint p = random_point(S3, rng);
    CHECK(std::abs(conformal_factor(S3, HamiltonianFlow{inv}, p.coords, 1.0) - 1.0) <= 1e-7);
    CHECK(std::abs(conformal_factor(S3, ReebFlow{}, p.coords, 2.0) - 1.0) <= 1e-7);
  }
  double spread = 0.0;
  for (int i = 0; i < 5; ++i) {
    const AmbientPoint p = random_point(S3, rng);
    spread = std::max(spread, std::abs(conformal_factor(S3, HamiltonianFlow{re_z0}, p.coords, 1.0) - 1.0));
  }
  CHECK(spread > 1e-3);
}
