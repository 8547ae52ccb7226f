#pragma once

// Invariant polynomials of contact Hamiltonians, moment maps of group actions
// and the Hopf prequantization bundle.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "reebkit/hamiltonian.hpp"
#include "reebkit/integration.hpp"
#include "reebkit/zoo.hpp"

namespace reebkit {

/// Element of the Lie algebra of a torus (real vector) or of U(n+1)
/// (anti-Hermitian matrix).
struct LieAlgebraElement {
  Eigen::VectorXd real;
  Eigen::MatrixXcd matrix;

  static LieAlgebraElement torus(Eigen::VectorXd a);
  /// Throws std::invalid_argument unless A + A^* = 0 to 1e-12.
  static LieAlgebraElement unitary(Eigen::MatrixXcd A);

  bool is_zero() const;
  LieAlgebraElement operator*(double s) const;
  LieAlgebraElement operator+(const LieAlgebraElement& o) const;
};

/// A strict contact action of a compact group on M, given through its
/// infinitesimal action A -> A-bar.
class GroupAction {
 public:
  enum class Kind { torus_shift, diagonal_torus, unitary };

  /// (A, B) -> A d/dx + B d/dy on T^3.
  static GroupAction torus_shift(const ContactManifold& torus);
  /// a -> i diag(a) z on a sphere or ellipsoid in C^{n+1}.
  static GroupAction diagonal_torus(const ContactManifold& m);
  /// A -> A z on the round sphere in C^{n+1}.
  static GroupAction unitary(const ContactManifold& sphere);

  Kind kind() const { return kind_; }
  std::string name() const;
  const ContactManifold& manifold() const { return m_; }
  /// Dimension of the algebra's parameter vector (torus) or n+1 (unitary).
  int rank() const { return rank_; }

  VectorField fundamental_field(const LieAlgebraElement& A) const;
  LieAlgebraElement random_element(SplitMix64& rng) const;
  void validate(const LieAlgebraElement& A) const;

 private:
  GroupAction(Kind k, ContactManifold m, int rank);
  Kind kind_;
  ContactManifold m_;
  int rank_;
};

/// <m(p), A> = alpha_p(A-bar(p)).
double moment(const GroupAction& action, const AmbientPoint& p, const LieAlgebraElement& A);
/// p -> <m(p), A> as a Reeb-invariant Hamiltonian.
Hamiltonian moment_hamiltonian(const GroupAction& action, const LieAlgebraElement& A);

/// I_k(H_1, ..., H_k) = int_M H_1 ... H_k alpha ^ (d alpha)^n. Arguments not
/// known to be Reeb-invariant are spot-checked and reported in `warnings`.
struct PolynomialResult : IntegralResult {
  std::vector<std::string> warnings;
};
PolynomialResult invariant_polynomial_I(const ContactManifold& m, const std::vector<Hamiltonian>& H,
                                        const Budget& budget = {});

/// I_k on the moment Hamiltonians m(-, A_1), ..., m(-, A_k).
PolynomialResult pullback_polynomial(const GroupAction& action, const std::vector<LieAlgebraElement>& A,
                                     const Budget& budget = {});

struct PositivityResult {
  IntegralResult integral;
  bool certified = false;  // value - 3 std_error > 0
};
/// I_{2l}(m(-,A), ..., m(-,A)). Rejects A = 0 and A with vanishing field.
PositivityResult even_positivity_check(const GroupAction& action, const LieAlgebraElement& A, int l,
                                       const Budget& budget = {});

struct CirclePullback {
  IntegralResult raw;         // t^k vol_alpha(M)
  IntegralResult normalized;  // time rescaled so the Reeb circle has period 2 pi
  double period = 0.0;
};
/// Requires a periodic Reeb flow (m.reeb_period).
CirclePullback reeb_circle_pullback(const ContactManifold& m, int k, double t, const Budget& budget = {});

/// c_l = int_0^{2 pi} cos^{2l}(n t) dt = 2 pi C(2l, l) / 4^l.
double wallis_c(int l);
/// Toric pullback value 4 n pi^2 c_l (A^2 + B^2)^l for k = 2l; 0 for odd k.
double toric_closed_form(int n, int k, double A, double B);
/// int over S^{2n+1} of prod_j |z_j|^{2 m_j} with the round measure.
double sphere_monomial_integral(const std::vector<int>& m);
/// Exact pullback of diagonal generators a_1..a_k on scale * alpha_st on S^{2n+1}.
double sphere_diagonal_closed_form(int n, double scale, const std::vector<Eigen::VectorXd>& a);

/// Hopf fibration S^3 -> S^2 with connection scale * alpha_st.
struct Prequantization {
  ContactManifold total;
  std::string base = "S^2";
  /// dalpha = kappa p^*(dA) with dA the outward area form of S^2; measured.
  double kappa = 0.0;
  /// Period of the Reeb orbits, which are the fibres.
  double fiber_period = 0.0;
  /// omega = |kappa| dA, the base form in its symplectic orientation.
  double omega_density() const { return std::abs(kappa); }
  /// 2 pi / fiber_period.
  double normalization() const;

  Eigen::Vector3d project(const Eigen::VectorXd& z) const;
  /// A point of the fibre over s in S^2.
  Eigen::VectorXd lift(const Eigen::Vector3d& s) const;
};

Prequantization hopf_prequantization(double scale = 1.0);

/// max |dalpha(v, w) - omega(dp v, dp w)| over random tangent pairs.
double curvature_defect(const Prequantization& preq, std::size_t samples, std::uint64_t seed = 5);

/// J_k(h_1..h_k) = int_B h_1 ... h_k omega by Gauss-Legendre x trapezoid
/// quadrature with budget.nodes nodes in the height coordinate.
IntegralResult hamiltonian_reznikov_J(const Prequantization& preq, const std::vector<ScalarField>& h,
                                      const Budget& budget = {});

/// h with H = h o p. Throws std::invalid_argument if H is not fibre-invariant.
ScalarField descend(const Prequantization& preq, const Hamiltonian& H, std::size_t samples = 200);
/// h minus its omega-mean.
ScalarField normalize_base(const Prequantization& preq, const ScalarField& h, const Budget& budget = {});
/// q-hat(H) = descend then normalize.
ScalarField normalize_hamiltonian(const Prequantization& preq, const Hamiltonian& H, const Budget& budget = {});

/// h o p as a Hamiltonian on the total space, for h given generically on R^3.
template <class F>
Hamiltonian pull_up(F h) {
  return Hamiltonian(ScalarField([h](auto z) {
                       using T = scalar_of<decltype(z)>;
                       std::array<T, 3> s = zoo::hopf_coordinates<T>(z);
                       return h(std::span<const T>(s.data(), 3));
                     }),
                     ReebInvariance::yes);
}

struct FiberCheck {
  double C = 0.0;
  double std_error = 0.0;   // largest single-trial standard error
  double dispersion = 0.0;  // relative standard deviation of the ratios
  std::vector<double> ratios;
  std::size_t skipped = 0;
};
/// Ratio int_M (h o p) alpha ^ d alpha / int_B h omega over `trials` random
/// trigonometric h; the first trial is h = 1.
FiberCheck fiber_integration_check(const Prequantization& preq, std::size_t trials, const Budget& budget = {},
                                   std::uint64_t seed = 3);

struct RelationCheck {
  double lhs = 0.0;        // J_k(q h_1, ..., q h_k)
  double rhs = 0.0;        // I_k / C + R_k
  double top = 0.0;        // I_k / C
  double remainder = 0.0;  // R_k
  double sigma = 0.0;
  double residual = 0.0;
  bool passed = false;
};
/// Both sides of J_k(q h) = (1/C) I_k(H) + R_k with C the fibre period.
RelationCheck prequantization_relation_check(const Prequantization& preq, const std::vector<Hamiltonian>& H,
                                             const Budget& budget = {});

struct EulerReport {
  double omega_integral = 0.0;  // int_B omega
  double raw = 0.0;             // int_B omega / 2 pi
  double normalized = 0.0;      // int_B omega / fiber period
  long nearest = 0;
  double defect = 0.0;          // |normalized - nearest|
  std::vector<std::string> warnings;
};
EulerReport euler_number(const Prequantization& preq, const Budget& budget = {});

}  // namespace reebkit
