#pragma once

// Flow integration on contact manifolds and ergodicity diagnostics.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <variant>
#include <vector>

#include "reebkit/geometry.hpp"
#include "reebkit/hamiltonian.hpp"
#include "reebkit/integration.hpp"

namespace reebkit {

struct ReebFlow {};
struct HamiltonianFlow {
  Hamiltonian H;
};
using FlowGenerator = std::variant<ReebFlow, HamiltonianFlow>;

struct FlowOptions {
  double tol = 1e-10;           // local error per step (mixed absolute/relative)
  double max_step = 0.5;
  double min_step = 1e-12;
  double drift_limit = 1e-6;    // constraint violation allowed before projection
  std::size_t max_steps = 5'000'000;
};

struct IntegratorStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  double max_drift = 0.0;          // largest pre-projection constraint violation
  double max_energy_defect = 0.0;  // max |alpha(velocity) - 1| for Reeb flows
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, IntegratorStats s) : std::runtime_error(what), stats(s) {}
  IntegratorStats stats;
};

/// Accepted steps of a flow line. Velocities are stored at every point and
/// used for cubic Hermite interpolation between steps.
struct FlowTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> points;
  std::vector<Eigen::VectorXd> velocities;
  IntegratorStats stats;
  bool periodic_coordinates = false;  // torus: points are reduced mod 2 pi

  std::size_t size() const { return times.size(); }
  double duration() const { return times.empty() ? 0.0 : times.back() - times.front(); }
  /// Hermite interpolation at time t (unreduced on the torus).
  Eigen::VectorXd at(double t) const;
};

/// Velocity of the generator at x.
Eigen::VectorXd flow_velocity(const ContactManifold& m, const FlowGenerator& g, const Eigen::VectorXd& x);

/// Adaptive Dormand-Prince 5(4) with Newton projection onto M after each step.
/// T = 0 returns the single point `start`.
FlowTrajectory integrate_flow(const ContactManifold& m, const FlowGenerator& g, const AmbientPoint& start, double T,
                              const FlowOptions& opts = {});

/// Fl_t(x) for t of either sign.
Eigen::VectorXd flow_map(const ContactManifold& m, const FlowGenerator& g, const Eigen::VectorXd& x, double t,
                         const FlowOptions& opts = {});

/// Partial time averages (1/t_k) int_0^{t_k} f(Fl_s) ds for each stored t_k,
/// by composite Simpson on the stored points and Hermite midpoints. The first
/// entry is f(start).
std::vector<double> birkhoff_average(const FlowTrajectory& traj, const ScalarField& f);

/// I_1(f) / vol_alpha(M) with a ratio-estimator standard error.
IntegralResult space_average(const ContactManifold& m, const ScalarField& f, const Budget& budget = {});

/// Fraction of the cells of a resolution^d ambient grid that meet M and are
/// visited by the trajectory. The cells meeting M are estimated once per
/// (manifold, resolution) from `reference_samples` reference points.
double orbit_coverage(const ContactManifold& m, const FlowTrajectory& traj, int resolution,
                      std::size_t reference_samples = 1'000'000);

/// Coverage of the (arg z_0, arg z_1) angle grid; the invariant 2-torus of a
/// flow on an ellipsoid in C^2.
double invariant_torus_coverage(const FlowTrajectory& traj, int resolution);

struct ReturnResult {
  double time = 0.0;
  double distance = 0.0;
};

/// argmin over t >= t_min of |Fl_t(start) - start|. Near-ties within 1e-7 go
/// to the earliest time, so periodic orbits report their primitive period.
ReturnResult min_return_distance(const ContactManifold& m, const FlowTrajectory& traj, double t_min);

/// lambda(p) with (Fl_t)^* alpha = lambda alpha at p, from frame vectors
/// transported by forward-mode differentiation of the integrator.
double conformal_factor(const ContactManifold& m, const FlowGenerator& g, const Eigen::VectorXd& p, double t,
                        const FlowOptions& opts = {});

/// max over sampled (p, v) of |((Fl_t)^* alpha - alpha)(v)| with unit tangent v.
double strictness_check(const ContactManifold& m, const FlowGenerator& g, double t, std::size_t samples,
                        std::uint64_t seed = 11, const FlowOptions& opts = {});

/// Ad_g H (p) = (lambda H)(g^{-1} p) for g the time-t flow of `generator`.
double adjoint(const ContactManifold& m, double t, const Hamiltonian& generator, const Hamiltonian& H,
               const Eigen::VectorXd& p, const FlowOptions& opts = {});

/// Ad_g H as a value-only field.
ScalarField adjoint_field(const ContactManifold& m, double t, const Hamiltonian& generator, const Hamiltonian& H,
                          const FlowOptions& opts = {});

/// CSV with header t,x0,x1,...; values printed with 17 significant digits.
void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj);

}  // namespace reebkit
