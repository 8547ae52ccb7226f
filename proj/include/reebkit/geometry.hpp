#pragma once

// Embedded and flat contact manifolds: tangent frames, exterior derivatives,
// the contact volume density and the pointwise Reeb solve.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reebkit/fields.hpp"
#include "reebkit/random.hpp"

namespace reebkit {

class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AmbientPoint {
  Eigen::VectorXd coords;
};

struct TangentVector {
  Eigen::VectorXd components;
  AmbientPoint base;
};

enum class ManifoldKind { flat_torus, embedded };

/// A point drawn from a manifold's reference measure together with the
/// density of the Riemannian volume with respect to that measure.
struct WeightedPoint {
  Eigen::VectorXd x;
  double density = 1.0;
};

using ReferenceSampler = std::function<WeightedPoint(SplitMix64&)>;

/// Numerical thresholds; defaults are the documented acceptance values.
struct Tolerances {
  double reeb_residual = 1e-10;
  double rank_ratio = 1e-8;  // second-smallest / largest singular value
  double hamiltonian_residual = 1e-9;
  double reeb_invariance = 1e-8;
  double constraint = 1e-12;
};

/// A closed contact manifold M^{2n+1}, either the flat 3-torus in periodic
/// coordinates or a submanifold of R^d cut out by `constraints`.
///
/// Tangent frames are oriented so that (normals..., e_1, ..., e_{2n+1}) is a
/// positive basis of R^d when `orientation` is +1 (outward normal first for
/// hypersurfaces, i.e. the Stokes boundary orientation).
struct ContactManifold {
  std::string name;
  std::uint64_t id = 0;
  int n = 1;
  int ambient_dim = 3;
  ManifoldKind kind = ManifoldKind::embedded;
  std::vector<ScalarField> constraints;
  OneForm form;
  int orientation = 1;
  double form_scale = 1.0;
  /// Common period of all Reeb orbits when the Reeb flow is a free circle action.
  std::optional<double> reeb_period;
  /// Total mass of the sampler's reference measure.
  double reference_measure = 0.0;
  ReferenceSampler sampler;

  int dim() const { return 2 * n + 1; }
  bool is_torus() const { return kind == ManifoldKind::flat_torus; }
};

std::uint64_t next_manifold_id();

/// Orthonormal, oriented basis of T_pM as ambient vectors.
std::vector<TangentVector> tangent_frame(const ContactManifold& m, const AmbientPoint& p);
/// Same frame as the columns of a d x (2n+1) matrix.
Eigen::MatrixXd frame_matrix(const ContactManifold& m, const Eigen::VectorXd& x);

/// d omega(v, w) via the coordinate formula with dual-number partials.
double exterior_derivative(const OneForm& omega, const AmbientPoint& p, const TangentVector& v,
                           const TangentVector& w);

/// alpha ^ (d alpha)^n evaluated on the oriented orthonormal frame at p.
double contact_defect(const ContactManifold& m, const AmbientPoint& p);
double contact_defect(const ContactManifold& m, const AmbientPoint& p, const Eigen::MatrixXd& frame);

/// Unique R with alpha(R) = 1 and d alpha(R, .) = 0 on T_pM.
TangentVector reeb_field(const ContactManifold& m, const AmbientPoint& p, const Tolerances& tol = {});
TangentVector reeb_field(const ContactManifold& m, const AmbientPoint& p, const Eigen::MatrixXd& frame,
                         const Tolerances& tol = {});

struct ReebResiduals {
  double alpha = 0.0;   // |alpha(R) - 1|
  double kernel = 0.0;  // max_i |d alpha(R, e_i)|
};
ReebResiduals reeb_residuals(const ContactManifold& m, const AmbientPoint& p, const TangentVector& reeb);

/// Largest |g_i(x)| over the embedding constraints.
double constraint_defect(const ContactManifold& m, const Eigen::VectorXd& x);
/// Largest |<grad g_i, v>| / |grad g_i|.
double tangency_defect(const ContactManifold& m, const TangentVector& v);

/// Newton projection onto the constraint set; torus coordinates are reduced to [0, 2pi).
AmbientPoint project_to_manifold(const ContactManifold& m, const Eigen::VectorXd& x);
/// b - a, wrapped into (-pi, pi] per coordinate on the torus.
Eigen::VectorXd displacement(const ContactManifold& m, const Eigen::VectorXd& a, const Eigen::VectorXd& b);
/// A point of M drawn from the reference measure.
AmbientPoint random_point(const ContactManifold& m, SplitMix64& rng);

/// Pfaffian of an even-dimensional antisymmetric matrix.
double pfaffian(Eigen::MatrixXd a);

}  // namespace reebkit
