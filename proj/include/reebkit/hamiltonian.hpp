#pragma once

// Correspondence between contact vector fields and contact Hamiltonians.

#include <cstdint>

#include "reebkit/geometry.hpp"

namespace reebkit {

enum class ReebInvariance { unchecked, yes, no };

/// A contact Hamiltonian H = alpha(X_H). Reeb-invariant Hamiltonians generate
/// strict contact flows.
struct Hamiltonian {
  ScalarField f;
  ReebInvariance reeb_invariant = ReebInvariance::unchecked;

  Hamiltonian() = default;
  explicit Hamiltonian(ScalarField field, ReebInvariance inv = ReebInvariance::unchecked)
      : f(std::move(field)), reeb_invariant(inv) {}

  double operator()(const Eigen::VectorXd& x) const { return f(x); }
};

/// alpha_p(X(p)).
double field_to_hamiltonian(const ContactManifold& m, const VectorField& X, const AmbientPoint& p);

/// X_H(p): alpha(X) = H and i_X d alpha = -dH + dH(R) alpha, solved in the
/// tangent frame by least squares. Throws DegeneracyError if the residual
/// exceeds tol.hamiltonian_residual.
TangentVector hamiltonian_to_field(const ContactManifold& m, const Hamiltonian& H, const AmbientPoint& p,
                                   const Tolerances& tol = {});

/// [H1, H2] = dH1(R) H2 - dH2(X_{H1}) at p.
double bracket(const ContactManifold& m, const Hamiltonian& H1, const Hamiltonian& H2, const AmbientPoint& p,
               const Tolerances& tol = {});

/// The bracket as a field. Supports first derivatives only, which is enough to
/// nest it once more (Jacobi identity).
Hamiltonian bracket_field(const ContactManifold& m, const Hamiltonian& H1, const Hamiltonian& H2);

struct InvarianceReport {
  bool invariant = false;
  double max_defect = 0.0;
};

/// max |dH(R)| over random points of M.
InvarianceReport is_reeb_invariant(const ContactManifold& m, const Hamiltonian& H, std::size_t samples,
                                   std::uint64_t seed = 7, const Tolerances& tol = {});

/// Returns H with its invariance status filled in.
Hamiltonian checked(const ContactManifold& m, Hamiltonian H, std::size_t samples = 1000);

}  // namespace reebkit
