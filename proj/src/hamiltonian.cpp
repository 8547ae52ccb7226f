#include "reebkit/hamiltonian.hpp"

#include <cmath>

#include "reebkit/detail/local.hpp"

namespace reebkit {

namespace {
std::span<const double> view(const Eigen::VectorXd& x) { return {x.data(), static_cast<std::size_t>(x.size())}; }
}  // namespace

double field_to_hamiltonian(const ContactManifold& m, const VectorField& X, const AmbientPoint& p) {
  return m.form.apply(p.coords, X(p.coords));
}

TangentVector hamiltonian_to_field(const ContactManifold& m, const Hamiltonian& H, const AmbientPoint& p,
                                   const Tolerances& tol) {
  const auto x = view(p.coords);
  detail::ContactData<double> cd = detail::contact_data<double>(m, x);
  const int dim = cd.frame.m;
  Eigen::MatrixXd e(cd.frame.d, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < cd.frame.d; ++j) e(j, i) = cd.frame.row(i)[static_cast<std::size_t>(j)];
  }
  TangentVector reeb = reeb_field(m, p, e, tol);
  Eigen::VectorXd rc_eig = e.transpose() * reeb.components;
  std::vector<double> rc(rc_eig.data(), rc_eig.data() + dim);

  std::vector<double> a_sys = detail::contact_system(cd);
  std::vector<double> b_sys = detail::hamiltonian_rhs<double>(cd, rc, H.f, x);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> A(a_sys.data(), dim + 1, dim);
  Eigen::Map<const Eigen::VectorXd> b(b_sys.data(), dim + 1);
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  const double residual = (A * c - b).cwiseAbs().maxCoeff();
  if (!(residual <= tol.hamiltonian_residual * std::max(1.0, b.cwiseAbs().maxCoeff()))) {
    throw DegeneracyError(m.name + ": Hamiltonian system residual " + std::to_string(residual));
  }
  return {e * c, p};
}

double bracket(const ContactManifold& m, const Hamiltonian& H1, const Hamiltonian& H2, const AmbientPoint& p,
               const Tolerances& tol) {
  TangentVector reeb = reeb_field(m, p, tol);
  TangentVector x1 = hamiltonian_to_field(m, H1, p, tol);
  return H1.f.derivative(p.coords, reeb.components) * H2(p.coords) - H2.f.derivative(p.coords, x1.components);
}

Hamiltonian bracket_field(const ContactManifold& m, const Hamiltonian& H1, const Hamiltonian& H2) {
  auto f0 = [m, H1, H2](std::span<const double> x) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    return bracket(m, H1, H2, {v});
  };
  auto f1 = [m, H1, H2](std::span<const D1> x) {
    std::vector<D1> reeb = detail::reeb_vector<D1>(m, x);
    std::vector<D1> x1 = detail::hamiltonian_vector<D1>(m, H1.f, x);
    return detail::directional<D1>(H1.f, x, detail::cspan(reeb)) * H2.f.eval<D1>(x) -
           detail::directional<D1>(H2.f, x, detail::cspan(x1));
  };
  ReebInvariance inv = (H1.reeb_invariant == ReebInvariance::yes && H2.reeb_invariant == ReebInvariance::yes)
                           ? ReebInvariance::yes
                           : ReebInvariance::unchecked;
  return Hamiltonian(ScalarField::first_order(f0, f1), inv);
}

InvarianceReport is_reeb_invariant(const ContactManifold& m, const Hamiltonian& H, std::size_t samples,
                                   std::uint64_t seed, const Tolerances& tol) {
  InvarianceReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    SplitMix64 rng = SplitMix64::stream(seed, i);
    AmbientPoint p = random_point(m, rng);
    TangentVector reeb = reeb_field(m, p, tol);
    rep.max_defect = std::max(rep.max_defect, std::abs(H.f.derivative(p.coords, reeb.components)));
  }
  rep.invariant = rep.max_defect <= tol.reeb_invariance;
  return rep;
}

Hamiltonian checked(const ContactManifold& m, Hamiltonian H, std::size_t samples) {
  H.reeb_invariant = is_reeb_invariant(m, H, samples).invariant ? ReebInvariance::yes : ReebInvariance::no;
  return H;
}

}  // namespace reebkit
