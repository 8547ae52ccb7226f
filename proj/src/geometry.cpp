#include "reebkit/geometry.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

#include "reebkit/detail/local.hpp"

namespace reebkit {

namespace {

std::span<const double> view(const Eigen::VectorXd& x) { return {x.data(), static_cast<std::size_t>(x.size())}; }

Eigen::MatrixXd to_matrix(const detail::Frame<double>& fr) {
  Eigen::MatrixXd e(fr.d, fr.m);
  for (int i = 0; i < fr.m; ++i) {
    for (int j = 0; j < fr.d; ++j) e(j, i) = fr.row(i)[static_cast<std::size_t>(j)];
  }
  return e;
}

detail::Frame<double> from_matrix(const Eigen::MatrixXd& e) {
  detail::Frame<double> fr;
  fr.d = static_cast<int>(e.rows());
  fr.m = static_cast<int>(e.cols());
  fr.e.resize(static_cast<std::size_t>(fr.d * fr.m));
  for (int i = 0; i < fr.m; ++i) {
    for (int j = 0; j < fr.d; ++j) fr.e[static_cast<std::size_t>(i * fr.d + j)] = e(j, i);
  }
  return fr;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double defect_from(const detail::ContactData<double>& cd, int n) {
  const int m = cd.frame.m;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int i = 0; i < m; ++i) {
    b(0, i + 1) = cd.a[static_cast<std::size_t>(i)];
    b(i + 1, 0) = -cd.a[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) b(i + 1, j + 1) = cd.om(i, j);
  }
  return factorial(n) * pfaffian(std::move(b));
}

}  // namespace

std::uint64_t next_manifold_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

double pfaffian(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  if (n % 2 != 0) return 0.0;
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp = k + 1;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      Eigen::VectorXd tau = a.row(k).tail(n - k - 2).transpose() / a(k, k + 1);
      Eigen::VectorXd col = a.col(k + 1).tail(n - k - 2);
      a.bottomRightCorner(n - k - 2, n - k - 2) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

Eigen::MatrixXd frame_matrix(const ContactManifold& m, const Eigen::VectorXd& x) {
  return to_matrix(detail::tangent_frame<double>(m, view(x)));
}

std::vector<TangentVector> tangent_frame(const ContactManifold& m, const AmbientPoint& p) {
  Eigen::MatrixXd e = frame_matrix(m, p.coords);
  std::vector<TangentVector> out;
  out.reserve(static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.cols(); ++i) out.push_back({e.col(i), p});
  return out;
}

double exterior_derivative(const OneForm& omega, const AmbientPoint& p, const TangentVector& v,
                           const TangentVector& w) {
  const auto x = view(p.coords);
  std::vector<double> dv = detail::directional<double>(omega, x, view(v.components));
  std::vector<double> dw = detail::directional<double>(omega, x, view(w.components));
  double s = 0.0;
  for (std::size_t k = 0; k < dv.size(); ++k) {
    s += dv[k] * w.components[static_cast<Eigen::Index>(k)] - dw[k] * v.components[static_cast<Eigen::Index>(k)];
  }
  return s;
}

double contact_defect(const ContactManifold& m, const AmbientPoint& p) {
  try {
    return defect_from(detail::contact_data<double>(m, view(p.coords)), m.n);
  } catch (const EvaluationError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double contact_defect(const ContactManifold& m, const AmbientPoint& p, const Eigen::MatrixXd& frame) {
  return defect_from(detail::contact_data<double>(m, view(p.coords), from_matrix(frame)), m.n);
}

TangentVector reeb_field(const ContactManifold& m, const AmbientPoint& p, const Eigen::MatrixXd& frame,
                         const Tolerances& tol) {
  detail::ContactData<double> cd = detail::contact_data<double>(m, view(p.coords), from_matrix(frame));
  const int dim = cd.frame.m;
  Eigen::MatrixXd om(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) om(i, j) = cd.om(i, j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(om, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (!(s(dim - 2) >= tol.rank_ratio * s(0)) || !(s(0) > 0.0)) {
    throw DegeneracyError(m.name + ": d alpha has kernel of dimension != 1 at this point");
  }
  Eigen::VectorXd kernel = svd.matrixV().col(dim - 1);
  Eigen::Map<const Eigen::VectorXd> a(cd.a.data(), dim);
  const double ak = a.dot(kernel);
  if (!(std::abs(ak) > 0.0)) throw DegeneracyError(m.name + ": alpha vanishes on ker d alpha");
  return {frame * (kernel / ak), p};
}

TangentVector reeb_field(const ContactManifold& m, const AmbientPoint& p, const Tolerances& tol) {
  return reeb_field(m, p, frame_matrix(m, p.coords), tol);
}

ReebResiduals reeb_residuals(const ContactManifold& m, const AmbientPoint& p, const TangentVector& reeb) {
  ReebResiduals r;
  r.alpha = std::abs(m.form.apply(p.coords, reeb.components) - 1.0);
  for (const TangentVector& e : tangent_frame(m, p)) {
    r.kernel = std::max(r.kernel, std::abs(exterior_derivative(m.form, p, reeb, e)));
  }
  return r;
}

double constraint_defect(const ContactManifold& m, const Eigen::VectorXd& x) {
  double worst = 0.0;
  for (const ScalarField& g : m.constraints) worst = std::max(worst, std::abs(g(x)));
  return worst;
}

double tangency_defect(const ContactManifold& m, const TangentVector& v) {
  double worst = 0.0;
  for (const ScalarField& g : m.constraints) {
    Eigen::VectorXd grad = g.gradient(v.base.coords);
    worst = std::max(worst, std::abs(grad.dot(v.components)) / grad.norm());
  }
  return worst;
}

AmbientPoint project_to_manifold(const ContactManifold& m, const Eigen::VectorXd& x) {
  if (m.is_torus()) {
    Eigen::VectorXd r = x;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      r[i] = std::fmod(r[i], two_pi);
      if (r[i] < 0.0) r[i] += two_pi;
      if (r[i] >= two_pi) r[i] = 0.0;
    }
    return {r};
  }
  std::vector<double> v(x.data(), x.data() + x.size());
  detail::project<double>(m, v);
  return {Eigen::Map<Eigen::VectorXd>(v.data(), x.size())};
}

Eigen::VectorXd displacement(const ContactManifold& m, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd d = b - a;
  if (m.is_torus()) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] -= two_pi * std::round(d[i] / two_pi);
  }
  return d;
}

AmbientPoint random_point(const ContactManifold& m, SplitMix64& rng) {
  return project_to_manifold(m, m.sampler(rng).x);
}

}  // namespace reebkit
