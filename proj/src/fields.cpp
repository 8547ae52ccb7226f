#include "reebkit/fields.hpp"

#include "reebkit/detail/local.hpp"

namespace reebkit {

namespace {
std::span<const double> view(const Eigen::VectorXd& x) { return {x.data(), static_cast<std::size_t>(x.size())}; }
}  // namespace

double ScalarField::derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
  return detail::directional<double>(*this, view(x), view(v));
}

Eigen::VectorXd ScalarField::gradient(const Eigen::VectorXd& x) const {
  std::vector<double> g = detail::gradient<double>(*this, view(x));
  return Eigen::Map<Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(g.size()));
}

ScalarField ScalarField::operator*(const ScalarField& o) const {
  ScalarField a = *this;
  ScalarField b = o;
  return ScalarField([a, b](auto x) {
    using T = scalar_of<decltype(x)>;
    return a.eval<T>(x) * b.eval<T>(x);
  });
}

ScalarField ScalarField::operator+(const ScalarField& o) const {
  ScalarField a = *this;
  ScalarField b = o;
  return ScalarField([a, b](auto x) {
    using T = scalar_of<decltype(x)>;
    return a.eval<T>(x) + b.eval<T>(x);
  });
}

ScalarField ScalarField::scaled(double s) const {
  ScalarField a = *this;
  return ScalarField([a, s](auto x) {
    using T = scalar_of<decltype(x)>;
    return a.eval<T>(x) * s;
  });
}

Eigen::VectorXd CoefficientField::operator()(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dim_);
  f0_(view(x), {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

OneForm differential(const ScalarField& f, int dim) {
  // Coefficients are partials of f, so one derivative order is consumed.
  auto d0 = [f](std::span<const double> x, std::span<double> out) {
    std::vector<double> g = detail::gradient<double>(f, x);
    std::copy(g.begin(), g.end(), out.begin());
  };
  auto d1 = [f](std::span<const D1> x, std::span<D1> out) {
    std::vector<D1> g = detail::gradient<D1>(f, x);
    std::copy(g.begin(), g.end(), out.begin());
  };
  return OneForm(CoefficientField(dim, d0, d1));
}

}  // namespace reebkit
