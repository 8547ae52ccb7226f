#pragma once

// Coefficient fields on an ambient coordinate space. Every field is built from
// a generic callable that is instantiated for double, D1 and D2 so that first
// and second directional derivatives come from forward-mode differentiation.

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "reebkit/dual.hpp"

namespace reebkit {

/// Scalar type carried by a span argument of a generic field callable.
template <class S>
using scalar_of = std::remove_cvref_t<decltype(std::declval<S>()[0])>;

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class T>
using ScalarFn = std::function<T(std::span<const T>)>;
template <class T>
using CoeffFn = std::function<void(std::span<const T>, std::span<T>)>;

template <class T>
[[noreturn]] inline void missing_order(const char* what) {
  throw EvaluationError(std::string(what) + ": derivative order not available for this field");
}

}  // namespace detail

class ScalarField {
 public:
  ScalarField() = default;

  template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, ScalarField>>>
  explicit ScalarField(F f) {
    auto p = std::make_shared<std::decay_t<F>>(std::move(f));
    id_ = p.get();
    f0_ = [p](std::span<const double> x) { return static_cast<double>((*p)(x)); };
    f1_ = [p](std::span<const D1> x) { return D1((*p)(x)); };
    f2_ = [p](std::span<const D2> x) { return D2((*p)(x)); };
  }

  /// Builds a field that only supports evaluation up to first derivatives.
  static ScalarField first_order(detail::ScalarFn<double> f0, detail::ScalarFn<D1> f1) {
    ScalarField s;
    s.f0_ = std::move(f0);
    s.f1_ = std::move(f1);
    return s;
  }

  /// Values only; derivatives of this field throw EvaluationError.
  static ScalarField value_only(detail::ScalarFn<double> f0) {
    ScalarField s;
    s.f0_ = std::move(f0);
    return s;
  }

  static ScalarField constant(double c) {
    return ScalarField([c](auto x) { return scalar_of<decltype(x)>(c); });
  }

  explicit operator bool() const { return static_cast<bool>(f0_); }

  double operator()(std::span<const double> x) const { return f0_(x); }
  double operator()(const Eigen::VectorXd& x) const { return f0_({x.data(), static_cast<std::size_t>(x.size())}); }

  template <class T>
  T eval(std::span<const T> x) const {
    if constexpr (std::is_same_v<T, double>) {
      return f0_(x);
    } else if constexpr (std::is_same_v<T, D1>) {
      if (!f1_) detail::missing_order<T>("ScalarField");
      return f1_(x);
    } else {
      if (!f2_) detail::missing_order<T>("ScalarField");
      return f2_(x);
    }
  }

  /// Shared by copies of one field, null for composed fields; lets callers
  /// evaluate repeated factors once.
  const void* identity() const { return id_; }

  bool has_order(int k) const { return k == 0 ? bool(f0_) : k == 1 ? bool(f1_) : bool(f2_); }

  /// Directional derivative df_x(v).
  double derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

  ScalarField operator*(const ScalarField& o) const;
  ScalarField operator+(const ScalarField& o) const;
  ScalarField scaled(double s) const;

 private:
  detail::ScalarFn<double> f0_;
  detail::ScalarFn<D1> f1_;
  detail::ScalarFn<D2> f2_;
  const void* id_ = nullptr;
};

/// Ambient-coefficient family of `dim` functions; shared shape of one-forms
/// and vector fields.
class CoefficientField {
 public:
  CoefficientField() = default;

  template <class F>
  CoefficientField(int dim, F f) : dim_(dim) {
    auto p = std::make_shared<std::decay_t<F>>(std::move(f));
    f0_ = [p](std::span<const double> x, std::span<double> out) { (*p)(x, out); };
    f1_ = [p](std::span<const D1> x, std::span<D1> out) { (*p)(x, out); };
    f2_ = [p](std::span<const D2> x, std::span<D2> out) { (*p)(x, out); };
  }

  CoefficientField(int dim, detail::CoeffFn<double> f0, detail::CoeffFn<D1> f1, detail::CoeffFn<D2> f2 = {})
      : dim_(dim), f0_(std::move(f0)), f1_(std::move(f1)), f2_(std::move(f2)) {}

  int dim() const { return dim_; }

  template <class T>
  void eval(std::span<const T> x, std::span<T> out) const {
    if constexpr (std::is_same_v<T, double>) {
      f0_(x, out);
    } else if constexpr (std::is_same_v<T, D1>) {
      if (!f1_) detail::missing_order<T>("CoefficientField");
      f1_(x, out);
    } else {
      if (!f2_) detail::missing_order<T>("CoefficientField");
      f2_(x, out);
    }
  }

  template <class T>
  std::vector<T> eval(std::span<const T> x) const {
    std::vector<T> out(static_cast<std::size_t>(dim_));
    eval<T>(x, std::span<T>(out));
    return out;
  }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

 private:
  int dim_ = 0;
  detail::CoeffFn<double> f0_;
  detail::CoeffFn<D1> f1_;
  detail::CoeffFn<D2> f2_;
};

/// A 1-form sum_k w_k(x) dx_k in ambient coordinates.
class OneForm : public CoefficientField {
 public:
  using CoefficientField::CoefficientField;
  explicit OneForm(CoefficientField c) : CoefficientField(std::move(c)) {}

  double apply(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const { return (*this)(x).dot(v); }
};

/// A vector field sum_k X_k(x) d/dx_k in ambient coordinates.
class VectorField : public CoefficientField {
 public:
  using CoefficientField::CoefficientField;
  explicit VectorField(CoefficientField c) : CoefficientField(std::move(c)) {}
};

/// The differential df as a one-form.
OneForm differential(const ScalarField& f, int dim);

}  // namespace reebkit
