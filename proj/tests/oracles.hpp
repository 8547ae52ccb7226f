#pragma once

// Reference values computed without the library: hand-derived closed forms,
// brute-force expansions and a small self-contained contact-field solver for
// the flat 3-torus. Nothing here includes reebkit headers.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

// Pfaffian by expansion along the first row.
inline double pfaffian(const Mat& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  if (n % 2) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 1; i < n; ++i)
      if (i != j) keep.push_back(i);
    Mat minor(keep.size(), Vec(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) minor[r][c] = a[keep[r]][keep[c]];
    const double sign = (j % 2) ? 1.0 : -1.0;
    sum += sign * a[0][j] * pfaffian(minor);
  }
  return sum;
}

// (alpha ^ beta^n)(v_1, ..., v_{2n+1}) by summing over all permutations,
// with a_i = alpha(v_i) and b_ij = beta(v_i, v_j).
inline double wedge_alpha_beta(const Vec& a, const Mat& b) {
  const std::size_t d = a.size();
  const std::size_t n = (d - 1) / 2;
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  double sum = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inversions;
    double term = a[perm[0]];
    for (std::size_t k = 0; k < n; ++k) term *= b[perm[1 + 2 * k]][perm[2 + 2 * k]];
    sum += (inversions % 2 ? -term : term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / std::pow(2.0, static_cast<double>(n));
}

// Standard form s/2 sum (x dy - y dx) and its differential s sum dx ^ dy in
// real coordinates (x_0, y_0, x_1, y_1, ...).
inline double alpha_st(const Vec& z, const Vec& v, double s = 1.0) {
  double r = 0.0;
  for (std::size_t j = 0; j + 1 < z.size(); j += 2) r += z[j] * v[j + 1] - z[j + 1] * v[j];
  return 0.5 * s * r;
}
inline double dalpha_st(const Vec& v, const Vec& w, double s = 1.0) {
  double r = 0.0;
  for (std::size_t j = 0; j + 1 < v.size(); j += 2) r += v[j] * w[j + 1] - v[j + 1] * w[j];
  return s * r;
}

// Reeb field of s alpha_st on the unit sphere: (2/s) i z.
inline Vec sphere_reeb(const Vec& z, double s = 1.0) {
  Vec r(z.size());
  for (std::size_t j = 0; j + 1 < z.size(); j += 2) {
    r[j] = -2.0 / s * z[j + 1];
    r[j + 1] = 2.0 / s * z[j];
  }
  return r;
}

// Reeb field of cos(nt) dx - sin(nt) dy on T^3 with coordinates (x, y, t).
inline Vec torus_reeb(const Vec& p, int n) { return {std::cos(n * p[2]), -std::sin(n * p[2]), 0.0}; }

// Reeb field 2 pi i diag(w) z on the ellipsoid pi sum w_j |z_j|^2 = 1.
inline Vec weighted_reeb(const Vec& z, const Vec& w) {
  Vec r(z.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    r[2 * j] = -2.0 * pi * w[j] * z[2 * j + 1];
    r[2 * j + 1] = 2.0 * pi * w[j] * z[2 * j];
  }
  return r;
}

// Geodesic flow on the round unit cotangent bundle: q' = p, p' = -q.
inline Vec round_cotangent_reeb(const Vec& qp) { return {qp[3], qp[4], qp[5], -qp[0], -qp[1], -qp[2]}; }

// Closed-form weighted flow z_j(t) = exp(2 pi i w_j t) z_j(0).
inline Vec weighted_flow(const Vec& z, const Vec& w, double t) {
  Vec out(z.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const std::complex<double> c = std::polar(1.0, 2.0 * pi * w[j] * t) * std::complex<double>(z[2 * j], z[2 * j + 1]);
    out[2 * j] = c.real();
    out[2 * j + 1] = c.imag();
  }
  return out;
}

// min over a uniform grid of t in [t_min, T] of |Fl_t(z) - z| for the weighted flow.
inline double weighted_return_bruteforce(const Vec& z, const Vec& w, double t_min, double T, std::size_t grid) {
  double best = 1e300;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double t = t_min + (T - t_min) * static_cast<double>(i) / static_cast<double>(grid);
    const Vec y = weighted_flow(z, w, t);
    double d = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) d += (y[k] - z[k]) * (y[k] - z[k]);
    best = std::min(best, std::sqrt(d));
  }
  return best;
}

// int_{S^{2n+1}} prod |z_j|^{2 m_j} dsigma = 2 pi^{n+1} prod m_j! / (n + sum m)!.
inline double dirichlet_sphere(const std::vector<int>& m) {
  const double n = static_cast<double>(m.size()) - 1.0;
  double num = 2.0 * std::pow(pi, n + 1.0);
  int total = 0;
  for (int mj : m) {
    num *= std::tgamma(mj + 1.0);
    total += mj;
  }
  return num / std::tgamma(n + total + 1.0);
}

// Contact density of s alpha_st against the round measure on S^{2n+1}, from
// Stokes: int_{B^{2n+2}} (s dalpha_st)^{n+1} = s^{n+1} (n+1)! vol(B), divided by
// the sphere area 2 pi^{n+1} / n!.
inline double sphere_contact_density(int n, double s = 1.0) {
  const double ball = std::pow(pi, n + 1.0) / std::tgamma(n + 2.0);
  const double vol = std::pow(s, n + 1.0) * std::tgamma(n + 2.0) * ball;
  const double area = 2.0 * std::pow(pi, n + 1.0) / std::tgamma(n + 1.0);
  return vol / area;
}

inline double sphere_volume(int n, double s = 1.0) { return std::pow(s * pi, n + 1.0); }

// int_0^{2 pi} cos^{2l} by the reduction formula c_l = c_{l-1} (2l - 1) / (2l).
inline double wallis(int l) {
  double c = 2.0 * pi;
  for (int k = 1; k <= l; ++k) c *= (2.0 * k - 1.0) / (2.0 * k);
  return c;
}

// Minimal forward-mode dual number, nestable.
template <class T>
struct Dual {
  T v{}, d{};
  Dual() = default;
  Dual(double x) : v(x), d(0.0) {}
  Dual(T x, T dx) : v(x), d(dx) {}
};
template <class T> Dual<T> operator+(Dual<T> a, Dual<T> b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(Dual<T> a, Dual<T> b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator-(Dual<T> a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator*(Dual<T> a, Dual<T> b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Dual<T> operator/(Dual<T> a, Dual<T> b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
template <class T> Dual<T> operator*(double s, Dual<T> a) { return {s * a.v, s * a.d}; }
template <class T> Dual<T> operator+(double s, Dual<T> a) { return {s + a.v, a.d}; }
template <class T> Dual<T> operator*(Dual<T> a, double s) { return {s * a.v, s * a.d}; }
template <class T> Dual<T> operator+(Dual<T> a, double s) { return {s + a.v, a.d}; }
template <class T> Dual<T> operator-(Dual<T> a, double s) { return {a.v - s, a.d}; }
template <class T> Dual<T> sin(Dual<T> a) {
  using std::cos;
  using std::sin;
  return {sin(a.v), cos(a.v) * a.d};
}
template <class T> Dual<T> cos(Dual<T> a) {
  using std::cos;
  using std::sin;
  return {cos(a.v), -(sin(a.v) * a.d)};
}
template <class T> Dual<T> exp(Dual<T> a) {
  using std::exp;
  const T e = exp(a.v);
  return {e, e * a.d};
}

// Contact field of H on (T^3, cos(nt) dx - sin(nt) dy), derived by hand:
// with e_1 = (sin nt, cos nt, 0), d alpha(e_1, d_t) = n, and
// X_H = H R - (d_t H / n) e_1 + (dH(e_1) / n) d_t.
// H is a generic callable h(x, y, t).
template <class T, class H>
std::array<T, 3> torus_contact_field(const H& h, const std::array<T, 3>& p, int n) {
  using D = Dual<T>;
  auto partial = [&](int k) {
    std::array<D, 3> q{D(p[0], T(0.0)), D(p[1], T(0.0)), D(p[2], T(0.0))};
    q[static_cast<std::size_t>(k)].d = T(1.0);
    return h(q[0], q[1], q[2]).d;
  };
  using std::cos;
  using std::sin;
  const T hx = partial(0), hy = partial(1), ht = partial(2);
  const T c = cos(double(n) * p[2]), s = sin(double(n) * p[2]);
  const T hv = h(p[0], p[1], p[2]);
  const T he1 = s * hx + c * hy;
  const double inv = 1.0 / n;
  return {hv * c - inv * (ht * s), -(hv * s) - inv * (ht * c), inv * he1};
}

// [X, Y] = DY X - DX Y, with directional derivatives of the fields taken by
// nesting one more dual level.
template <class HX, class HY>
std::array<double, 3> torus_lie_bracket(const HX& hx, const HY& hy, const std::array<double, 3>& p, int n) {
  using D = Dual<double>;
  auto directional = [&](const auto& h, const std::array<double, 3>& v) {
    std::array<D, 3> q{D(p[0], v[0]), D(p[1], v[1]), D(p[2], v[2])};
    const auto X = torus_contact_field<D>(h, q, n);
    return std::array<double, 3>{X[0].d, X[1].d, X[2].d};
  };
  const auto X = torus_contact_field<double>(hx, p, n);
  const auto Y = torus_contact_field<double>(hy, p, n);
  const auto DYX = directional(hy, X);
  const auto DXY = directional(hx, Y);
  return {DYX[0] - DXY[0], DYX[1] - DXY[1], DYX[2] - DXY[2]};
}

// -alpha([X_1, X_2]), the vector-field side of the Hamiltonian bracket.
template <class HX, class HY>
double torus_bracket_oracle(const HX& h1, const HY& h2, const std::array<double, 3>& p, int n) {
  const auto L = torus_lie_bracket(h1, h2, p, n);
  return -(std::cos(n * p[2]) * L[0] - std::sin(n * p[2]) * L[1]);
}

// Central difference of f at x along v.
inline double central_difference(const std::function<double(const Vec&)>& f, const Vec& x, const Vec& v,
                                  double h = 1e-5) {
  Vec a = x, b = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a[i] += h * v[i];
    b[i] -= h * v[i];
  }
  return (f(a) - f(b)) / (2.0 * h);
}

// Time average of Re(z_0 conj z_1) over [0, T] along the weighted flow, in
// closed form: Re(c (exp(i omega T) - 1) / (i omega T)), omega = 2 pi (w_0 - w_1).
inline double weighted_cross_average(const Vec& z, const Vec& w, double T) {
  const std::complex<double> c = std::complex<double>(z[0], z[1]) * std::conj(std::complex<double>(z[2], z[3]));
  const double omega = 2.0 * pi * (w[0] - w[1]);
  if (std::abs(omega * T) < 1e-14) return c.real();
  const std::complex<double> i(0.0, 1.0);
  return (c * (std::exp(i * omega * T) - 1.0) / (i * omega * T)).real();
}

}  // namespace oracle
