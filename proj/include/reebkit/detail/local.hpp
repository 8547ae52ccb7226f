#pragma once

// Scalar-generic pointwise kernels (T = double or D1). The double path of the
// public API uses these for frames and form data; the D1 instantiation is what
// lets Hamiltonian fields, brackets and flows be differentiated.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reebkit/dual.hpp"
#include "reebkit/fields.hpp"
#include "reebkit/geometry.hpp"

namespace reebkit::detail {

template <class T>
std::span<const T> cspan(const std::vector<T>& v) {
  return {v.data(), v.size()};
}

/// f_x(v) for a scalar field, by seeding one dual direction.
template <class T>
T directional(const ScalarField& f, std::span<const T> x, std::span<const T> v) {
  std::vector<Dual<T>> xd(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xd[i] = Dual<T>(x[i], v[i]);
  return f.eval<Dual<T>>(cspan(xd)).d;
}

/// Directional derivative of every coefficient of a coefficient field.
template <class T>
std::vector<T> directional(const CoefficientField& f, std::span<const T> x, std::span<const T> v) {
  std::vector<Dual<T>> xd(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xd[i] = Dual<T>(x[i], v[i]);
  std::vector<Dual<T>> out = f.eval<Dual<T>>(cspan(xd));
  std::vector<T> d(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) d[i] = out[i].d;
  return d;
}

template <class T>
std::vector<T> gradient(const ScalarField& f, std::span<const T> x) {
  const std::size_t d = x.size();
  std::vector<T> g(d);
  std::vector<T> e(d, T(0.0));
  for (std::size_t j = 0; j < d; ++j) {
    e[j] = T(1.0);
    g[j] = directional<T>(f, x, cspan(e));
    e[j] = T(0.0);
  }
  return g;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  T s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Oriented orthonormal tangent frame; rows of `e` are ambient vectors.
template <class T>
struct Frame {
  int d = 0;
  int m = 0;
  std::vector<T> e;  // m x d, row-major

  std::span<const T> row(int i) const { return {e.data() + static_cast<std::size_t>(i * d), static_cast<std::size_t>(d)}; }
  std::span<T> row(int i) { return {e.data() + static_cast<std::size_t>(i * d), static_cast<std::size_t>(d)}; }
};

template <class T>
Frame<T> tangent_frame(const ContactManifold& mf, std::span<const T> x) {
  using std::sqrt;
  const int d = mf.ambient_dim;
  const int c = static_cast<int>(mf.constraints.size());
  const int m = d - c;
  if (m != mf.dim()) throw DegeneracyError(mf.name + ": constraint count does not match dimension");

  std::vector<std::vector<T>> basis;  // orthonormal normals, then tangents
  basis.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < c; ++k) {
    std::vector<T> g = gradient<T>(mf.constraints[static_cast<std::size_t>(k)], x);
    double scale = 0.0;
    for (const T& gi : g) scale = std::max(scale, std::abs(value(gi)));
    for (const auto& b : basis) {
      T p = dot<T>(cspan(g), cspan(b));
      for (int j = 0; j < d; ++j) g[static_cast<std::size_t>(j)] -= p * b[static_cast<std::size_t>(j)];
    }
    T nrm = sqrt(dot<T>(cspan(g), cspan(g)));
    if (!(value(nrm) > 1e-10 * std::max(scale, 1e-300))) {
      throw DegeneracyError(mf.name + ": constraint gradients are linearly dependent");
    }
    for (T& gi : g) gi = gi / nrm;
    basis.push_back(std::move(g));
  }

  // Pivoted Gram-Schmidt over the ambient coordinate basis.
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  for (int step = 0; step < m; ++step) {
    int best = -1;
    double best_norm = -1.0;
    std::vector<T> best_vec;
    for (int j = 0; j < d; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      std::vector<T> r(static_cast<std::size_t>(d), T(0.0));
      r[static_cast<std::size_t>(j)] = T(1.0);
      for (const auto& b : basis) {
        T p = b[static_cast<std::size_t>(j)];
        for (int i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] -= p * b[static_cast<std::size_t>(i)];
      }
      double nv = value(dot<T>(cspan(r), cspan(r)));
      if (nv > best_norm * (1.0 + 1e-12)) {
        best = j;
        best_norm = nv;
        best_vec = std::move(r);
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    // Re-orthogonalize once for stability.
    for (const auto& b : basis) {
      T p = dot<T>(cspan(best_vec), cspan(b));
      for (int i = 0; i < d; ++i) best_vec[static_cast<std::size_t>(i)] -= p * b[static_cast<std::size_t>(i)];
    }
    T nrm = sqrt(dot<T>(cspan(best_vec), cspan(best_vec)));
    for (T& v : best_vec) v = v / nrm;
    basis.push_back(std::move(best_vec));
  }

  Eigen::MatrixXd full(d, d);
  for (int col = 0; col < d; ++col) {
    for (int i = 0; i < d; ++i) full(i, col) = value(basis[static_cast<std::size_t>(col)][static_cast<std::size_t>(i)]);
  }
  const double det = full.determinant();
  const bool flip = (det > 0.0) != (mf.orientation > 0);

  Frame<T> fr;
  fr.d = d;
  fr.m = m;
  fr.e.resize(static_cast<std::size_t>(m * d));
  for (int i = 0; i < m; ++i) {
    const auto& b = basis[static_cast<std::size_t>(c + i)];
    const double sgn = (flip && i == m - 1) ? -1.0 : 1.0;
    for (int j = 0; j < d; ++j) fr.e[static_cast<std::size_t>(i * d + j)] = sgn * b[static_cast<std::size_t>(j)];
  }
  return fr;
}

/// Values of alpha and d alpha on a tangent frame.
template <class T>
struct ContactData {
  Frame<T> frame;
  std::vector<T> a;      // alpha(e_i)
  std::vector<T> omega;  // d alpha(e_i, e_j), m x m row-major

  T om(int i, int j) const { return omega[static_cast<std::size_t>(i * frame.m + j)]; }
};

template <class T>
ContactData<T> contact_data(const ContactManifold& mf, std::span<const T> x, Frame<T> frame) {
  const int m = frame.m;
  const int d = frame.d;
  ContactData<T> cd;
  std::vector<T> alpha = mf.form.eval<T>(x);
  cd.a.resize(static_cast<std::size_t>(m));
  std::vector<std::vector<T>> dalpha(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    cd.a[static_cast<std::size_t>(i)] = dot<T>(cspan(alpha), frame.row(i));
    dalpha[static_cast<std::size_t>(i)] = directional<T>(mf.form, x, frame.row(i));
  }
  cd.omega.assign(static_cast<std::size_t>(m * m), T(0.0));
  for (int i = 0; i < m; ++i) {
    for (int l = i + 1; l < m; ++l) {
      T s(0.0);
      for (int k = 0; k < d; ++k) {
        s += dalpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * frame.row(l)[static_cast<std::size_t>(k)] -
             dalpha[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] * frame.row(i)[static_cast<std::size_t>(k)];
      }
      cd.omega[static_cast<std::size_t>(i * m + l)] = s;
      cd.omega[static_cast<std::size_t>(l * m + i)] = -s;
    }
  }
  cd.frame = std::move(frame);
  return cd;
}

template <class T>
ContactData<T> contact_data(const ContactManifold& mf, std::span<const T> x) {
  return contact_data<T>(mf, x, tangent_frame<T>(mf, x));
}

/// Least-squares solution of A c = b through the normal equations, Gaussian
/// elimination pivoted on values. A is rows x cols, row-major.
template <class T>
std::vector<T> solve_least_squares(const std::vector<T>& A, int rows, int cols, const std::vector<T>& b) {
  using std::abs;
  std::vector<T> N(static_cast<std::size_t>(cols * cols), T(0.0));
  std::vector<T> r(static_cast<std::size_t>(cols), T(0.0));
  for (int i = 0; i < cols; ++i) {
    for (int k = 0; k < rows; ++k) r[static_cast<std::size_t>(i)] += A[static_cast<std::size_t>(k * cols + i)] * b[static_cast<std::size_t>(k)];
    for (int j = 0; j < cols; ++j) {
      T s(0.0);
      for (int k = 0; k < rows; ++k) s += A[static_cast<std::size_t>(k * cols + i)] * A[static_cast<std::size_t>(k * cols + j)];
      N[static_cast<std::size_t>(i * cols + j)] = s;
    }
  }
  for (int col = 0; col < cols; ++col) {
    int piv = col;
    for (int i = col + 1; i < cols; ++i) {
      if (std::abs(value(N[static_cast<std::size_t>(i * cols + col)])) > std::abs(value(N[static_cast<std::size_t>(piv * cols + col)]))) piv = i;
    }
    if (!(std::abs(value(N[static_cast<std::size_t>(piv * cols + col)])) > 0.0)) throw DegeneracyError("singular normal equations");
    if (piv != col) {
      for (int j = 0; j < cols; ++j) std::swap(N[static_cast<std::size_t>(col * cols + j)], N[static_cast<std::size_t>(piv * cols + j)]);
      std::swap(r[static_cast<std::size_t>(col)], r[static_cast<std::size_t>(piv)]);
    }
    for (int i = col + 1; i < cols; ++i) {
      T f = N[static_cast<std::size_t>(i * cols + col)] / N[static_cast<std::size_t>(col * cols + col)];
      for (int j = col; j < cols; ++j) N[static_cast<std::size_t>(i * cols + j)] -= f * N[static_cast<std::size_t>(col * cols + j)];
      r[static_cast<std::size_t>(i)] -= f * r[static_cast<std::size_t>(col)];
    }
  }
  std::vector<T> c(static_cast<std::size_t>(cols), T(0.0));
  for (int i = cols - 1; i >= 0; --i) {
    T s = r[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < cols; ++j) s -= N[static_cast<std::size_t>(i * cols + j)] * c[static_cast<std::size_t>(j)];
    c[static_cast<std::size_t>(i)] = s / N[static_cast<std::size_t>(i * cols + i)];
  }
  return c;
}

/// The (2n+2) x (2n+1) system [alpha(e_k); d alpha(e_k, e_i)] shared by the
/// Reeb and Hamiltonian solves.
template <class T>
std::vector<T> contact_system(const ContactData<T>& cd) {
  const int m = cd.frame.m;
  std::vector<T> A(static_cast<std::size_t>((m + 1) * m));
  for (int k = 0; k < m; ++k) A[static_cast<std::size_t>(k)] = cd.a[static_cast<std::size_t>(k)];
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) A[static_cast<std::size_t>((i + 1) * m + k)] = cd.om(k, i);
  }
  return A;
}

template <class T>
std::vector<T> combine(const Frame<T>& fr, const std::vector<T>& c) {
  std::vector<T> v(static_cast<std::size_t>(fr.d), T(0.0));
  for (int k = 0; k < fr.m; ++k) {
    for (int j = 0; j < fr.d; ++j) v[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(k)] * fr.row(k)[static_cast<std::size_t>(j)];
  }
  return v;
}

/// Frame coefficients of the Reeb field.
template <class T>
std::vector<T> reeb_coefficients(const ContactData<T>& cd) {
  const int m = cd.frame.m;
  std::vector<T> b(static_cast<std::size_t>(m + 1), T(0.0));
  b[0] = T(1.0);
  return solve_least_squares<T>(contact_system(cd), m + 1, m, b);
}

/// Right-hand side alpha(X) = H, i_X d alpha = -dH + dH(R) alpha on the frame.
template <class T>
std::vector<T> hamiltonian_rhs(const ContactData<T>& cd, const std::vector<T>& reeb_c, const ScalarField& H,
                               std::span<const T> x) {
  const int m = cd.frame.m;
  std::vector<T> dH(static_cast<std::size_t>(m));
  T dHR(0.0);
  for (int i = 0; i < m; ++i) {
    dH[static_cast<std::size_t>(i)] = directional<T>(H, x, cd.frame.row(i));
    dHR += reeb_c[static_cast<std::size_t>(i)] * dH[static_cast<std::size_t>(i)];
  }
  std::vector<T> b(static_cast<std::size_t>(m + 1));
  b[0] = H.eval<T>(x);
  for (int i = 0; i < m; ++i) b[static_cast<std::size_t>(i + 1)] = -dH[static_cast<std::size_t>(i)] + dHR * cd.a[static_cast<std::size_t>(i)];
  return b;
}

/// Ambient components of the contact vector field of H at x.
template <class T>
std::vector<T> hamiltonian_vector(const ContactManifold& mf, const ScalarField& H, std::span<const T> x) {
  ContactData<T> cd = contact_data<T>(mf, x);
  const int m = cd.frame.m;
  std::vector<T> rc = reeb_coefficients(cd);
  std::vector<T> c = solve_least_squares<T>(contact_system(cd), m + 1, m, hamiltonian_rhs<T>(cd, rc, H, x));
  return combine(cd.frame, c);
}

template <class T>
std::vector<T> reeb_vector(const ContactManifold& mf, std::span<const T> x) {
  ContactData<T> cd = contact_data<T>(mf, x);
  return combine(cd.frame, reeb_coefficients(cd));
}

/// Newton projection onto {g = 0} along constraint gradients.
template <class T>
void project(const ContactManifold& mf, std::vector<T>& x, int max_iter = 8) {
  const std::size_t c = mf.constraints.size();
  if (c == 0) return;
  const std::size_t d = x.size();
  for (int it = 0; it < max_iter; ++it) {
    std::vector<T> g(c);
    double gmax = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
      g[i] = mf.constraints[i].eval<T>(cspan(x));
      gmax = std::max(gmax, std::abs(value(g[i])));
    }
    if (gmax < 1e-15 && it > 0) break;
    std::vector<std::vector<T>> J(c);
    for (std::size_t i = 0; i < c; ++i) J[i] = gradient<T>(mf.constraints[i], cspan(x));
    // (J J^T) lambda = g, then x -= J^T lambda.
    std::vector<T> JJ(c * c);
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < c; ++j) JJ[i * c + j] = dot<T>(cspan(J[i]), cspan(J[j]));
    }
    std::vector<T> lambda = solve_least_squares<T>(JJ, static_cast<int>(c), static_cast<int>(c), g);
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t k = 0; k < d; ++k) x[k] -= J[i][k] * lambda[i];
    }
    if (gmax < 1e-15) break;
  }
}

}  // namespace reebkit::detail
