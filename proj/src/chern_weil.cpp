#include "reebkit/chern_weil.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "reebkit/detail/parallel.hpp"

namespace reebkit {

namespace {

using std::numbers::pi;

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

/// Product of the Hamiltonians at every sample node; repeated factors are
/// evaluated once.
std::vector<double> product_values(const MeasureSamples& s, const std::vector<Hamiltonian>& H) {
  std::vector<const ScalarField*> distinct;
  std::vector<int> power;
  for (const auto& h : H) {
    auto it = std::find_if(distinct.begin(), distinct.end(), [&h](const ScalarField* f) {
      return f->identity() != nullptr && f->identity() == h.f.identity();
    });
    if (it == distinct.end()) {
      distinct.push_back(&h.f);
      power.push_back(1);
    } else {
      ++power[static_cast<std::size_t>(it - distinct.begin())];
    }
  }
  // Multiplying sorted factors makes the product bitwise symmetric in H.
  return evaluate(s, [&](std::span<const double> x) {
    std::array<double, 16> small;
    std::vector<double> big;
    double* f = small.data();
    if (H.size() > small.size()) {
      big.resize(H.size());
      f = big.data();
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      const double v = (*distinct[i])(x);
      for (int p = 0; p < power[i]; ++p) f[k++] = v;
    }
    std::sort(f, f + k);
    double v = 1.0;
    for (std::size_t i = 0; i < k; ++i) v *= f[i];
    return v;
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// Lie algebra elements and actions

LieAlgebraElement LieAlgebraElement::torus(Eigen::VectorXd a) {
  LieAlgebraElement e;
  e.real = std::move(a);
  return e;
}

LieAlgebraElement LieAlgebraElement::unitary(Eigen::MatrixXcd A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("unitary generator must be square");
  if ((A + A.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("unitary generator must be anti-Hermitian");
  LieAlgebraElement e;
  e.matrix = std::move(A);
  return e;
}

bool LieAlgebraElement::is_zero() const {
  const double r = real.size() ? real.cwiseAbs().maxCoeff() : 0.0;
  const double m = matrix.size() ? matrix.cwiseAbs().maxCoeff() : 0.0;
  return r == 0.0 && m == 0.0;
}

LieAlgebraElement LieAlgebraElement::operator*(double s) const {
  LieAlgebraElement e = *this;
  e.real *= s;
  e.matrix *= s;
  return e;
}

LieAlgebraElement LieAlgebraElement::operator+(const LieAlgebraElement& o) const {
  LieAlgebraElement e = *this;
  e.real += o.real;
  e.matrix += o.matrix;
  return e;
}

GroupAction::GroupAction(Kind k, ContactManifold m, int rank) : kind_(k), m_(std::move(m)), rank_(rank) {}

GroupAction GroupAction::torus_shift(const ContactManifold& torus) {
  if (!torus.is_torus()) throw std::invalid_argument("the shift action needs the flat torus, got " + torus.name);
  return GroupAction(Kind::torus_shift, torus, 2);
}

namespace {
void check_preserved(const GroupAction& a) {
  SplitMix64 rng(97);
  for (int trial = 0; trial < 4; ++trial) {
    const LieAlgebraElement A = a.random_element(rng);
    const VectorField X = a.fundamental_field(A);
    for (int i = 0; i < 8; ++i) {
      const AmbientPoint p = random_point(a.manifold(), rng);
      const double defect = tangency_defect(a.manifold(), {X(p.coords), p});
      if (defect > 1e-10 * std::max(1.0, X(p.coords).norm())) {
        throw std::invalid_argument(a.name() + " does not preserve " + a.manifold().name);
      }
    }
  }
}
}  // namespace

GroupAction GroupAction::diagonal_torus(const ContactManifold& m) {
  if (m.is_torus() || m.ambient_dim != 2 * (m.n + 1)) {
    throw std::invalid_argument("the diagonal torus acts on spheres and ellipsoids in C^{n+1}, got " + m.name);
  }
  GroupAction a(Kind::diagonal_torus, m, m.n + 1);
  check_preserved(a);
  return a;
}

GroupAction GroupAction::unitary(const ContactManifold& sphere) {
  if (sphere.is_torus() || sphere.ambient_dim != 2 * (sphere.n + 1)) {
    throw std::invalid_argument("the unitary action needs a sphere in C^{n+1}, got " + sphere.name);
  }
  GroupAction a(Kind::unitary, sphere, sphere.n + 1);
  check_preserved(a);
  return a;
}

std::string GroupAction::name() const {
  switch (kind_) {
    case Kind::torus_shift: return "torus-shift";
    case Kind::diagonal_torus: return "diagonal-torus";
    case Kind::unitary: return "unitary";
  }
  return "unknown";
}

void GroupAction::validate(const LieAlgebraElement& A) const {
  if (kind_ == Kind::unitary) {
    if (A.matrix.rows() != rank_ || A.matrix.cols() != rank_) throw std::invalid_argument("generator size does not match U(n+1)");
    if ((A.matrix + A.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("generator is not anti-Hermitian");
  } else if (A.real.size() != rank_) {
    throw std::invalid_argument(name() + " expects a parameter vector of length " + std::to_string(rank_));
  }
}

VectorField GroupAction::fundamental_field(const LieAlgebraElement& A) const {
  validate(A);
  const int d = m_.ambient_dim;
  switch (kind_) {
    case Kind::torus_shift: {
      const double a = A.real[0], b = A.real[1];
      return VectorField(3, [a, b](auto, auto out) {
        using T = std::remove_cvref_t<decltype(out[0])>;
        out[0] = T(a);
        out[1] = T(b);
        out[2] = T(0.0);
      });
    }
    case Kind::diagonal_torus: {
      const Eigen::VectorXd a = A.real;
      return VectorField(d, [a](auto x, auto out) {
        for (Eigen::Index j = 0; j < a.size(); ++j) {
          const auto i = static_cast<std::size_t>(2 * j);
          out[i] = -a[j] * x[i + 1];
          out[i + 1] = a[j] * x[i];
        }
      });
    }
    case Kind::unitary: {
      const Eigen::MatrixXd P = A.matrix.real(), Q = A.matrix.imag();
      return VectorField(d, [P, Q](auto x, auto out) {
        using T = std::remove_cvref_t<decltype(out[0])>;
        for (Eigen::Index j = 0; j < P.rows(); ++j) {
          T re(0.0), im(0.0);
          for (Eigen::Index k = 0; k < P.cols(); ++k) {
            const auto xk = x[static_cast<std::size_t>(2 * k)], yk = x[static_cast<std::size_t>(2 * k + 1)];
            re += P(j, k) * xk - Q(j, k) * yk;
            im += Q(j, k) * xk + P(j, k) * yk;
          }
          out[static_cast<std::size_t>(2 * j)] = re;
          out[static_cast<std::size_t>(2 * j + 1)] = im;
        }
      });
    }
  }
  throw std::logic_error("unreachable");
}

LieAlgebraElement GroupAction::random_element(SplitMix64& rng) const {
  std::normal_distribution<double> normal;
  if (kind_ == Kind::unitary) {
    Eigen::MatrixXcd M(rank_, rank_);
    for (int i = 0; i < rank_; ++i) {
      for (int j = 0; j < rank_; ++j) M(i, j) = {normal(rng), normal(rng)};
    }
    return LieAlgebraElement::unitary(0.5 * (M - M.adjoint()));
  }
  Eigen::VectorXd a(rank_);
  for (int i = 0; i < rank_; ++i) a[i] = normal(rng);
  return LieAlgebraElement::torus(a);
}

double moment(const GroupAction& action, const AmbientPoint& p, const LieAlgebraElement& A) {
  return action.manifold().form.apply(p.coords, action.fundamental_field(A)(p.coords));
}

Hamiltonian moment_hamiltonian(const GroupAction& action, const LieAlgebraElement& A) {
  const OneForm form = action.manifold().form;
  const VectorField X = action.fundamental_field(A);
  return Hamiltonian(ScalarField([form, X](auto x) {
                       using T = scalar_of<decltype(x)>;
                       const std::vector<T> a = form.eval<T>(x);
                       const std::vector<T> v = X.eval<T>(x);
                       T s(0.0);
                       for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * v[i];
                       return s;
                     }),
                     ReebInvariance::yes);
}

// ---------------------------------------------------------------------------
// Invariant polynomials

PolynomialResult invariant_polynomial_I(const ContactManifold& m, const std::vector<Hamiltonian>& H,
                                        const Budget& budget) {
  PolynomialResult out;
  for (std::size_t i = 0; i < H.size(); ++i) {
    ReebInvariance inv = H[i].reeb_invariant;
    if (inv == ReebInvariance::unchecked && H[i].f.has_order(1)) {
      inv = is_reeb_invariant(m, H[i], 64).invariant ? ReebInvariance::yes : ReebInvariance::no;
    }
    if (inv == ReebInvariance::no) out.warnings.push_back("argument " + std::to_string(i) + " is not Reeb-invariant");
    if (inv == ReebInvariance::unchecked) out.warnings.push_back("argument " + std::to_string(i) + " was not checked for Reeb invariance");
  }
  auto s = cached_measure(m, budget);
  IntegralResult r = combine(*s, product_values(*s, H));
  r.flagged = budget.target_std_error > 0.0 && r.std_error > budget.target_std_error;
  static_cast<IntegralResult&>(out) = r;
  return out;
}

PolynomialResult pullback_polynomial(const GroupAction& action, const std::vector<LieAlgebraElement>& A,
                                     const Budget& budget) {
  std::vector<Hamiltonian> H;
  H.reserve(A.size());
  for (const auto& a : A) H.push_back(moment_hamiltonian(action, a));
  return invariant_polynomial_I(action.manifold(), H, budget);
}

PositivityResult even_positivity_check(const GroupAction& action, const LieAlgebraElement& A, int l,
                                       const Budget& budget) {
  if (l < 1) throw std::invalid_argument("positivity check needs l >= 1");
  action.validate(A);
  if (A.is_zero()) throw std::invalid_argument("positivity check needs a nonzero generator");
  const VectorField X = action.fundamental_field(A);
  SplitMix64 rng(123);
  double largest = 0.0;
  for (int i = 0; i < 32; ++i) largest = std::max(largest, X(random_point(action.manifold(), rng).coords).norm());
  if (largest < 1e-12) throw std::invalid_argument("generator has a vanishing fundamental field");

  PositivityResult r;
  r.integral = pullback_polynomial(action, std::vector<LieAlgebraElement>(static_cast<std::size_t>(2 * l), A), budget);
  r.certified = r.integral.value - 3.0 * r.integral.std_error > 0.0;
  return r;
}

CirclePullback reeb_circle_pullback(const ContactManifold& m, int k, double t, const Budget& budget) {
  if (!m.reeb_period) throw std::invalid_argument(m.name + " has no configured Reeb period");
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  CirclePullback out;
  out.period = *m.reeb_period;
  const double tn = t * out.period / (2.0 * pi);
  out.raw = invariant_polynomial_I(m, std::vector<Hamiltonian>(static_cast<std::size_t>(k), Hamiltonian(ScalarField::constant(t), ReebInvariance::yes)), budget);
  out.normalized = invariant_polynomial_I(m, std::vector<Hamiltonian>(static_cast<std::size_t>(k), Hamiltonian(ScalarField::constant(tn), ReebInvariance::yes)), budget);
  return out;
}

double wallis_c(int l) {
  double r = 2.0 * pi;
  for (int i = 1; i <= l; ++i) r *= (2.0 * i - 1.0) / (2.0 * i);  // C(2l, l) / 4^l
  return r;
}

double toric_closed_form(int n, int k, double A, double B) {
  if (k % 2 == 1) return 0.0;
  const int l = k / 2;
  return 4.0 * n * pi * pi * wallis_c(l) * std::pow(A * A + B * B, l);
}

double sphere_monomial_integral(const std::vector<int>& m) {
  const int n = static_cast<int>(m.size()) - 1;
  double num = 2.0 * std::pow(pi, n + 1);
  int total = 0;
  for (int mj : m) {
    num *= factorial(mj);
    total += mj;
  }
  return num / factorial(n + total);
}

double sphere_diagonal_closed_form(int n, double scale, const std::vector<Eigen::VectorXd>& a) {
  const std::size_t k = a.size();
  const std::size_t b = static_cast<std::size_t>(n + 1);
  std::size_t count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= b;
  double sum = 0.0;
  std::vector<int> expo(b);
  for (std::size_t code = 0; code < count; ++code) {
    std::fill(expo.begin(), expo.end(), 0);
    double coeff = 1.0;
    std::size_t c = code;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = c % b;
      c /= b;
      coeff *= a[i][static_cast<Eigen::Index>(j)];
      ++expo[j];
    }
    sum += coeff * sphere_monomial_integral(expo);
  }
  const double density = std::pow(scale, n + 1) * factorial(n) / 2.0;
  return density * std::pow(scale / 2.0, static_cast<double>(k)) * sum;
}

// ---------------------------------------------------------------------------
// Hopf prequantization

double Prequantization::normalization() const { return 2.0 * pi / fiber_period; }

Eigen::Vector3d Prequantization::project(const Eigen::VectorXd& z) const { return zoo::hopf_projection(z); }

Eigen::VectorXd Prequantization::lift(const Eigen::Vector3d& s_in) const {
  const Eigen::Vector3d s = s_in.normalized();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(4);
  if (s[2] >= 0.0) {
    const double x0 = std::sqrt((1.0 + s[2]) / 2.0);
    z << x0, 0.0, s[0] / (2.0 * x0), -s[1] / (2.0 * x0);
  } else {
    const double x1 = std::sqrt((1.0 - s[2]) / 2.0);
    z << s[0] / (2.0 * x1), s[1] / (2.0 * x1), x1, 0.0;
  }
  return z;
}

namespace {

/// dp_z(v) by forward differentiation of the Hopf map.
Eigen::Vector3d push_forward(const Eigen::VectorXd& z, const Eigen::VectorXd& v) {
  std::array<D1, 4> x;
  for (int i = 0; i < 4; ++i) x[static_cast<std::size_t>(i)] = D1(z[i], v[i]);
  const auto s = zoo::hopf_coordinates<D1>(std::span<const D1>(x.data(), 4));
  return {s[0].d, s[1].d, s[2].d};
}

double area_form(const Eigen::Vector3d& q, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return q.dot(a.cross(b));
}

}  // namespace

Prequantization hopf_prequantization(double scale) {
  Prequantization p;
  p.total = zoo::standard_sphere(1, scale);
  p.fiber_period = *p.total.reeb_period;
  // Measure kappa in dalpha = kappa p^* dA by least squares over frame pairs.
  Eigen::VectorXd z(4);
  z << 0.8, 0.0, 0.36, 0.48;
  const Eigen::MatrixXd e = frame_matrix(p.total, z);
  const Eigen::Vector3d q = zoo::hopf_projection(z);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double da = exterior_derivative(p.total.form, {z}, {e.col(i), {z}}, {e.col(j), {z}});
      const double dA = area_form(q, push_forward(z, e.col(i)), push_forward(z, e.col(j)));
      num += da * dA;
      den += dA * dA;
    }
  }
  p.kappa = num / den;
  return p;
}

double curvature_defect(const Prequantization& preq, std::size_t samples, std::uint64_t seed) {
  double worst = 0.0;
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i < samples; ++i) {
    SplitMix64 rng = SplitMix64::stream(seed, i);
    const AmbientPoint p = random_point(preq.total, rng);
    const Eigen::MatrixXd e = frame_matrix(preq.total, p.coords);
    Eigen::Vector3d c1, c2;
    for (int j = 0; j < 3; ++j) {
      c1[j] = normal(rng);
      c2[j] = normal(rng);
    }
    const Eigen::VectorXd v = e * c1, w = e * c2;
    const double da = exterior_derivative(preq.total.form, p, {v, p}, {w, p});
    const Eigen::Vector3d q = zoo::hopf_projection(p.coords);
    const double om = preq.kappa * area_form(q, push_forward(p.coords, v), push_forward(p.coords, w));
    worst = std::max(worst, std::abs(da - om));
  }
  return worst;
}

IntegralResult hamiltonian_reznikov_J(const Prequantization& preq, const std::vector<ScalarField>& h,
                                      const Budget& budget) {
  const int nu = std::max(budget.nodes, 2);
  const int nphi = 2 * nu;
  std::vector<double> u, wu;
  gauss_legendre(nu, u, wu);
  detail::CompensatedSum sum;
  const double dphi = 2.0 * pi / nphi;
  for (int i = 0; i < nu; ++i) {
    const double r = std::sqrt(std::max(0.0, 1.0 - u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)]));
    for (int j = 0; j < nphi; ++j) {
      const double phi = dphi * j;
      const double s[3] = {r * std::cos(phi), r * std::sin(phi), u[static_cast<std::size_t>(i)]};
      double v = 1.0;
      for (const auto& f : h) v *= f(std::span<const double>(s, 3));
      sum.add(wu[static_cast<std::size_t>(i)] * dphi * v);
    }
  }
  IntegralResult r;
  r.value = preq.omega_density() * sum.value();
  r.method = IntegrationMethod::quadrature;
  r.samples = static_cast<std::size_t>(nu * nphi);
  r.seed = budget.seed;
  return r;
}

ScalarField descend(const Prequantization& preq, const Hamiltonian& H, std::size_t samples) {
  if (H.reeb_invariant == ReebInvariance::no ||
      (H.reeb_invariant == ReebInvariance::unchecked && !is_reeb_invariant(preq.total, H, samples).invariant)) {
    throw std::invalid_argument("Hamiltonian is not fibre-invariant and does not descend to the base");
  }
  return ScalarField::value_only([preq, H](std::span<const double> s) {
    return H(preq.lift(Eigen::Vector3d(s[0], s[1], s[2])));
  });
}

ScalarField normalize_base(const Prequantization& preq, const ScalarField& h, const Budget& budget) {
  const double area = hamiltonian_reznikov_J(preq, {}, budget).value;
  const double mean = hamiltonian_reznikov_J(preq, {h}, budget).value / area;
  return ScalarField::value_only([h, mean](std::span<const double> s) { return h(s) - mean; });
}

ScalarField normalize_hamiltonian(const Prequantization& preq, const Hamiltonian& H, const Budget& budget) {
  return normalize_base(preq, descend(preq, H), budget);
}

FiberCheck fiber_integration_check(const Prequantization& preq, std::size_t trials, const Budget& budget,
                                   std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("fiber integration check needs at least two trials");
  FiberCheck out;
  auto samples = cached_measure(preq.total, budget);
  for (std::size_t t = 0; t < trials; ++t) {
    double a0 = 1.0, lin[3] = {0, 0, 0}, amp = 0.0, phase = 0.0;
    double freq[3] = {0, 0, 0};
    if (t > 0) {
      SplitMix64 rng = SplitMix64::stream(seed, t);
      a0 = 1.0 + rng.uniform();
      for (double& c : lin) c = 0.6 * rng.uniform() - 0.3;
      amp = 0.6 * rng.uniform() - 0.3;
      phase = 2.0 * pi * rng.uniform();
      for (double& f : freq) f = static_cast<double>(rng() % 5) - 2.0;
    }
    auto h = [=](auto s) {
      using T = scalar_of<decltype(s)>;
      using std::cos;
      T arg = T(phase) + freq[0] * s[0] + freq[1] * s[1] + freq[2] * s[2];
      return T(a0) + lin[0] * s[0] + lin[1] * s[1] + lin[2] * s[2] + amp * cos(arg);
    };
    const Hamiltonian H = pull_up(h);
    const IntegralResult I = integrate(*samples, H.f);
    const double J = hamiltonian_reznikov_J(preq, {ScalarField(h)}, budget).value;
    if (std::abs(J) < 1e-12) {
      ++out.skipped;
      continue;
    }
    out.ratios.push_back(I.value / J);
    out.std_error = std::max(out.std_error, I.std_error / std::abs(J));
  }
  if (out.ratios.empty()) throw std::runtime_error("every fiber-integration trial had a vanishing base integral");
  double mean = 0.0;
  for (double r : out.ratios) mean += r;
  mean /= static_cast<double>(out.ratios.size());
  double var = 0.0;
  for (double r : out.ratios) var += (r - mean) * (r - mean);
  out.C = mean;
  out.dispersion = out.ratios.size() > 1 ? std::sqrt(var / static_cast<double>(out.ratios.size() - 1)) / std::abs(mean) : 0.0;
  return out;
}

RelationCheck prequantization_relation_check(const Prequantization& preq, const std::vector<Hamiltonian>& H,
                                             const Budget& budget) {
  const std::size_t k = H.size();
  if (k < 2) throw std::invalid_argument("the prequantization relation needs k >= 2");
  RelationCheck out;

  std::vector<ScalarField> qh;
  for (const auto& h : H) qh.push_back(normalize_hamiltonian(preq, h, budget));
  out.lhs = hamiltonian_reznikov_J(preq, qh, budget).value;

  const double C = preq.fiber_period;
  const double area = hamiltonian_reznikov_J(preq, {}, budget).value;
  auto s = cached_measure(preq.total, budget);
  std::vector<std::vector<double>> vals;
  for (const auto& h : H) vals.push_back(evaluate(*s, [&h](std::span<const double> x) { return h.f(x); }));

  std::vector<double> prod(s->size());
  auto rhs_range = [&](std::size_t begin, std::size_t end) {
    std::vector<double> mean(k);
    for (std::size_t i = 0; i < k; ++i) mean[i] = combine(*s, vals[i], begin, end).value / (C * area);
    for (std::size_t x = begin; x < end; ++x) {
      double p = 1.0;
      for (std::size_t i = 0; i < k; ++i) p *= vals[i][x] - mean[i];
      prod[x] = p;
    }
    return combine(*s, prod, begin, end).value / C;
  };

  out.rhs = rhs_range(0, s->size());
  std::vector<double> top(s->size());
  for (std::size_t x = 0; x < s->size(); ++x) {
    double p = 1.0;
    for (std::size_t i = 0; i < k; ++i) p *= vals[i][x];
    top[x] = p;
  }
  out.top = combine(*s, top).value / C;
  out.remainder = out.rhs - out.top;

  if (s->method() == IntegrationMethod::monte_carlo) {
    constexpr std::size_t batches = 50;
    const std::size_t per = s->size() / batches;
    std::vector<double> b(batches);
    double mean = 0.0;
    for (std::size_t j = 0; j < batches; ++j) {
      b[j] = rhs_range(j * per, (j + 1) * per);
      mean += b[j] / batches;
    }
    double var = 0.0;
    for (double v : b) var += (v - mean) * (v - mean);
    out.sigma = std::sqrt(var / (batches - 1) / batches);
  }
  out.residual = std::abs(out.lhs - out.rhs);
  out.passed = within_sigma(out.lhs, out.rhs, out.sigma, 3.0, std::abs(out.top));
  return out;
}

EulerReport euler_number(const Prequantization& preq, const Budget& budget) {
  EulerReport r;
  r.omega_integral = preq.total.orientation * hamiltonian_reznikov_J(preq, {}, budget).value;
  r.raw = r.omega_integral / (2.0 * pi);
  r.normalized = r.omega_integral / preq.fiber_period;
  r.nearest = std::lround(r.normalized);
  r.defect = std::abs(r.normalized - static_cast<double>(r.nearest));
  if (std::abs(preq.fiber_period - 2.0 * pi) > 1e-12) {
    std::ostringstream os;
    os << "fibre period is " << preq.fiber_period << ", not 2 pi; the raw value " << r.raw
       << " is not an integer class, use the normalized value";
    r.warnings.push_back(os.str());
  }
  return r;
}

}  // namespace reebkit
