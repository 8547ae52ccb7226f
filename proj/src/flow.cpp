#include "reebkit/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <tuple>
#include <unordered_set>

#include "reebkit/detail/local.hpp"
#include "reebkit/detail/parallel.hpp"

namespace reebkit {

namespace {

using std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

// Dormand-Prince 5(4) tableau; e = b5 - b4.
constexpr double c_[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double a_[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double e_[7] = {71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

Eigen::VectorXd values_of(const std::vector<double>& y) { return Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())); }
Eigen::VectorXd values_of(const std::vector<D1>& y) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) v[static_cast<Eigen::Index>(i)] = y[i].v;
  return v;
}

template <class T>
std::vector<T> velocity(const ContactManifold& m, const FlowGenerator& g, const std::vector<T>& x, double sign) {
  std::vector<T> v = std::holds_alternative<ReebFlow>(g)
                         ? detail::reeb_vector<T>(m, detail::cspan(x))
                         : detail::hamiltonian_vector<T>(m, std::get<HamiltonianFlow>(g).H.f, detail::cspan(x));
  if (sign < 0.0) {
    for (T& vi : v) vi = -vi;
  }
  return v;
}

void reduce(Eigen::VectorXd& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x[i] = std::fmod(x[i], two_pi);
    if (x[i] < 0.0) x[i] += two_pi;
  }
}

/// Integrates y over |T| in the direction sign(T); record(tau, y, velocity)
/// is called at the start and after every accepted step. Step control only
/// looks at values, so a D1 state carries the derivative of the discrete map.
template <class T, class Record>
IntegratorStats run_dp45(const ContactManifold& m, const FlowGenerator& g, std::vector<T>& y, double T_end,
                         const FlowOptions& o, Record&& record) {
  if (!(o.tol > 0.0)) throw std::invalid_argument("flow tolerance must be positive");
  const double sign = T_end < 0.0 ? -1.0 : 1.0;
  const double span = std::abs(T_end);
  const std::size_t n = y.size();
  const bool reeb = std::holds_alternative<ReebFlow>(g);

  IntegratorStats stats;
  auto f = [&](const std::vector<T>& x) {
    ++stats.evaluations;
    return velocity<T>(m, g, x, sign);
  };
  auto energy = [&](const std::vector<T>& x, const std::vector<T>& v) {
    if (!reeb) return;
    std::vector<T> a = m.form.eval<T>(detail::cspan(x));
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += value(a[i]) * value(v[i]);
    stats.max_energy_defect = std::max(stats.max_energy_defect, std::abs(sign * s - 1.0));
  };

  std::vector<std::vector<T>> k(7);
  k[0] = f(y);
  energy(y, k[0]);
  record(0.0, y, k[0]);
  if (span == 0.0) return stats;

  double h = std::min({o.max_step, span, 1e-2});
  double t = 0.0;
  std::vector<T> ys(n), y5(n);
  while (t < span) {
    if (stats.steps + stats.rejected >= o.max_steps) throw IntegrationError("step budget exhausted", stats);
    bool last = false;
    if (t + h >= span * (1.0 - 1e-14)) {
      h = span - t;
      last = true;
    }
    for (int s = 1; s < 7; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        T acc = y[i];
        for (int j = 0; j < s; ++j) {
          if (a_[s][j] != 0.0) acc += (h * a_[s][j]) * k[static_cast<std::size_t>(j)][i];
        }
        ys[i] = acc;
      }
      k[static_cast<std::size_t>(s)] = f(ys);
    }
    y5 = ys;  // stage 7 is evaluated at the fifth-order solution
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ei = 0.0;
      for (int j = 0; j < 7; ++j) ei += e_[j] * value(k[static_cast<std::size_t>(j)][i]);
      err = std::max(err, std::abs(h * ei) / (o.tol * (1.0 + std::abs(value(y[i])))));
    }
    if (!(err <= 1.0)) {
      ++stats.rejected;
      h *= std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      if (h < o.min_step * std::max(1.0, t)) throw IntegrationError("step size underflow", stats);
      continue;
    }
    if (!m.constraints.empty()) {
      const double drift = constraint_defect(m, values_of(y5));
      stats.max_drift = std::max(stats.max_drift, drift);
      if (drift > o.drift_limit) throw IntegrationError("constraint drift " + std::to_string(drift) + " before projection", stats);
      detail::project<T>(m, y5);
    }
    t = last ? span : t + h;
    y.swap(y5);
    k[0] = f(y);
    energy(y, k[0]);
    ++stats.steps;
    record(t, y, k[0]);
    h *= err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
    h = std::min(h, o.max_step);
  }
  return stats;
}

std::vector<double> to_std(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

std::vector<D1> transport(const ContactManifold& m, const FlowGenerator& g, const Eigen::VectorXd& p,
                          const Eigen::VectorXd& v, double t, const FlowOptions& o) {
  std::vector<D1> y(static_cast<std::size_t>(p.size()));
  for (Eigen::Index i = 0; i < p.size(); ++i) y[static_cast<std::size_t>(i)] = D1(p[i], v[i]);
  run_dp45<D1>(m, g, y, t, o, [](double, const std::vector<D1>&, const std::vector<D1>&) {});
  return y;
}

/// alpha_y(w) for a transported D1 state y = x + eps w.
double pulled_back(const ContactManifold& m, const std::vector<D1>& y) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(y.size())), w(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) {
    x[static_cast<Eigen::Index>(i)] = y[i].v;
    w[static_cast<Eigen::Index>(i)] = y[i].d;
  }
  return m.form.apply(x, w);
}

}  // namespace

Eigen::VectorXd FlowTrajectory::at(double t) const {
  if (times.empty()) throw std::out_of_range("empty trajectory");
  if (t <= times.front()) return points.front();
  if (t >= times.back()) return points.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
  const double t0 = times[i], h = times[i + 1] - t0;
  const double s = (t - t0) / h;
  Eigen::VectorXd p0 = points[i], p1 = points[i + 1];
  if (periodic_coordinates) {
    for (Eigen::Index j = 0; j < p1.size(); ++j) p1[j] = p0[j] + std::remainder(p1[j] - p0[j], two_pi);
  }
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  Eigen::VectorXd r = h00 * p0 + h10 * h * velocities[i] + h01 * p1 + h11 * h * velocities[i + 1];
  if (periodic_coordinates) reduce(r);
  return r;
}

Eigen::VectorXd flow_velocity(const ContactManifold& m, const FlowGenerator& g, const Eigen::VectorXd& x) {
  return values_of(velocity<double>(m, g, to_std(x), 1.0));
}

FlowTrajectory integrate_flow(const ContactManifold& m, const FlowGenerator& g, const AmbientPoint& start, double T,
                              const FlowOptions& opts) {
  if (!(T >= 0.0)) throw std::invalid_argument("flow time must be nonnegative");
  FlowTrajectory traj;
  traj.periodic_coordinates = m.is_torus();
  std::vector<double> y = to_std(start.coords);
  traj.stats = run_dp45<double>(m, g, y, T, opts, [&](double t, const std::vector<double>& x, const std::vector<double>& v) {
    Eigen::VectorXd p = values_of(x);
    if (traj.periodic_coordinates) reduce(p);
    traj.times.push_back(t);
    traj.points.push_back(std::move(p));
    traj.velocities.push_back(values_of(v));
  });
  return traj;
}

Eigen::VectorXd flow_map(const ContactManifold& m, const FlowGenerator& g, const Eigen::VectorXd& x, double t,
                         const FlowOptions& opts) {
  std::vector<double> y = to_std(x);
  run_dp45<double>(m, g, y, t, opts, [](double, const std::vector<double>&, const std::vector<double>&) {});
  Eigen::VectorXd r = values_of(y);
  if (m.is_torus()) reduce(r);
  return r;
}

std::vector<double> birkhoff_average(const FlowTrajectory& traj, const ScalarField& f) {
  if (traj.times.empty()) throw std::invalid_argument("empty trajectory");
  std::vector<double> out;
  out.reserve(traj.size());
  double prev = f(traj.points[0]);
  out.push_back(prev);
  detail::CompensatedSum integral;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double t0 = traj.times[i - 1], t1 = traj.times[i];
    const double cur = f(traj.points[i]);
    const double mid = f(traj.at(0.5 * (t0 + t1)));
    integral.add((t1 - t0) / 6.0 * (prev + 4.0 * mid + cur));
    out.push_back(integral.value() / (t1 - traj.times[0]));
    prev = cur;
  }
  return out;
}

IntegralResult space_average(const ContactManifold& m, const ScalarField& f, const Budget& budget) {
  auto s = cached_measure(m, budget);
  std::vector<double> v = evaluate(*s, [&f](std::span<const double> x) { return f(x); });
  detail::CompensatedSum num, den;
  for (std::size_t i = 0; i < s->size(); ++i) {
    num.add(s->weight(i) * v[i]);
    den.add(s->weight(i));
  }
  IntegralResult r;
  r.method = s->method();
  r.seed = s->seed();
  r.samples = s->size();
  r.value = num.value() / den.value();
  if (s->method() == IntegrationMethod::monte_carlo) {
    const double N = static_cast<double>(s->size());
    detail::CompensatedSum var;
    for (std::size_t i = 0; i < s->size(); ++i) {
      const double d = N * s->weight(i) * (v[i] - r.value);
      var.add(d * d);
    }
    const double mean_w = den.value();  // mean of N w_i
    r.std_error = std::sqrt(var.value() / (N - 1.0) / N) / std::abs(mean_w);
  }
  r.flagged = budget.target_std_error > 0.0 && r.std_error > budget.target_std_error;
  return r;
}

namespace {

struct CellGrid {
  int res = 0;
  Eigen::VectorXd lo, width;
  std::unordered_set<std::uint64_t> reference;

  std::uint64_t cell(const Eigen::VectorXd& x) const {
    std::uint64_t id = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      long c = static_cast<long>(std::floor((x[j] - lo[j]) / width[j] * res));
      c = std::clamp(c, 0L, static_cast<long>(res - 1));
      id = id * static_cast<std::uint64_t>(res) + static_cast<std::uint64_t>(c);
    }
    return id;
  }
};

std::shared_ptr<const CellGrid> reference_cells(const ContactManifold& m, int resolution, std::size_t samples) {
  using Key = std::tuple<std::uint64_t, int, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const CellGrid>> cache;
  const Key key{m.id, resolution, samples};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int d = m.ambient_dim;
  std::vector<Eigen::VectorXd> pts(samples);
  detail::parallel_for(samples, [&](std::size_t i) {
    SplitMix64 rng = SplitMix64::stream(0x5eedce11ULL, i);
    pts[i] = m.sampler(rng).x;
  });
  auto grid = std::make_shared<CellGrid>();
  grid->res = resolution;
  if (m.is_torus()) {
    grid->lo = Eigen::VectorXd::Zero(d);
    grid->width = Eigen::VectorXd::Constant(d, two_pi);
  } else {
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, 1e300), hi = Eigen::VectorXd::Constant(d, -1e300);
    for (const auto& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    // Pad by a sliver so extreme points do not sit on the box boundary.
    Eigen::VectorXd pad = 1e-6 * (hi - lo);
    grid->lo = lo - pad;
    grid->width = (hi - lo) + 2.0 * pad;
  }
  for (const auto& p : pts) grid->reference.insert(grid->cell(p));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, grid).first->second;
}

/// Calls visit(x) on the trajectory densified so that consecutive points are
/// at most `spacing` apart.
template <class Visit>
void densify(const FlowTrajectory& traj, double spacing, Visit&& visit) {
  visit(traj.points[0]);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    Eigen::VectorXd delta = traj.points[i] - traj.points[i - 1];
    if (traj.periodic_coordinates) {
      for (Eigen::Index j = 0; j < delta.size(); ++j) delta[j] = std::remainder(delta[j], two_pi);
    }
    const double arc = std::max(delta.norm(), (traj.times[i] - traj.times[i - 1]) * traj.velocities[i].norm());
    const int sub = std::min(100000, static_cast<int>(std::ceil(arc / spacing)));
    for (int s = 1; s < sub; ++s) {
      visit(traj.at(traj.times[i - 1] + (traj.times[i] - traj.times[i - 1]) * s / sub));
    }
    visit(traj.points[i]);
  }
}

}  // namespace

double orbit_coverage(const ContactManifold& m, const FlowTrajectory& traj, int resolution,
                      std::size_t reference_samples) {
  if (resolution < 2) throw std::invalid_argument("coverage resolution must be at least 2");
  if (std::pow(static_cast<double>(resolution), m.ambient_dim) > 1e18) throw std::invalid_argument("coverage grid too fine");
  if (traj.times.empty()) return 0.0;
  auto grid = reference_cells(m, resolution, reference_samples);
  const double spacing = 0.5 * grid->width.minCoeff() / resolution;
  std::unordered_set<std::uint64_t> visited;
  densify(traj, spacing, [&](const Eigen::VectorXd& x) { visited.insert(grid->cell(x)); });
  std::size_t extra = 0;
  for (std::uint64_t c : visited) extra += grid->reference.count(c) ? 0 : 1;
  return static_cast<double>(visited.size()) / static_cast<double>(grid->reference.size() + extra);
}

double invariant_torus_coverage(const FlowTrajectory& traj, int resolution) {
  if (resolution < 2) throw std::invalid_argument("coverage resolution must be at least 2");
  if (traj.times.empty()) return 0.0;
  if (traj.points[0].size() != 4) throw std::invalid_argument("invariant torus coverage needs a flow in C^2");
  const double r0 = std::hypot(traj.points[0][0], traj.points[0][1]);
  const double r1 = std::hypot(traj.points[0][2], traj.points[0][3]);
  const double radius = std::max(std::min(r0, r1), 1e-3);
  const double spacing = 0.5 * radius * two_pi / resolution;
  std::vector<char> hit(static_cast<std::size_t>(resolution * resolution), 0);
  auto bin = [resolution](double a) {
    double u = (a + pi) / two_pi;
    return std::clamp(static_cast<int>(std::floor(u * resolution)), 0, resolution - 1);
  };
  densify(traj, spacing, [&](const Eigen::VectorXd& x) {
    const int i = bin(std::atan2(x[1], x[0]));
    const int j = bin(std::atan2(x[3], x[2]));
    hit[static_cast<std::size_t>(i * resolution + j)] = 1;
  });
  return static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / static_cast<double>(hit.size());
}

ReturnResult min_return_distance(const ContactManifold& m, const FlowTrajectory& traj, double t_min) {
  if (traj.times.empty() || !(t_min < traj.times.back())) {
    throw std::invalid_argument("t_min must be smaller than the trajectory duration");
  }
  const Eigen::VectorXd x0 = traj.points[0];
  auto dist2 = [&](double t) { return displacement(m, x0, traj.at(t)).squaredNorm(); };

  std::vector<double> ts{std::max(t_min, traj.times.front())};
  for (double t : traj.times) {
    if (t > ts.front()) ts.push_back(t);
  }
  std::vector<double> ds(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ds[i] = dist2(ts[i]);

  auto golden = [&](double a, double b) {
    constexpr double r = 0.6180339887498949;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = dist2(c), fd = dist2(d);
    for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - r * (b - a);
        fc = dist2(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r * (b - a);
        fd = dist2(d);
      }
    }
    const double t = fc < fd ? c : d;
    return ReturnResult{t, std::min(fc, fd)};
  };

  std::vector<ReturnResult> cand;
  const std::size_t n = ts.size();
  if (n == 1) return {ts[0], std::sqrt(ds[0])};
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = i == 0 || ds[i] <= ds[i - 1];
    const bool right = i + 1 == n || ds[i] <= ds[i + 1];
    if (!(left && right)) continue;
    const double a = ts[i == 0 ? 0 : i - 1], b = ts[i + 1 == n ? i : i + 1];
    ReturnResult r = golden(a, b);
    if (ds[i] < r.distance) r = {ts[i], ds[i]};
    cand.push_back(r);
  }
  double best = 1e300;
  for (const auto& c : cand) best = std::min(best, c.distance);
  for (const auto& c : cand) {
    if (std::sqrt(c.distance) <= std::sqrt(best) + 1e-7) return {c.time, std::sqrt(c.distance)};
  }
  return {ts[0], std::sqrt(ds[0])};
}

double conformal_factor(const ContactManifold& m, const FlowGenerator& g, const Eigen::VectorXd& p, double t,
                        const FlowOptions& opts) {
  const Eigen::MatrixXd e = frame_matrix(m, p);
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < e.cols(); ++i) {
    const double a = m.form.apply(p, e.col(i));
    const double b = pulled_back(m, transport(m, g, p, e.col(i), t, opts));
    num += a * b;
    den += a * a;
  }
  return num / den;
}

double strictness_check(const ContactManifold& m, const FlowGenerator& g, double t, std::size_t samples,
                        std::uint64_t seed, const FlowOptions& opts) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    SplitMix64 rng = SplitMix64::stream(seed, i);
    const AmbientPoint p = random_point(m, rng);
    const Eigen::MatrixXd e = frame_matrix(m, p.coords);
    std::normal_distribution<double> normal;
    Eigen::VectorXd c(e.cols());
    for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = normal(rng);
    const Eigen::VectorXd v = e * c.normalized();
    const double before = m.form.apply(p.coords, v);
    const double after = pulled_back(m, transport(m, g, p.coords, v, t, opts));
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

double adjoint(const ContactManifold& m, double t, const Hamiltonian& generator, const Hamiltonian& H,
               const Eigen::VectorXd& p, const FlowOptions& opts) {
  if (t == 0.0) return H(p);
  const FlowGenerator g = HamiltonianFlow{generator};
  const Eigen::VectorXd q = flow_map(m, g, p, -t, opts);
  return conformal_factor(m, g, q, t, opts) * H(q);
}

ScalarField adjoint_field(const ContactManifold& m, double t, const Hamiltonian& generator, const Hamiltonian& H,
                          const FlowOptions& opts) {
  return ScalarField::value_only([m, t, generator, H, opts](std::span<const double> x) {
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    return adjoint(m, t, generator, H, p, opts);
  });
}

void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj) {
  const std::size_t d = traj.points.empty() ? 0 : static_cast<std::size_t>(traj.points[0].size());
  os << "t";
  for (std::size_t j = 0; j < d; ++j) os << ",x" << j;
  os << "\n";
  char buf[32];
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[i]);
    os << buf;
    for (std::size_t j = 0; j < d; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", traj.points[i][static_cast<Eigen::Index>(j)]);
      os << ',' << buf;
    }
    os << "\n";
  }
}

}  // namespace reebkit
