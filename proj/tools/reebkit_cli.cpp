// Batch front end: every computation as a reproducible command with JSON or
// CSV output. Exit codes: 0 ok, 1 numerical criteria failed, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reebkit/chern_weil.hpp"
#include "reebkit/flow.hpp"
#include "reebkit/zoo.hpp"

using json = nlohmann::json;
using namespace reebkit;
using std::numbers::pi;

namespace {

constexpr int kOk = 0;
constexpr int kCriteria = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + item + "' in list '" + s + "'");
    }
  }
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json result_json(const IntegralResult& r) {
  return {{"value", r.value},           {"std_error", r.std_error}, {"method", to_string(r.method)},
          {"samples", r.samples},       {"seed", r.seed},           {"flagged", r.flagged}};
}

// ---------------------------------------------------------------------------
// Shared options

struct ManifoldSpec {
  std::string name = "sphere";
  int n = 1;
  double scale = 1.0;
  std::string weights = "1,1.6180339887498949";
  std::string metric = "round";
  double tilt = 0.3;

  void add(CLI::App* app) {
    app->add_option("--manifold", name, "sphere | torus3 | degenerate | weighted | cotangent")
        ->check(CLI::IsMember({"sphere", "torus3", "degenerate", "weighted", "cotangent"}))
        ->capture_default_str();
    app->add_option("--n", n, "sphere: S^{2n+1}; torus3: twist n")->check(CLI::Range(1, 8))->capture_default_str();
    app->add_option("--scale", scale, "sphere: multiple of alpha_st")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--weights", weights, "weighted: comma-separated positive weights")->capture_default_str();
    app->add_option("--metric", metric, "cotangent: round | tilted")->check(CLI::IsMember({"round", "tilted"}))->capture_default_str();
    app->add_option("--tilt", tilt, "cotangent: amplitude of the conformal factor a q_3")->capture_default_str();
  }

  ContactManifold build() const {
    if (name == "sphere") return zoo::standard_sphere(n, scale);
    if (name == "torus3") return zoo::torus3(n);
    if (name == "degenerate") return zoo::degenerate_torus();
    if (name == "weighted") {
      try {
        return zoo::weighted_sphere(WeightVector(parse_list(weights)));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    return zoo::unit_cotangent_surface(metric == "round" ? SurfaceMetric::round() : SurfaceMetric::tilted(tilt));
  }

  json to_json() const {
    json j = {{"name", name}};
    if (name == "sphere") j.update({{"n", n}, {"scale", scale}});
    if (name == "torus3") j["n"] = n;
    if (name == "weighted") j["weights"] = parse_list(weights);
    if (name == "cotangent") {
      j["metric"] = metric;
      if (metric == "tilted") j["tilt"] = tilt;
    }
    return j;
  }
};

struct Common {
  std::uint64_t seed = 20240611;
  std::size_t samples = 200000;
  int nodes = 48;
  std::string output;
  std::string format = "json";
  std::string config;

  void add(CLI::App* app, bool with_format = true) {
    app->add_option("--seed", seed, "master seed; recorded in every output")->capture_default_str();
    app->add_option("--samples", samples, "Monte Carlo sample budget")->check(CLI::Range(2ul, 1ul << 31))->capture_default_str();
    app->add_option("--nodes", nodes, "quadrature nodes per dimension")->check(CLI::Range(2, 512))->capture_default_str();
    app->add_option("--output,-o", output, "output file (default: stdout)");
    if (with_format) app->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app->add_option("--config", config, "key=value file; flags take precedence");
  }

  Budget budget() const {
    Budget b;
    b.samples = samples;
    b.nodes = nodes;
    b.seed = seed;
    return b;
  }
};

/// Fills options of `app` that were not given on the command line from a
/// key=value file. Unknown keys are usage errors.
void apply_config(CLI::App* app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "config") throw UsageError(path + ": nested config files are not supported");
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void emit_json(const Common& c, json j) {
  j["timestamp"] = timestamp();
  j["seed"] = c.seed;
  emit(c.output, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// contact-check

struct ContactCheck {
  ManifoldSpec m;
  Common c;
  std::size_t points = 1000;
  double reeb_tol = 1e-10;

  void add(CLI::App* app) {
    m.add(app);
    c.add(app, false);
    app->add_option("--points", points, "number of sample points")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--reeb-tol", reeb_tol, "tolerance on Reeb residuals")->check(CLI::PositiveNumber)->capture_default_str();
  }

  int run() {
    const ContactManifold M = m.build();
    double min_d = 1e300, max_d = -1e300, sum_d = 0.0, max_a = 0.0, max_k = 0.0;
    std::size_t degenerate = 0;
    for (std::size_t i = 0; i < points; ++i) {
      SplitMix64 rng = SplitMix64::stream(c.seed, i);
      const AmbientPoint p = random_point(M, rng);
      const double d = contact_defect(M, p);
      min_d = std::min(min_d, d);
      max_d = std::max(max_d, d);
      sum_d += d;
      try {
        const ReebResiduals r = reeb_residuals(M, p, reeb_field(M, p));
        max_a = std::max(max_a, r.alpha);
        max_k = std::max(max_k, r.kernel);
      } catch (const DegeneracyError&) {
        ++degenerate;
      }
    }
    const bool ok = min_d > 0.0 && degenerate == 0 && max_a <= reeb_tol && max_k <= reeb_tol;
    emit_json(c, {{"operation", "contact-check"},
                  {"manifold", m.to_json()},
                  {"points", points},
                  {"min_defect", min_d},
                  {"max_defect", max_d},
                  {"mean_defect", sum_d / static_cast<double>(points)},
                  {"max_reeb_alpha_residual", max_a},
                  {"max_reeb_kernel_residual", max_k},
                  {"degenerate_points", degenerate},
                  {"reeb_tolerance", reeb_tol},
                  {"passed", ok}});
    return ok ? kOk : kCriteria;
  }
};

// ---------------------------------------------------------------------------
// flow

/// Named Hamiltonians and observables for batch use.
ScalarField named_field(const std::string& name, const ContactManifold& M, int twist) {
  if (name == "one") return ScalarField::constant(1.0);
  if (name == "re-z0") return ScalarField([](auto x) { return x[0]; });
  if (name == "abs-z0") return ScalarField([](auto x) { return x[0] * x[0] + x[1] * x[1]; });
  if (name == "re-z0-z1bar") {
    if (M.ambient_dim < 4 || M.is_torus()) throw UsageError("re-z0-z1bar needs a manifold in C^{n+1}, n >= 1");
    return ScalarField([](auto x) { return x[0] * x[2] + x[1] * x[3]; });
  }
  if (name == "cos-nt") {
    if (!M.is_torus()) throw UsageError("cos-nt needs the torus");
    const int n = twist;
    return ScalarField([n](auto x) {
      using std::cos;
      return cos(n * x[2]);
    });
  }
  throw UsageError("unknown field '" + name + "'");
}

struct Flow {
  ManifoldSpec m;
  Common c;
  double T = 10.0;
  double tol = 1e-10;
  std::string start;
  bool random_start = false;
  std::string generator = "reeb";
  std::string observable;
  int coverage = 0;
  int torus_coverage = 0;
  std::optional<double> return_tmin;
  std::string trajectory;

  void add(CLI::App* app) {
    m.add(app);
    c.add(app);
    app->add_option("--T", T, "flow time")->check(CLI::NonNegativeNumber)->capture_default_str();
    app->add_option("--tol", tol, "local error tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--start", start, "comma-separated ambient start point (projected onto M)");
    app->add_flag("--random-start", random_start, "draw the start point from the seed");
    app->add_option("--generator", generator, "reeb | re-z0 | abs-z0 (contact Hamiltonian)")
        ->check(CLI::IsMember({"reeb", "re-z0", "abs-z0"}))
        ->capture_default_str();
    app->add_option("--birkhoff", observable, "observable for time averages: one | re-z0 | abs-z0 | re-z0-z1bar | cos-nt");
    app->add_option("--coverage", coverage, "ambient-grid coverage at this resolution");
    app->add_option("--torus-coverage", torus_coverage, "(arg z0, arg z1) coverage at this resolution");
    app->add_option("--return-tmin", return_tmin, "report the closest return for t >= this time");
    app->add_option("--trajectory", trajectory, "also write the trajectory CSV here");
  }

  int run() {
    const ContactManifold M = m.build();
    Eigen::VectorXd x0;
    if (!start.empty() && random_start) throw UsageError("--start and --random-start are exclusive");
    if (!start.empty()) {
      std::vector<double> v = parse_list(start);
      if (static_cast<int>(v.size()) != M.ambient_dim) {
        throw UsageError("start point needs " + std::to_string(M.ambient_dim) + " coordinates");
      }
      x0 = project_to_manifold(M, Eigen::Map<Eigen::VectorXd>(v.data(), M.ambient_dim)).coords;
    } else if (random_start) {
      SplitMix64 rng = SplitMix64::stream(c.seed, 0);
      x0 = random_point(M, rng).coords;
    } else {
      throw UsageError("give --start or --random-start");
    }

    FlowGenerator g = ReebFlow{};
    if (generator != "reeb") g = HamiltonianFlow{Hamiltonian(named_field(generator, M, m.n))};
    FlowOptions opts;
    opts.tol = tol;

    json j = {{"operation", "flow"}, {"manifold", m.to_json()}, {"T", T}, {"tol", tol}, {"generator", generator},
              {"start", vector_json(x0)}};
    FlowTrajectory traj;
    try {
      traj = integrate_flow(M, g, {x0}, T, opts);
    } catch (const IntegrationError& e) {
      j["error"] = e.what();
      j["stats"] = {{"steps", e.stats.steps}, {"rejected", e.stats.rejected}, {"max_drift", e.stats.max_drift}};
      j["passed"] = false;
      emit_json(c, j);
      return kCriteria;
    }
    j["stats"] = {{"steps", traj.stats.steps},
                  {"rejected", traj.stats.rejected},
                  {"evaluations", traj.stats.evaluations},
                  {"max_drift", traj.stats.max_drift},
                  {"max_energy_defect", traj.stats.max_energy_defect}};
    j["end"] = vector_json(traj.points.back());
    bool ok = generator != "reeb" || traj.stats.max_energy_defect <= 1e-8;

    if (!observable.empty()) {
      const std::vector<double> avg = birkhoff_average(traj, named_field(observable, M, m.n));
      j["birkhoff"] = {{"observable", observable}, {"final", avg.back()}, {"space_average", space_average(M, named_field(observable, M, m.n), c.budget()).value}};
    }
    if (coverage > 0) j["coverage"] = {{"resolution", coverage}, {"fraction", orbit_coverage(M, traj, coverage)}};
    if (torus_coverage > 0) {
      if (M.ambient_dim != 4) throw UsageError("--torus-coverage needs a flow in C^2");
      j["torus_coverage"] = {{"resolution", torus_coverage}, {"fraction", invariant_torus_coverage(traj, torus_coverage)}};
    }
    const double tmin = return_tmin.value_or(std::min(1.0, 0.1 * T));
    if (T > tmin && T > 0.0) {
      const ReturnResult r = min_return_distance(M, traj, tmin);
      j["return"] = {{"t_min", tmin}, {"time", r.time}, {"distance", r.distance}, {"periodic", r.distance <= 1e-6}};
    }
    j["passed"] = ok;

    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    if (!trajectory.empty()) emit(trajectory, csv.str());
    if (c.format == "csv") {
      emit(c.output, csv.str());
    } else {
      emit_json(c, j);
    }
    return ok ? kOk : kCriteria;
  }
};

// ---------------------------------------------------------------------------
// cw

GroupAction build_action(const std::string& kind, const ContactManifold& M) {
  try {
    if (kind == "shift") return GroupAction::torus_shift(M);
    if (kind == "diagonal") return GroupAction::diagonal_torus(M);
    if (kind == "unitary") return GroupAction::unitary(M);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown action '" + kind + "'");
}

std::string default_action(const ContactManifold& M) {
  if (M.is_torus()) return "shift";
  return M.name.rfind("weighted", 0) == 0 ? "diagonal" : "unitary";
}

/// --A: "random" or a comma list (torus actions: the vector; unitary: the
/// diagonal of i diag(a)).
LieAlgebraElement parse_element(const GroupAction& act, const std::string& spec, SplitMix64& rng) {
  if (spec == "random") return act.random_element(rng);
  const std::vector<double> v = parse_list(spec);
  if (static_cast<int>(v.size()) != act.rank()) {
    throw UsageError(act.name() + " expects " + std::to_string(act.rank()) + " components in --A");
  }
  const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(v.data(), act.rank());
  if (act.kind() == GroupAction::Kind::unitary) {
    return LieAlgebraElement::unitary((std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>()).asDiagonal());
  }
  return LieAlgebraElement::torus(a);
}

json element_json(const LieAlgebraElement& A) {
  if (A.matrix.size() == 0) return vector_json(A.real);
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.matrix.cols(); ++j) row.push_back({A.matrix(i, j).real(), A.matrix(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << g17(r[i]);
      os << "\n";
    }
    return os.str();
  }
  json to_json() const {
    json a = json::array();
    for (const auto& r : rows) {
      json o;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "k") {
          o[header[i]] = static_cast<int>(r[i]);
        } else {
          o[header[i]] = r[i];
        }
      }
      a.push_back(o);
    }
    return a;
  }
};

void emit_table(const Common& c, json j, const Table& t) {
  if (c.format == "csv") {
    emit(c.output, t.csv());
    return;
  }
  j["rows"] = t.to_json();
  emit_json(c, j);
}

struct ToricTable {
  Common c;
  int n = 1;
  int kmax = 4;
  int pairs = 20;

  void add(CLI::App* app) {
    c.add(app);
    app->add_option("--n", n, "twist of alpha_n")->check(CLI::Range(1, 8))->capture_default_str();
    app->add_option("--kmax", kmax, "largest degree")->check(CLI::Range(1, 12))->capture_default_str();
    app->add_option("--pairs", pairs, "random (A, B) per degree")->check(CLI::Range(1, 1000))->capture_default_str();
  }

  int run() {
    const ContactManifold M = zoo::torus3(n);
    const GroupAction act = GroupAction::torus_shift(M);
    Budget b = c.budget();
    b.method = IntegrationMethod::quadrature;
    b.nodes = std::max(b.nodes, 4 * n * kmax + 1);
    Table t{{"k", "coefficient", "closed_form", "relative_error", "max_abs_value"}, {}};
    bool ok = true;
    for (int k = 1; k <= kmax; ++k) {
      double num = 0.0, den = 0.0, max_abs = 0.0;
      for (int p = 0; p < pairs; ++p) {
        SplitMix64 rng = SplitMix64::stream(c.seed + static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(p));
        // Unit-box draws keep the odd-degree round-off residue below 1e-12.
        Eigen::VectorXd ab(2);
        ab << 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0;
        const LieAlgebraElement A = LieAlgebraElement::torus(ab);
        const double v = pullback_polynomial(act, std::vector<LieAlgebraElement>(static_cast<std::size_t>(k), A), b).value;
        const double r = std::pow(A.real.squaredNorm(), 0.5 * k);
        num += v * r;
        den += r * r;
        max_abs = std::max(max_abs, std::abs(v));
      }
      const double coef = num / den;
      const double closed = toric_closed_form(n, k, 1.0, 0.0);
      double rel = k % 2 == 0 ? std::abs(coef - closed) / closed : std::abs(coef);
      if (k % 2 == 0) {
        ok = ok && rel <= 1e-10;
      } else {
        ok = ok && max_abs <= 1e-12;
      }
      t.rows.push_back({double(k), coef, closed, rel, max_abs});
    }
    emit_table(c, {{"operation", "cw toric-table"}, {"n", n}, {"kmax", kmax}, {"pairs", pairs}, {"nodes", b.nodes}, {"passed", ok}}, t);
    return ok ? kOk : kCriteria;
  }
};

struct SphereTable {
  Common c;
  int n = 1;
  double scale = 1.0;
  int kmax = 4;

  void add(CLI::App* app) {
    c.add(app);
    app->add_option("--n", n, "sphere S^{2n+1}")->check(CLI::Range(1, 4))->capture_default_str();
    app->add_option("--scale", scale, "multiple of alpha_st")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--kmax", kmax, "largest degree")->check(CLI::Range(1, 8))->capture_default_str();
  }

  int run() {
    const ContactManifold M = zoo::standard_sphere(n, scale);
    const GroupAction act = GroupAction::diagonal_torus(M);
    Table t{{"k", "value", "std_error", "closed_form", "z_score"}, {}};
    bool ok = true;
    for (int k = 1; k <= kmax; ++k) {
      SplitMix64 rng = SplitMix64::stream(c.seed, static_cast<std::uint64_t>(k));
      std::vector<LieAlgebraElement> A;
      std::vector<Eigen::VectorXd> a;
      for (int i = 0; i < k; ++i) {
        A.push_back(act.random_element(rng));
        a.push_back(A.back().real);
      }
      const IntegralResult r = pullback_polynomial(act, A, c.budget());
      const double closed = sphere_diagonal_closed_form(n, scale, a);
      ok = ok && within_sigma(r.value, closed, r.std_error);
      t.rows.push_back({double(k), r.value, r.std_error, closed, (r.value - closed) / std::max(r.std_error, 1e-300)});
    }
    emit_table(c, {{"operation", "cw sphere-table"}, {"n", n}, {"scale", scale}, {"kmax", kmax}, {"samples", c.samples}, {"passed", ok}}, t);
    return ok ? kOk : kCriteria;
  }
};

struct Pullback {
  ManifoldSpec m;
  Common c;
  std::string action;
  std::string A = "random";
  int k = 2;

  void add(CLI::App* app) {
    m.add(app);
    c.add(app, false);
    app->add_option("--action", action, "shift | diagonal | unitary (default by manifold)");
    app->add_option("--A", A, "'random' or comma-separated generator")->capture_default_str();
    app->add_option("--k", k, "degree")->check(CLI::Range(0, 12))->capture_default_str();
  }

  int run() {
    const ContactManifold M = m.build();
    const GroupAction act = build_action(action.empty() ? default_action(M) : action, M);
    SplitMix64 rng(c.seed);
    const LieAlgebraElement e = parse_element(act, A, rng);
    const PolynomialResult r = pullback_polynomial(act, std::vector<LieAlgebraElement>(static_cast<std::size_t>(k), e), c.budget());
    json j = {{"operation", "cw pullback"}, {"manifold", m.to_json()}, {"action", act.name()}, {"A", element_json(e)},
              {"k", k}, {"result", result_json(r)}, {"warnings", r.warnings}};
    if (M.is_torus() && act.kind() == GroupAction::Kind::torus_shift) {
      j["closed_form"] = toric_closed_form(m.n, k, e.real[0], e.real[1]);
    }
    emit_json(c, j);
    return kOk;
  }
};

struct Positivity {
  ManifoldSpec m;
  Common c;
  std::string action;
  std::string A = "random";
  int l = 1;

  void add(CLI::App* app) {
    m.add(app);
    c.add(app, false);
    app->add_option("--action", action, "shift | diagonal | unitary (default by manifold)");
    app->add_option("--A", A, "'random' or comma-separated generator")->capture_default_str();
    app->add_option("--l", l, "half degree")->check(CLI::Range(1, 6))->capture_default_str();
  }

  int run() {
    const ContactManifold M = m.build();
    const GroupAction act = build_action(action.empty() ? default_action(M) : action, M);
    SplitMix64 rng(c.seed);
    const LieAlgebraElement e = parse_element(act, A, rng);
    PositivityResult r;
    try {
      r = even_positivity_check(act, e, l, c.budget());
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
    emit_json(c, {{"operation", "cw positivity"}, {"manifold", m.to_json()}, {"action", act.name()},
                  {"A", element_json(e)}, {"l", l}, {"result", result_json(r.integral)}, {"certified", r.certified}});
    return r.certified ? kOk : kCriteria;
  }
};

/// Closed-form contact volume where one is known.
std::optional<double> known_volume(const ManifoldSpec& s, const ContactManifold& M) {
  if (s.name == "sphere") return std::pow(pi * s.scale, s.n + 1);
  if (s.name == "torus3") return s.n * std::pow(2.0 * pi, 3);
  if (s.name == "degenerate") return 0.0;
  if (s.name == "cotangent" && s.metric == "round") return 8.0 * pi * pi;
  if (s.name == "weighted") {
    double prod = 1.0;
    for (double w : parse_list(s.weights)) prod *= w;
    return 1.0 / prod;
  }
  (void)M;
  return std::nullopt;
}

struct Volume {
  ManifoldSpec m;
  Common c;

  void add(CLI::App* app) {
    m.add(app);
    c.add(app, false);
  }

  int run() {
    const ContactManifold M = m.build();
    const IntegralResult r = volume(M, c.budget());
    json j = {{"operation", "cw volume"}, {"manifold", m.to_json()}, {"result", result_json(r)}};
    bool ok = true;
    if (auto ref = known_volume(m, M)) {
      j["closed_form"] = *ref;
      ok = within_sigma(r.value, *ref, r.std_error, 3.0, std::abs(*ref));
    }
    j["passed"] = ok;
    emit_json(c, j);
    return ok ? kOk : kCriteria;
  }
};

// ---------------------------------------------------------------------------
// preq

struct Preq {
  Common c;
  std::string normalize = "raw";
  std::size_t trials = 20;

  void add(CLI::App* app) {
    c.add(app, false);
    app->add_option("--normalize-period", normalize, "raw (alpha_st, fibre period pi) | 2pi (2 alpha_st)")
        ->check(CLI::IsMember({"raw", "2pi"}))
        ->capture_default_str();
    app->add_option("--trials", trials, "random Hamiltonians in the fibre-integration check")->check(CLI::Range(2ul, 10000ul))->capture_default_str();
  }

  int run() {
    const Prequantization P = hopf_prequantization(normalize == "2pi" ? 2.0 : 1.0);
    const Budget b = c.budget();
    const FiberCheck f = fiber_integration_check(P, trials, b, c.seed);

    auto sq = [](int j) {
      return [j](auto z) { return z[2 * j] * z[2 * j] + z[2 * j + 1] * z[2 * j + 1]; };
    };
    const Hamiltonian H0(ScalarField(sq(0)), ReebInvariance::yes), H1(ScalarField(sq(1)), ReebInvariance::yes);
    const Hamiltonian T1 = pull_up([](auto s) {
      using std::cos;
      return 1.0 + 0.5 * s[0] + cos(s[2] + s[1]);
    });
    const std::vector<std::pair<std::string, std::vector<Hamiltonian>>> tuples = {
        {"|z0|^2, |z1|^2", {H0, H1}},
        {"|z0|^2, |z1|^2, trig", {H0, H1, T1}},
    };
    json rel = json::array();
    bool ok = f.dispersion <= 1e-3;
    for (const auto& [label, H] : tuples) {
      const RelationCheck r = prequantization_relation_check(P, H, b);
      ok = ok && r.passed;
      rel.push_back({{"hamiltonians", label}, {"k", H.size()}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"top", r.top},
                     {"remainder", r.remainder}, {"sigma", r.sigma}, {"residual", r.residual}, {"passed", r.passed}});
    }
    const EulerReport e = euler_number(P, b);
    emit_json(c, {{"operation", "preq"},
                  {"normalize_period", normalize},
                  {"kappa", P.kappa},
                  {"fiber_period", P.fiber_period},
                  {"fiber_integration", {{"C", f.C}, {"std_error", f.std_error}, {"dispersion", f.dispersion},
                                         {"trials", f.ratios.size()}, {"skipped", f.skipped}}},
                  {"relation", rel},
                  {"euler", {{"omega_integral", e.omega_integral}, {"raw", e.raw}, {"normalized", e.normalized},
                             {"nearest", e.nearest}, {"defect", e.defect}, {"warnings", e.warnings}}},
                  {"passed", ok}});
    return ok ? kOk : kCriteria;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reebkit: Reeb dynamics and invariant polynomials of contact manifolds"};
  app.require_subcommand(1);

  ContactCheck contact;
  Flow flow;
  ToricTable toric;
  SphereTable sphere;
  Pullback pull;
  Positivity positivity;
  Volume vol;
  Preq preq;

  auto* c_contact = app.add_subcommand("contact-check", "contact condition and Reeb residuals at sample points");
  contact.add(c_contact);
  auto* c_flow = app.add_subcommand("flow", "integrate a Reeb or contact Hamiltonian flow with diagnostics");
  flow.add(c_flow);
  auto* c_cw = app.add_subcommand("cw", "invariant polynomials and moment maps");
  c_cw->require_subcommand(1);
  auto* c_toric = c_cw->add_subcommand("toric-table", "pullback table of the shift action on T^3");
  toric.add(c_toric);
  auto* c_sphere = c_cw->add_subcommand("sphere-table", "diagonal-torus pullbacks on spheres against closed forms");
  sphere.add(c_sphere);
  auto* c_pull = c_cw->add_subcommand("pullback", "I_k on moment Hamiltonians of one generator");
  pull.add(c_pull);
  auto* c_pos = c_cw->add_subcommand("positivity", "certify I_{2l}(m(-,A), ...) > 0");
  positivity.add(c_pos);
  auto* c_vol = c_cw->add_subcommand("volume", "contact volume");
  vol.add(c_vol);
  auto* c_preq = app.add_subcommand("preq", "Hopf prequantization: fibre integration, relation, Euler number");
  preq.add(c_preq);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  struct Entry {
    CLI::App* app;
    const std::string* config;
    std::function<int()> run;
  };
  const std::vector<Entry> entries = {
      {c_contact, &contact.c.config, [&] { return contact.run(); }},
      {c_flow, &flow.c.config, [&] { return flow.run(); }},
      {c_toric, &toric.c.config, [&] { return toric.run(); }},
      {c_sphere, &sphere.c.config, [&] { return sphere.run(); }},
      {c_pull, &pull.c.config, [&] { return pull.run(); }},
      {c_pos, &positivity.c.config, [&] { return positivity.run(); }},
      {c_vol, &vol.c.config, [&] { return vol.run(); }},
      {c_preq, &preq.c.config, [&] { return preq.run(); }},
  };
  for (const auto& e : entries) {
    if (!e.app->parsed()) continue;
    try {
      if (!e.config->empty()) apply_config(e.app, *e.config);
      return e.run();
    } catch (const UsageError& ex) {
      std::cerr << "usage error: " << ex.what() << "\n";
      return kUsage;
    } catch (const std::invalid_argument& ex) {
      std::cerr << "usage error: " << ex.what() << "\n";
      return kUsage;
    } catch (const DegeneracyError& ex) {
      std::cerr << "degenerate: " << ex.what() << "\n";
      return kCriteria;
    } catch (const std::exception& ex) {
      std::cerr << "error: " << ex.what() << "\n";
      return kCriteria;
    }
  }
  return kUsage;
}
