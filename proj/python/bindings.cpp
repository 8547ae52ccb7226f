#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reebkit/chern_weil.hpp"
#include "reebkit/flow.hpp"
#include "reebkit/hamiltonian.hpp"
#include "reebkit/zoo.hpp"

namespace py = pybind11;
using namespace reebkit;

namespace {

using Release = py::call_guard<py::gil_scoped_release>;

// Python callables are value-only fields; integrators may call them from
// worker threads, so each evaluation takes the GIL.
ScalarField from_python(py::object f) {
  auto holder = std::make_shared<py::object>(std::move(f));
  auto fn = [holder](std::span<const double> x) {
    py::gil_scoped_acquire gil;
    py::array_t<double> a(static_cast<py::ssize_t>(x.size()), x.data());
    return (*holder)(a).cast<double>();
  };
  return ScalarField::value_only(fn);
}

std::vector<Hamiltonian> invariant_hamiltonians(const std::vector<py::object>& fs) {
  std::vector<Hamiltonian> H;
  for (const auto& f : fs) H.emplace_back(from_python(f), ReebInvariance::yes);
  return H;
}

Budget budget(std::size_t samples, int nodes, std::uint64_t seed) {
  Budget b;
  b.samples = samples;
  b.nodes = nodes;
  b.seed = seed;
  return b;
}

Eigen::MatrixXd stack(const std::vector<Eigen::VectorXd>& rows) {
  if (rows.empty()) return {};
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return out;
}

// A real 2-vector on T^3, a real diagonal on spheres, or an anti-Hermitian matrix.
LieAlgebraElement element(const GroupAction& act, py::object A) {
  if (act.kind() == GroupAction::Kind::unitary) return LieAlgebraElement::unitary(A.cast<Eigen::MatrixXcd>());
  return LieAlgebraElement::torus(A.cast<Eigen::VectorXd>());
}

GroupAction action_for(const ContactManifold& m, const std::string& kind) {
  if (kind == "shift") return GroupAction::torus_shift(m);
  if (kind == "diagonal") return GroupAction::diagonal_torus(m);
  if (kind == "unitary") return GroupAction::unitary(m);
  throw std::invalid_argument("unknown action '" + kind + "' (shift | diagonal | unitary)");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Reeb fields, flows and invariant polynomials of contact manifolds";

  py::register_exception<DegeneracyError>(mod, "DegeneracyError", PyExc_ArithmeticError);
  py::register_exception<IntegrationError>(mod, "IntegrationError", PyExc_RuntimeError);

  py::class_<ContactManifold>(mod, "ContactManifold")
      .def_readonly("name", &ContactManifold::name)
      .def_readonly("n", &ContactManifold::n)
      .def_readonly("ambient_dim", &ContactManifold::ambient_dim)
      .def_readonly("reeb_period", &ContactManifold::reeb_period)
      .def_property_readonly("is_torus", &ContactManifold::is_torus)
      .def("__repr__", [](const ContactManifold& m) { return "<ContactManifold " + m.name + ">"; });

  mod.def("standard_sphere", &zoo::standard_sphere, py::arg("n"), py::arg("scale") = 1.0);
  mod.def("torus3", &zoo::torus3, py::arg("n"));
  mod.def("degenerate_torus", &zoo::degenerate_torus);
  mod.def("weighted_sphere", [](std::vector<double> w) { return zoo::weighted_sphere(WeightVector(std::move(w))); },
          py::arg("weights"));
  mod.def(
      "unit_cotangent_sphere",
      [](double tilt) {
        return zoo::unit_cotangent_surface(tilt == 0.0 ? SurfaceMetric::round() : SurfaceMetric::tilted(tilt));
      },
      py::arg("tilt") = 0.0, "ST*S^2; tilt = 0 is the round metric.");
  mod.attr("golden_ratio") = zoo::golden_ratio;

  mod.def(
      "random_points",
      [](const ContactManifold& m, std::size_t count, std::uint64_t seed) {
        SplitMix64 rng(seed);
        std::vector<Eigen::VectorXd> pts;
        for (std::size_t i = 0; i < count; ++i) pts.push_back(random_point(m, rng).coords);
        return stack(pts);
      },
      py::arg("manifold"), py::arg("count"), py::arg("seed") = 1);
  mod.def(
      "project", [](const ContactManifold& m, const Eigen::VectorXd& x) { return project_to_manifold(m, x).coords; },
      py::arg("manifold"), py::arg("x"));
  mod.def(
      "contact_defect", [](const ContactManifold& m, const Eigen::VectorXd& x) { return contact_defect(m, {x}); },
      py::arg("manifold"), py::arg("x"));
  mod.def(
      "reeb_field", [](const ContactManifold& m, const Eigen::VectorXd& x) { return reeb_field(m, {x}).components; },
      py::arg("manifold"), py::arg("x"));
  mod.def(
      "reeb_residuals",
      [](const ContactManifold& m, const Eigen::VectorXd& x) {
        const auto r = reeb_residuals(m, {x}, reeb_field(m, {x}));
        return py::make_tuple(r.alpha, r.kernel);
      },
      py::arg("manifold"), py::arg("x"), "(|alpha(R) - 1|, max_i |d alpha(R, e_i)|)");

  py::class_<IntegralResult>(mod, "IntegralResult")
      .def_readonly("value", &IntegralResult::value)
      .def_readonly("std_error", &IntegralResult::std_error)
      .def_readonly("samples", &IntegralResult::samples)
      .def_readonly("seed", &IntegralResult::seed)
      .def_readonly("flagged", &IntegralResult::flagged)
      .def_property_readonly("method", [](const IntegralResult& r) { return to_string(r.method); })
      .def("__repr__", [](const IntegralResult& r) {
        return "<IntegralResult " + std::to_string(r.value) + " +- " + std::to_string(r.std_error) + ">";
      });

  mod.def(
      "volume", [](const ContactManifold& m, std::size_t samples, int nodes, std::uint64_t seed) {
        return volume(m, budget(samples, nodes, seed));
      },
      py::arg("manifold"), py::arg("samples") = 200'000, py::arg("nodes") = 48, py::arg("seed") = 20240611, Release());
  mod.def(
      "integrate",
      [](const ContactManifold& m, py::object f, std::size_t samples, int nodes, std::uint64_t seed) {
        const ScalarField field = from_python(std::move(f));
        py::gil_scoped_release release;
        return integrate(m, field, budget(samples, nodes, seed));
      },
      py::arg("manifold"), py::arg("f"), py::arg("samples") = 20'000, py::arg("nodes") = 24, py::arg("seed") = 20240611);
  mod.def(
      "invariant_polynomial",
      [](const ContactManifold& m, const std::vector<py::object>& fs, std::size_t samples, int nodes, std::uint64_t seed) {
        const auto H = invariant_hamiltonians(fs);
        py::gil_scoped_release release;
        return static_cast<IntegralResult>(invariant_polynomial_I(m, H, budget(samples, nodes, seed)));
      },
      py::arg("manifold"), py::arg("hamiltonians"), py::arg("samples") = 20'000, py::arg("nodes") = 24,
      py::arg("seed") = 20240611, "I_k of Reeb-invariant Hamiltonians given as callables on ambient coordinates.");

  py::class_<FlowTrajectory>(mod, "Trajectory")
      .def_property_readonly("times", [](const FlowTrajectory& t) { return Eigen::VectorXd::Map(t.times.data(), static_cast<Eigen::Index>(t.times.size())).eval(); })
      .def_property_readonly("points", [](const FlowTrajectory& t) { return stack(t.points); })
      .def_property_readonly("steps", [](const FlowTrajectory& t) { return t.stats.steps; })
      .def_property_readonly("max_drift", [](const FlowTrajectory& t) { return t.stats.max_drift; })
      .def("at", &FlowTrajectory::at, py::arg("t"))
      .def("__len__", &FlowTrajectory::size);

  mod.def(
      "reeb_flow",
      [](const ContactManifold& m, const Eigen::VectorXd& start, double T, double tol) {
        FlowOptions o;
        o.tol = tol;
        return integrate_flow(m, ReebFlow{}, project_to_manifold(m, start), T, o);
      },
      py::arg("manifold"), py::arg("start"), py::arg("T"), py::arg("tol") = 1e-10, Release());
  mod.def(
      "min_return",
      [](const ContactManifold& m, const FlowTrajectory& traj, double t_min) {
        const auto r = min_return_distance(m, traj, t_min);
        return py::make_tuple(r.time, r.distance);
      },
      py::arg("manifold"), py::arg("trajectory"), py::arg("t_min"), "(time, distance) of the closest return after t_min.");
  mod.def(
      "birkhoff_average",
      [](const FlowTrajectory& traj, py::object f) {
        const ScalarField field = from_python(std::move(f));
        return birkhoff_average(traj, field);
      },
      py::arg("trajectory"), py::arg("f"));
  mod.def("orbit_coverage", &orbit_coverage, py::arg("manifold"), py::arg("trajectory"), py::arg("resolution"),
          py::arg("reference_samples") = 200'000, Release());
  mod.def(
      "strictness", [](const ContactManifold& m, double t, std::size_t samples, std::uint64_t seed) {
        return strictness_check(m, ReebFlow{}, t, samples, seed);
      },
      py::arg("manifold"), py::arg("t") = 1.0, py::arg("samples") = 10, py::arg("seed") = 11, Release(),
      "max |lambda - 1| for the time-t Reeb flow.");

  mod.def("wallis_c", &wallis_c, py::arg("l"));
  mod.def("toric_closed_form", &toric_closed_form, py::arg("n"), py::arg("k"), py::arg("A"), py::arg("B"));
  mod.def(
      "moment",
      [](const ContactManifold& m, const std::string& action, const Eigen::VectorXd& x, py::object A) {
        const auto act = action_for(m, action);
        return moment(act, {x}, element(act, std::move(A)));
      },
      py::arg("manifold"), py::arg("action"), py::arg("x"), py::arg("A"));
  mod.def(
      "pullback",
      [](const ContactManifold& m, const std::string& action, const std::vector<py::object>& As, std::size_t samples,
         int nodes, std::uint64_t seed) {
        const auto act = action_for(m, action);
        std::vector<LieAlgebraElement> gens;
        for (const auto& A : As) gens.push_back(element(act, A));
        py::gil_scoped_release release;
        return static_cast<IntegralResult>(pullback_polynomial(act, gens, budget(samples, nodes, seed)));
      },
      py::arg("manifold"), py::arg("action"), py::arg("generators"), py::arg("samples") = 200'000,
      py::arg("nodes") = 48, py::arg("seed") = 20240611, "I_k(m(-, A_1), ..., m(-, A_k)).");
  mod.def(
      "positivity",
      [](const ContactManifold& m, const std::string& action, py::object A, int l) {
        const auto act = action_for(m, action);
        const auto gen = element(act, std::move(A));
        PositivityResult r;
        {
          py::gil_scoped_release release;
          r = even_positivity_check(act, gen, l);
        }
        return py::make_tuple(r.integral, r.certified);
      },
      py::arg("manifold"), py::arg("action"), py::arg("A"), py::arg("l") = 1, "(I_2l result, certified)");

  mod.def(
      "fiber_integration",
      [](double scale, std::size_t trials) {
        const auto f = fiber_integration_check(hopf_prequantization(scale), trials);
        return py::dict(py::arg("C") = f.C, py::arg("std_error") = f.std_error, py::arg("dispersion") = f.dispersion,
                        py::arg("ratios") = f.ratios);
      },
      py::arg("scale") = 1.0, py::arg("trials") = 20, "Hopf bundle: measured constant in int_M H = C int_B h omega.");
  mod.def(
      "euler_number",
      [](double scale) {
        const auto e = euler_number(hopf_prequantization(scale));
        return py::dict(py::arg("raw") = e.raw, py::arg("normalized") = e.normalized, py::arg("nearest") = e.nearest,
                        py::arg("warnings") = e.warnings);
      },
      py::arg("scale") = 1.0);
}
