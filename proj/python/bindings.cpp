#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torusfield/harness.hpp"
#include "torusfield/kacrice.hpp"
#include "torusfield/oscillatory.hpp"

namespace py = pybind11;
using namespace torusfield;

namespace {

std::tuple<std::int64_t, std::int64_t, std::int64_t> as_tuple(const LatticePoint& p) { return {p.x, p.y, p.z}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Arithmetic random waves on the 3-torus";
  m.attr("__version__") = version();

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  // lattice
  m.def("is_sum_of_three_squares", &is_sum_of_three_squares, py::arg("n"));
  m.def("is_admissible", &is_admissible, py::arg("n"));

  py::class_<LatticeShell>(m, "LatticeShell")
      .def_property_readonly("energy", &LatticeShell::energy)
      .def("__len__", &LatticeShell::size)
      .def_property_readonly("points", [](const LatticeShell& s) {
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
        for (const auto& p : s.points()) out.push_back(as_tuple(p));
        return out;
      })
      .def("__repr__", [](const LatticeShell& s) {
        return "<LatticeShell E=" + std::to_string(s.energy()) + " N=" + std::to_string(s.size()) + ">";
      });
  m.def("enumerate_shell", &enumerate_shell, py::arg("energy"));

  py::class_<EnergyReport>(m, "EnergyReport")
      .def_readonly("s", &EnergyReport::s)
      .def_readonly("value", &EnergyReport::value)
      .def_readonly("normalized", &EnergyReport::normalized)
      .def_readonly("dyadic_bound", &EnergyReport::dyadic_bound);
  m.def("riesz_energy", &riesz_energy, py::arg("shell"), py::arg("s"));
  m.def("riesz_dyadic_bound", &riesz_dyadic_bound, py::arg("shell"), py::arg("s"));
  m.def("riesz_limit_constant", &riesz_limit_constant, py::arg("s"));
  m.def("cap_count", &cap_count, py::arg("shell"), py::arg("direction"), py::arg("radius"));
  m.def("equidistribution_discrepancy", &equidistribution_discrepancy, py::arg("shell"), py::arg("cap_samples"),
        py::arg("seed"));

  // curve
  py::class_<FrenetData>(m, "FrenetData")
      .def_readonly("T", &FrenetData::T)
      .def_readonly("N", &FrenetData::N)
      .def_readonly("B", &FrenetData::B)
      .def_readonly("kappa", &FrenetData::kappa)
      .def_readonly("tau", &FrenetData::tau);
  py::class_<Curve>(m, "Curve")
      .def_property_readonly("kind", [](const Curve& c) { return std::string(to_string(c.kind())); })
      .def_property_readonly("length", &Curve::length)
      .def_property_readonly("closed", &Curve::closed)
      .def_property_readonly("params", &Curve::params)
      .def("position", &Curve::position, py::arg("t"))
      .def("jet", [](const Curve& c, double t) {
        const CurveJet j = c.jet(t);
        return py::make_tuple(j.position, j.d1, j.d2, j.d3);
      }, py::arg("t"));
  m.def("make_curve", [](const std::string& kind, const std::vector<double>& params) {
    return make_curve(parse_curve_kind(kind), params);
  }, py::arg("kind"), py::arg("params"));
  m.def("frenet", &frenet, py::arg("curve"), py::arg("t"));
  m.def("validate_unit_speed", &validate_unit_speed, py::arg("curve"), py::arg("samples"));

  // wave
  py::class_<WaveSample>(m, "WaveSample")
      .def_property_readonly("energy", &WaveSample::energy)
      .def_property_readonly("seed", &WaveSample::seed)
      .def_property_readonly("coefficients", [](const WaveSample& w) {
        return std::vector<std::complex<double>>(w.coefficients().begin(), w.coefficients().end());
      })
      .def("value", &WaveSample::value, py::arg("x"))
      .def("jet", [](const WaveSample& w, const Vec3& x) {
        const FieldJet j = w.jet(x);
        return py::make_tuple(j.value, j.gradient, j.hessian);
      }, py::arg("x"));
  m.def("sample_wave", &sample_wave, py::arg("shell"), py::arg("seed"));
  m.def("sine_wave", &sine_wave, py::arg("k"));

  py::class_<CovarianceJet>(m, "CovarianceJet")
      .def(py::init(&CovarianceJet::from_values), py::arg("r"), py::arg("r1"), py::arg("r2"), py::arg("r12"))
      .def_readonly("r", &CovarianceJet::r)
      .def_readonly("r1", &CovarianceJet::r1)
      .def_readonly("r2", &CovarianceJet::r2)
      .def_readonly("r12", &CovarianceJet::r12);
  m.def("covariance_jet", py::overload_cast<const LatticeShell&, const Curve&, double, double>(&covariance_jet),
        py::arg("shell"), py::arg("curve"), py::arg("t1"), py::arg("t2"));

  // kacrice
  m.def("k1_density", &k1_density, py::arg("energy"));
  m.def("expected_count", py::overload_cast<const Curve&, std::int64_t>(&expected_count), py::arg("curve"),
        py::arg("energy"));
  m.def("k2_correlation", [](const CovarianceJet& jet, std::int64_t energy) {
    return k2_correlation(jet, make_kac_rice_params(energy));
  }, py::arg("jet"), py::arg("energy"));
  m.def("r2_moment", &r2_moment, py::arg("shell"), py::arg("curve"), py::arg("grid_per_wavelength") = 8,
        py::arg("threads") = 1);
  m.def("singular_cubes", [](const LatticeShell& shell, const Curve& curve, double c0, int probe) {
    const SingularReport r = singular_cubes(shell, curve, c0, probe);
    py::dict d;
    d["k"] = r.k;
    d["delta0"] = r.delta0;
    d["singular_pairs"] = r.singular_pairs;
    d["r_sq_integral"] = r.r_sq_integral;
    d["ratio"] = r.ratio();
    return d;
  }, py::arg("shell"), py::arg("curve"), py::arg("c0") = 0.1, py::arg("probe") = 5);

  // zeros
  m.def("count_zeros", [](const WaveSample& wave, const Curve& curve, std::int64_t energy, int ppw) {
    const ZeroCount z = count_zeros(restrict_to_curve(wave, curve), energy, ppw);
    py::dict d;
    d["count"] = z.count;
    d["suspicious"] = z.suspicious;
    d["resolution"] = z.resolution;
    d["roots"] = z.roots;
    return d;
  }, py::arg("wave"), py::arg("curve"), py::arg("energy"), py::arg("points_per_wavelength") = 32);
  m.def("analytic_zero_count", [](int k, double lo, double hi, bool include_lo, bool include_hi) {
    return analytic_zero_count(k, {lo, hi, include_lo, include_hi});
  }, py::arg("k"), py::arg("lo"), py::arg("hi"), py::arg("include_lo") = true, py::arg("include_hi") = false);

  // oscillatory
  m.def("oscillatory_integral", [](const Curve& curve, double lambda, const Vec3& xi) {
    return oscillatory_integral(curve, Amplitude::constant(1.0), lambda, xi);
  }, py::arg("curve"), py::arg("lam"), py::arg("xi"));
  m.def("decay_fit", [](const Curve& curve, const std::vector<double>& lambdas, int xi_samples, std::uint64_t seed) {
    const DecayFit f = decay_fit(curve, lambdas, xi_samples, seed);
    py::dict d;
    d["lambdas"] = f.lambdas;
    d["max_abs"] = f.max_abs;
    d["exponent"] = f.exponent;
    return d;
  }, py::arg("curve"), py::arg("lambdas"), py::arg("xi_samples"), py::arg("seed"));

  // harness
  m.def("run_experiment", [](const std::string& config_text, const std::string& experiment, unsigned threads,
                             const std::string& timestamp) {
    ExperimentConfig c = parse_config(config_text);
    if (!experiment.empty()) c.experiment = experiment;
    std::vector<std::string> out;
    py::gil_scoped_release release;
    for (const auto& r : run_experiment(c, {threads, timestamp})) out.push_back(to_json(r));
    return out;
  }, py::arg("config_text"), py::arg("experiment") = "", py::arg("threads") = 1, py::arg("timestamp") = "",
     "Run an experiment from config text; returns one JSON string per record.");
}
