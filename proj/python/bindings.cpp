#include <optional>
#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnet/cli.hpp"
#include "qnet/cost_model.hpp"
#include "qnet/ghz_protocol.hpp"
#include "qnet/montecarlo.hpp"

namespace py = pybind11;
using namespace qnet;

namespace {

InputKind parse_kind(const std::string& kind) {
  if (kind == "disentangled") return InputKind::disentangled;
  if (kind == "entangled") return InputKind::entangled;
  throw py::value_error("kind must be 'disentangled' or 'entangled'");
}

Scenario make_scenario(const std::string& kind, int n, double phi, double phi_ref) {
  return Scenario{parse_kind(kind), n, phi, phi_ref};
}

double ghz_fidelity(int n, std::optional<double> pair_fidelity, std::uint64_t seed) {
  if (pair_fidelity) {
    return fidelity(distribute_werner(n, *pair_fidelity, 0.0), prepare_ghz_ideal(n, 0.0));
  }
  Rng rng(seed);
  return run_distribution(n, PairSource::ideal(), 0.0, rng).fidelity_vs_ideal;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed phase-estimation cost model and simulator";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<CostParams>(m, "CostParams")
      .def(py::init([](double X, double Y, double Z, double U, double b) {
             CostParams p{X, Y, Z, U, b};
             p.validate();
             return p;
           }),
           py::arg("X") = 100.0, py::arg("Y") = 10.0, py::arg("Z") = 1.0, py::arg("U") = 0.0,
           py::arg("b") = 0.0)
      .def_readwrite("X", &CostParams::X)
      .def_readwrite("Y", &CostParams::Y)
      .def_readwrite("Z", &CostParams::Z)
      .def_readwrite("U", &CostParams::U)
      .def_readwrite("b", &CostParams::b);

  py::class_<SchemeParams>(m, "SchemeParams")
      .def(py::init([](int scheme_id, double F0, double a, double U, double b) {
             SchemeParams p{scheme_id, F0, a, U, b};
             p.validate();
             return p;
           }),
           py::arg("scheme_id") = 2, py::arg("F0") = 0.95, py::arg("a") = 0.5,
           py::arg("U") = 0.0, py::arg("b") = 0.0)
      .def_readwrite("scheme_id", &SchemeParams::scheme_id)
      .def_readwrite("F0", &SchemeParams::F0)
      .def_readwrite("a", &SchemeParams::a)
      .def_readwrite("U", &SchemeParams::U)
      .def_readwrite("b", &SchemeParams::b);

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init([](double x_n, double F, double g, double t_c) {
             return NoiseSpec{x_n, F, g, t_c};
           }),
           py::arg("x_n") = 1.0, py::arg("F") = 1.0, py::arg("g") = 0.0, py::arg("t_c") = 0.0)
      .def_readwrite("x_n", &NoiseSpec::x_n)
      .def_readwrite("F", &NoiseSpec::F)
      .def_readwrite("g", &NoiseSpec::g)
      .def_readwrite("t_c", &NoiseSpec::t_c);

  m.def(
      "p_success",
      [](const std::string& kind, int n, double phi, double phi_ref, const NoiseSpec& noise) {
        return p_success(make_scenario(kind, n, phi, phi_ref), noise);
      },
      py::arg("kind"), py::arg("n"), py::arg("phi"), py::arg("phi_ref"),
      py::arg("noise") = NoiseSpec{});
  m.def(
      "simulate_success_probability",
      [](const std::string& kind, int n, double phi, double phi_ref, const NoiseSpec& noise) {
        return simulate_success_probability(make_scenario(kind, n, phi, phi_ref), noise);
      },
      py::arg("kind"), py::arg("n"), py::arg("phi"), py::arg("phi_ref"),
      py::arg("noise") = NoiseSpec{});
  m.def("precision", &precision, py::arg("p"), py::arg("dp_dphi"), py::arg("repetitions"));
  m.def("r1_required", &r1_required, py::arg("n"), py::arg("epsilon"), py::arg("g") = 0.0,
        py::arg("t_c") = 0.0);
  m.def("r2_required", &r2_required, py::arg("n"), py::arg("epsilon"), py::arg("x_n") = 1.0,
        py::arg("F") = 1.0, py::arg("g") = 0.0, py::arg("t_c") = 0.0);

  m.def("steps_for_target", &steps_for_target, py::arg("scheme"), py::arg("target"));
  m.def("compose_fidelity", &compose_fidelity, py::arg("pair_fidelity"), py::arg("n"));

  m.def("ratio_ideal", &ratio_ideal, py::arg("n"), py::arg("params"));
  m.def("n_min_approx", &n_min_approx, py::arg("params"));
  m.def("ratio_noisy", &ratio_noisy, py::arg("n"), py::arg("params"), py::arg("scheme"),
        py::arg("steps"));
  m.def("ratio_dephased", &ratio_dephased, py::arg("n"), py::arg("params"), py::arg("g"),
        py::arg("t_c"));
  m.def(
      "scan_window",
      [](const CostParams& params, double epsilon, int n_from, int n_to, double g, double t_c,
         std::optional<SchemeParams> scheme, std::optional<int> steps,
         std::optional<double> target_fidelity) {
        ScanConfig c;
        c.epsilon = epsilon;
        c.n_from = n_from;
        c.n_to = n_to;
        c.g = g;
        c.t_c = t_c;
        c.scheme = scheme;
        c.steps = steps;
        c.target_fidelity = target_fidelity;
        const ScanResult r = scan_window(params, c);
        py::list rows;
        for (const ScanRow& row : r.rows) {
          rows.append(py::make_tuple(row.n, row.R1, row.R2, row.P2, row.C1, row.C2, row.ratio));
        }
        py::dict out;
        out["rows"] = rows;
        out["n_min"] = r.window.n_min;
        out["n_max"] = r.window.n_max;
        out["open_at_bound"] = r.window.open_at_bound;
        out["steps"] = r.steps;
        return out;
      },
      py::arg("params"), py::arg("epsilon"), py::arg("n_from"), py::arg("n_to"),
      py::arg("g") = 0.0, py::arg("t_c") = 0.0, py::arg("scheme") = std::nullopt,
      py::arg("steps") = std::nullopt, py::arg("target_fidelity") = std::nullopt);

  m.def("ghz_fidelity", &ghz_fidelity, py::arg("n"), py::arg("pair_fidelity") = std::nullopt,
        py::arg("seed") = 0);

  m.def(
      "empirical_precision",
      [](const std::string& kind, int n, double phi, int repetitions, int replications,
         std::uint64_t seed, const NoiseSpec& noise) {
        const PrecisionReport r = empirical_precision(make_scenario(kind, n, phi, 0.0), noise,
                                                      repetitions, replications, seed);
        py::dict out;
        out["replications"] = r.replications;
        out["empirical_sigma"] = r.empirical_sigma;
        out["analytic_epsilon"] = r.analytic_epsilon;
        out["relative_gap"] = r.relative_gap;
        out["mean_estimate"] = r.mean_estimate;
        return out;
      },
      py::arg("kind"), py::arg("n"), py::arg("phi"), py::arg("repetitions"),
      py::arg("replications"), py::arg("seed"), py::arg("noise") = NoiseSpec{});

  m.def(
      "run_command",
      [](const std::string& command, const std::string& config_text, std::optional<std::uint64_t> seed) {
        RunConfig config = parse_config(config_text);
        if (seed) config.seed = *seed;
        std::ostringstream out, err;
        const int code = run_command(command, config, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("command"), py::arg("config_text"), py::arg("seed") = std::nullopt,
      "Runs scan, simulate or validate on configuration text; returns (exit_code, csv, stderr).");
}
