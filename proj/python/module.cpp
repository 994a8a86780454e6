#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "hawkesmf/grid.hpp"
#include "hawkesmf/population.hpp"
#include "hawkesmf/sde.hpp"
#include "hawkesmf/sim.hpp"
#include "hawkesmf/stats.hpp"
#include "hawkesmf/volterra.hpp"

namespace py = pybind11;

namespace {

using namespace hawkesmf;

Regime regime_from_string(const std::string& name) {
  if (name == "subcritical") return Regime::Subcritical;
  if (name == "critical") return Regime::Critical;
  throw std::invalid_argument("regime must be 'subcritical' or 'critical'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "finite-population simulation and mean-field limit solvers for signed "
      "interacting point processes";

  py::class_<KernelSpec>(m, "Kernel")
      .def_static("exponential", &KernelSpec::exponential, py::arg("rate"),
                  py::arg("amplitude"))
      .def_static("erlang", &KernelSpec::erlang, py::arg("rate"),
                  py::arg("amplitude"))
      .def_static("zero", &KernelSpec::zero)
      .def("value", &KernelSpec::value, py::arg("t"))
      .def("derivative", &KernelSpec::derivative, py::arg("t"))
      .def("integral", &KernelSpec::integral, py::arg("t"))
      .def("squared_integral", &KernelSpec::squared_integral, py::arg("t"));

  py::class_<TransferSpec>(m, "Transfer")
      .def_static("constant", &TransferSpec::constant, py::arg("value"))
      .def_static("sigmoid", &TransferSpec::sigmoid, py::arg("hmax"),
                  py::arg("slope"), py::arg("center"))
      .def("value", &TransferSpec::value, py::arg("x"))
      .def("derivative", &TransferSpec::derivative, py::arg("x"))
      .def("bound", &TransferSpec::bound);

  py::class_<PopulationConfig>(m, "Config")
      .def(py::init([](std::uint32_t n, double p, const std::string& regime,
                       const KernelSpec& kernel, const TransferSpec& transfer,
                       double horizon, std::uint64_t seed) {
             PopulationConfig config;
             config.n = n;
             config.p = p;
             config.regime = regime_from_string(regime);
             config.kernel = kernel;
             config.transfer = transfer;
             config.horizon = horizon;
             config.seed = seed;
             config.validate();
             return config;
           }),
           py::arg("n"), py::arg("p"), py::arg("regime"), py::arg("kernel"),
           py::arg("transfer"), py::arg("horizon"), py::arg("seed") = 0)
      .def_readonly("n", &PopulationConfig::n)
      .def_readonly("p", &PopulationConfig::p)
      .def_readonly("horizon", &PopulationConfig::horizon)
      .def_readonly("seed", &PopulationConfig::seed)
      .def("theta", &PopulationConfig::theta);

  py::class_<GridPath>(m, "GridPath")
      .def_readonly("dt", &GridPath::dt)
      .def_readonly("values", &GridPath::values)
      .def("time", &GridPath::time, py::arg("k"))
      .def("__len__", [](const GridPath& p) { return p.size(); });

  py::class_<EventData>(m, "Events")
      .def_property_readonly("signs",
                             [](const EventData& e) { return e.signs.signs; })
      .def("node_times",
           [](const EventData& e, std::uint32_t node) {
             if (node >= e.times_by_node.size())
               throw std::out_of_range("node out of range");
             return e.times_by_node[node];
           },
           py::arg("node"))
      .def("total_count", &EventData::total_count);

  py::class_<BrownianIncrements>(m, "BrownianIncrements")
      .def_static(
          "generate",
          [](double horizon, double dt, std::uint64_t seed) {
            RngStream stream(seed);
            return BrownianIncrements::generate(horizon, dt, stream);
          },
          py::arg("horizon"), py::arg("dt"), py::arg("seed"))
      .def_readonly("dt", &BrownianIncrements::dt)
      .def_readonly("increments", &BrownianIncrements::increments);

  m.def(
      "draw_signs",
      [](const PopulationConfig& config) {
        auto stream =
            make_stream(config.seed, config.n, 0, StreamPurpose::Signs);
        return draw_signs(config, stream).signs;
      },
      py::arg("config"));

  m.def(
      "sign_statistic",
      [](const std::vector<int>& signs, double p) {
        SignAssignment assignment;
        assignment.signs = signs;
        return sign_statistic(assignment, p);
      },
      py::arg("signs"), py::arg("p"));

  m.def("simulate",
        py::overload_cast<const PopulationConfig&>(&simulate),
        py::arg("config"));

  m.def("compute_in", &compute_in, py::arg("events"), py::arg("dt"));
  m.def("compute_in_at", &compute_in_at, py::arg("events"), py::arg("t"));
  m.def("compute_jn", &compute_jn, py::arg("events"), py::arg("dt"));
  m.def("compensator_path", &compensator_path, py::arg("events"),
        py::arg("in_path"));

  m.def(
      "solve_volterra",
      [](const KernelSpec& kernel, const TransferSpec& transfer, double p,
         double horizon, double dt) {
        return solve_volterra({kernel, transfer, p, horizon, dt});
      },
      py::arg("kernel"), py::arg("transfer"), py::arg("p"), py::arg("horizon"),
      py::arg("dt") = 1e-3);

  m.def(
      "solve_ode",
      [](const KernelSpec& kernel, const TransferSpec& transfer, double p,
         double horizon, double dt) {
        return solve_ode_oracle({kernel, transfer, p, horizon, dt});
      },
      py::arg("kernel"), py::arg("transfer"), py::arg("p"), py::arg("horizon"),
      py::arg("dt") = 1e-3);

  m.def(
      "solve_stochastic_convolution",
      [](const KernelSpec& kernel, const TransferSpec& transfer, double w,
         double i0, double horizon, double dt, std::uint64_t seed) {
        RngStream stream(seed);
        const auto noise = BrownianIncrements::generate(horizon, dt, stream);
        SdeLimitProblem problem{kernel, transfer, w, i0, horizon, dt};
        return solve_stochastic_convolution(problem, noise);
      },
      py::arg("kernel"), py::arg("transfer"), py::arg("w"), py::arg("i0"),
      py::arg("horizon"), py::arg("dt"), py::arg("seed"));

  m.def(
      "markov_sde",
      [](const KernelSpec& kernel, const TransferSpec& transfer, double w,
         double i0, double horizon, double dt, std::uint64_t seed) {
        RngStream stream(seed);
        const auto noise = BrownianIncrements::generate(horizon, dt, stream);
        SdeLimitProblem problem{kernel, transfer, w, i0, horizon, dt};
        return markov_sde_oracle(problem, noise);
      },
      py::arg("kernel"), py::arg("transfer"), py::arg("w"), py::arg("i0"),
      py::arg("horizon"), py::arg("dt"), py::arg("seed"));

  m.def(
      "solve_fluctuation",
      [](const KernelSpec& kernel, const TransferSpec& transfer, double p,
         const GridPath& limit_path, double w, double horizon, double dt,
         std::uint64_t seed) {
        RngStream stream(seed);
        const auto noise = BrownianIncrements::generate(horizon, dt, stream);
        FluctuationProblem problem;
        problem.kernel = kernel;
        problem.transfer = transfer;
        problem.p = p;
        problem.limit_path = limit_path;
        problem.w = w;
        problem.horizon = horizon;
        problem.dt = dt;
        const auto paths = solve_fluctuation(problem, noise);
        return py::make_tuple(paths.k, paths.g);
      },
      py::arg("kernel"), py::arg("transfer"), py::arg("p"),
      py::arg("limit_path"), py::arg("w"), py::arg("horizon"), py::arg("dt"),
      py::arg("seed"));

  m.def("ks_two_sample", &ks_two_sample, py::arg("a"), py::arg("b"));

  m.def(
      "fit_loglog_slope",
      [](const std::vector<std::pair<double, double>>& pts) {
        const auto fit = fit_loglog_slope(pts);
        return py::make_tuple(fit.slope, fit.intercept, fit.r2);
      },
      py::arg("points"));

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
