#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kato/gfunction.hpp"
#include "kato/kernel.hpp"
#include "kato/lowerbound.hpp"
#include "kato/pipeline.hpp"
#include "kato/rounding.hpp"
#include "kato/verify.hpp"

namespace py = pybind11;

namespace {

template <class J>
py::object to_python(const J& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

kato::gfunction::CutoffConfig make_config(double n, int d, std::optional<double> rho,
                                          std::optional<int> t) {
  auto c = kato::gfunction::CutoffConfig::defaults_for(n, d);
  if (rho) c.rho = *rho;
  if (t) c.t = *t;
  c.validate();
  return c;
}

std::vector<kato::lowerbound::TrialParams> read_params(const py::object& params) {
  std::vector<kato::lowerbound::TrialParams> out;
  if (params.is_none()) return out;
  const auto j = from_python(params);
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(kato::lowerbound::params_from_json(e));
  } else {
    out.push_back(kato::lowerbound::params_from_json(j));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Upper and lower bounds for the sharp Kato constant on the torus";

  py::register_exception<kato::gfunction::TailDominatesError>(m, "TailDominatesError",
                                                             PyExc_RuntimeError);

  m.def(
      "upper",
      [](double n, int d, std::optional<double> rho, std::optional<int> t, unsigned threads,
         bool accept_tail_sup) {
        kato::gfunction::SupSearchOptions o;
        o.threads = threads;
        o.accept_tail_sup = accept_tail_sup;
        const auto config = make_config(n, d, rho, t);
        py::gil_scoped_release release;
        const auto r = kato::pipeline::compute_upper(config, o);
        py::gil_scoped_acquire acquire;
        return to_python(kato::pipeline::to_json(r));
      },
      py::arg("n"), py::arg("d") = 3, py::arg("rho") = py::none(), py::arg("t") = py::none(),
      py::arg("threads") = 0, py::arg("accept_tail_sup") = false,
      "Certified upper bound report (the JSON of `kato_bounds upper`) as a dict.");

  m.def(
      "lower",
      [](double n, bool seed_paper, const py::object& params, int restarts, std::uint64_t seed,
         unsigned threads) {
        auto seeds = read_params(params);
        if (seed_paper) seeds.insert(seeds.begin(), kato::lowerbound::known_optimum_params(n));
        if (seeds.empty()) throw std::invalid_argument("give params or seed_paper=True");
        kato::lowerbound::LowerOptions o;
        o.restarts = restarts;
        o.seed = seed;
        o.threads = threads;
        return to_python(kato::pipeline::to_json(kato::pipeline::compute_lower(n, seeds, o)));
      },
      py::arg("n"), py::arg("seed_paper") = true, py::arg("params") = py::none(),
      py::arg("restarts") = 20, py::arg("seed") = 1, py::arg("threads") = 0,
      "Optimized lower bound report as a dict. params is a dict or a list of dicts.");

  m.def(
      "table",
      [](std::vector<double> ns, bool quick, int restarts, unsigned threads) {
        kato::pipeline::TableOptions o;
        o.ns = std::move(ns);
        o.quick = quick;
        o.restarts = restarts;
        o.threads = threads;
        return to_python(kato::pipeline::to_json(kato::pipeline::compute_table(o)));
      },
      py::arg("ns") = std::vector<double>{3.0, 4.0, 5.0, 10.0}, py::arg("quick") = false,
      py::arg("restarts") = 20, py::arg("threads") = 0);

  m.def(
      "verify",
      [](const std::string& suite, std::size_t samples, std::uint64_t seed, unsigned threads) {
        kato::verify::VerifyOptions o;
        o.suite = suite;
        o.samples = samples;
        o.seed = seed;
        o.threads = threads;
        return to_python(kato::verify::to_json(kato::verify::run(o)));
      },
      py::arg("suite") = "all", py::arg("samples") = 1000, py::arg("seed") = 7,
      py::arg("threads") = 0);

  m.def(
      "gamma",
      [](const std::vector<int>& k, double n, std::optional<double> rho, std::optional<int> t) {
        const auto config = make_config(n, static_cast<int>(k.size()), rho, t);
        return kato::gfunction::gamma(config, kato::WaveVector(k));
      },
      py::arg("k"), py::arg("n"), py::arg("rho") = py::none(), py::arg("t") = py::none(),
      "Gamma_n(k), the finite part of the lattice function below the cutoff.");

  m.def(
      "c_max",
      [](double n) {
        const auto r = kato::kernel::c_max(n);
        return py::make_tuple(r.max_value, r.argmax);
      },
      py::arg("n"), "(C_n, argmax) of the difference kernel.");

  m.def(
      "remainder_extrema",
      [](double n, int t) {
        const auto r = kato::kernel::remainder_extrema(n, t);
        py::dict d;
        d["lambda"] = r.lambda;
        d["Lambda"] = r.Lambda;
        d["mu"] = r.mu;
        d["M"] = r.M;
        return d;
      },
      py::arg("n"), py::arg("t"));

  m.def(
      "g_lower",
      [](const py::object& params, double n) {
        return kato::lowerbound::planar_g_lower(kato::lowerbound::params_from_json(from_python(params)),
                                                n);
      },
      py::arg("params"), py::arg("n"), "Ratio of the planar trial family at the given parameters.");

  m.def(
      "known_optimum_params",
      [](double n) { return to_python(kato::lowerbound::params_to_json(kato::lowerbound::known_optimum_params(n))); },
      py::arg("n"));

  m.def("round_up_sig", &kato::round_up_sig, py::arg("x"), py::arg("digits") = 3);
  m.def("round_down_sig", &kato::round_down_sig, py::arg("x"), py::arg("digits") = 3);
}
