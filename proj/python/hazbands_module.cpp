// Python bindings for the main operations: data ingestion, posterior
// sampling, band construction, classical estimators, the Haar diagnostics,
// and the replication study.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hazbands/band_io.hpp"
#include "hazbands/frequentist.hpp"
#include "hazbands/haar.hpp"
#include "hazbands/hazard_model.hpp"
#include "hazbands/posterior_bands.hpp"
#include "hazbands/priors.hpp"
#include "hazbands/sampler.hpp"
#include "hazbands/sim_harness.hpp"
#include "hazbands/survival_data.hpp"

namespace py = pybind11;
using namespace hazbands;

namespace {

TruthHazard truth_by_name(const std::string& name) {
  if (name == "smooth") return TruthHazard::smooth();
  if (name == "piecewise-linear") return TruthHazard::piecewise_linear();
  throw InvalidParameter("unknown truth '" + name + "' (smooth|piecewise-linear)");
}

CensoringModel censoring_by_name(const std::string& name) {
  if (name == "adm") return CensoringModel::AdminOnly;
  if (name == "adm-unif") return CensoringModel::AdminPlusUniform;
  throw InvalidParameter("unknown censoring '" + name + "' (adm|adm-unif)");
}

CurveTarget target_by_name(const std::string& name) {
  if (name == "hazard") return CurveTarget::Hazard;
  if (name == "cumhaz") return CurveTarget::CumHaz;
  if (name == "survival") return CurveTarget::Survival;
  throw InvalidParameter("unknown target '" + name + "' (hazard|cumhaz|survival)");
}

py::dict band_to_dict(const Band& band) {
  py::dict d;
  d["target"] = target_name(band.target);
  d["grid"] = band.grid;
  d["center"] = band.center;
  d["lower"] = band.lower;
  d["upper"] = band.upper;
  d["level"] = band.level;
  d["radius"] = band.radius;
  d["area"] = band_area(band);
  return d;
}

}  // namespace

PYBIND11_MODULE(hazbands, m) {
  m.doc() = "Bayesian nonparametric survival analysis with piecewise-constant hazards";

  py::register_exception<Error>(m, "HazbandsError");

  py::class_<SurvivalDataset>(m, "SurvivalDataset")
      .def_property_readonly("n", &SurvivalDataset::n)
      .def_property_readonly("events", &SurvivalDataset::event_count)
      .def_readonly("horizon", &SurvivalDataset::horizon)
      .def("times",
           [](const SurvivalDataset& ds) {
             std::vector<double> t(ds.n());
             for (std::size_t i = 0; i < ds.n(); ++i) t[i] = ds.records[i].time;
             return t;
           })
      .def("statuses", [](const SurvivalDataset& ds) {
        std::vector<int> s(ds.n());
        for (std::size_t i = 0; i < ds.n(); ++i) s[i] = ds.records[i].status;
        return s;
      });

  py::class_<IntervalSummary>(m, "IntervalSummary")
      .def_property_readonly("k", &IntervalSummary::K)
      .def_readonly("d", &IntervalSummary::d)
      .def_readonly("T", &IntervalSummary::T);

  py::class_<PriorSpec>(m, "PriorSpec")
      .def_static("indep_gamma", &PriorSpec::indep_gamma, py::arg("shape"), py::arg("rate"))
      .def_static("dep_gamma", &PriorSpec::dep_gamma, py::arg("alpha0"), py::arg("beta0"),
                  py::arg("alpha"))
      .def_static("indep_log_normal", &PriorSpec::indep_log_normal, py::arg("mu0"),
                  py::arg("sigma0"))
      .def_static("dep_log_normal", &PriorSpec::dep_log_normal, py::arg("mu0"), py::arg("sigma0"),
                  py::arg("sigma"))
      .def_static("indep_log_laplace", &PriorSpec::indep_log_laplace, py::arg("mu0"),
                  py::arg("theta0"))
      .def_static("dep_log_laplace", &PriorSpec::dep_log_laplace, py::arg("mu0"),
                  py::arg("theta0"), py::arg("sigma"));

  py::class_<PosteriorChain>(m, "PosteriorChain")
      .def_property_readonly("k", &PosteriorChain::K)
      .def_property_readonly("n_draws", &PosteriorChain::n_draws)
      .def_readonly("draws", &PosteriorChain::draws)
      .def_readonly("acceptance_rates", &PosteriorChain::acceptance_rates);

  m.def(
      "load_dataset",
      [](const std::vector<double>& times, const std::vector<int>& statuses, double horizon) {
        return load_dataset(times, statuses,
                            horizon > 0.0 ? std::optional<double>(horizon) : std::nullopt);
      },
      py::arg("times"), py::arg("statuses"), py::arg("horizon") = 0.0);
  m.def(
      "load_csv",
      [](const std::string& path, const std::string& time_col, const std::string& status_col,
         double horizon) {
        return load_dataset(read_survival_csv(path, time_col, status_col),
                            horizon > 0.0 ? std::optional<double>(horizon) : std::nullopt);
      },
      py::arg("path"), py::arg("time_col") = "time", py::arg("status_col") = "status",
      py::arg("horizon") = 0.0);
  m.def("select_interval_count", &select_interval_count, py::arg("n"), py::arg("gamma"));
  m.def(
      "augment",
      [](const SurvivalDataset& ds, std::size_t k) { return augment(ds, IntervalGrid::regular(k)); },
      py::arg("dataset"), py::arg("k"));

  m.def(
      "run_chain",
      [](const PriorSpec& prior, const IntervalSummary& summary, std::size_t n_draws,
         std::size_t burn_in, std::uint64_t seed) {
        ChainConfig cfg;
        cfg.n_draws = n_draws;
        cfg.burn_in = burn_in;
        cfg.seed = seed;
        return run_chain(prior, summary, cfg);
      },
      py::arg("prior"), py::arg("summary"), py::arg("n_draws") = 10000,
      py::arg("burn_in") = 1000, py::arg("seed") = 0);
  m.def(
      "log_likelihood",
      [](const std::vector<double>& heights, const IntervalSummary& summary) {
        return log_likelihood(heights, summary);
      },
      py::arg("heights"), py::arg("summary"));

  m.def(
      "credible_band",
      [](const PosteriorChain& chain, const std::string& target, double level) {
        const auto grid = evaluation_grid(chain.grid);
        return band_to_dict(credible_band(chain, target_by_name(target), grid, level));
      },
      py::arg("chain"), py::arg("target") = "survival", py::arg("level") = 0.95);
  m.def("median_draws", [](const PosteriorChain& chain) {
    const MedianDraws med = median_draws(chain);
    return py::make_tuple(med.medians, med.beyond_horizon);
  });

  m.def(
      "nelson_aalen",
      [](const SurvivalDataset& ds) {
        const auto est = nelson_aalen(ds);
        py::dict d;
        d["jump_times"] = est.jump_times;
        d["values"] = est.values;
        d["variance"] = est.variance;
        return d;
      },
      py::arg("dataset"));
  m.def(
      "kaplan_meier",
      [](const SurvivalDataset& ds) {
        const auto est = kaplan_meier(ds);
        py::dict d;
        d["jump_times"] = est.jump_times;
        d["values"] = est.values;
        d["variance"] = est.variance;
        return d;
      },
      py::arg("dataset"));
  m.def(
      "hall_wellner_band",
      [](const SurvivalDataset& ds, double level, std::uint64_t seed) {
        BridgeConfig cfg;
        cfg.seed = seed;
        return band_to_dict(hall_wellner_band(ds, level, evaluation_grid(), cfg));
      },
      py::arg("dataset"), py::arg("level") = 0.95, py::arg("seed") = 24601);
  m.def(
      "log_ep_band",
      [](const SurvivalDataset& ds, double level, std::uint64_t seed) {
        BridgeConfig cfg;
        cfg.seed = seed;
        return band_to_dict(log_ep_band(ds, level, evaluation_grid(), cfg));
      },
      py::arg("dataset"), py::arg("level") = 0.95, py::arg("seed") = 24601);
  m.def(
      "pointwise_band",
      [](const SurvivalDataset& ds, const std::string& estimator, double level) {
        const StepEstimate est =
            estimator == "nelson-aalen" ? nelson_aalen(ds) : kaplan_meier(ds);
        return band_to_dict(pointwise_intervals(est, level, evaluation_grid()));
      },
      py::arg("dataset"), py::arg("estimator") = "kaplan-meier", py::arg("level") = 0.95);

  m.def(
      "sample_prior",
      [](const PriorSpec& spec, std::size_t k, std::uint64_t seed) {
        return sample_prior(spec, k, seed).heights;
      },
      py::arg("prior"), py::arg("k"), py::arg("seed"));
  m.def(
      "log_prior_density",
      [](const PriorSpec& spec, const std::vector<double>& heights) {
        return log_prior_density(spec, heights);
      },
      py::arg("prior"), py::arg("heights"));
  m.def(
      "log_laplace_link",
      [](double sigma) {
        const auto link = log_laplace_link(sigma);
        return py::make_tuple(link.shift_factor, link.rate);
      },
      py::arg("sigma"));
  m.def(
      "simulate_limit_sup_quantile",
      [](const std::string& truth, const std::string& cens, double level, std::size_t n_paths,
         std::size_t grid_size, std::uint64_t seed) {
        return simulate_limit_sup_quantile(truth_by_name(truth), censoring_by_name(cens), level,
                                           n_paths, grid_size, seed);
      },
      py::arg("truth"), py::arg("censoring"), py::arg("level") = 0.95,
      py::arg("n_paths") = 100000, py::arg("grid_size") = 2048, py::arg("seed") = 1);

  m.def("to_wavelet", [](const std::vector<double>& h) { return to_wavelet(h); },
        py::arg("heights"));
  m.def("to_heights", [](const std::vector<double>& c) { return to_heights(c); },
        py::arg("coeffs"));
  m.def(
      "ell_infty_distance",
      [](const std::vector<double>& f, const std::vector<double>& g) {
        return ell_infty_distance(f, g);
      },
      py::arg("coeffs_f"), py::arg("coeffs_g"));

  m.def(
      "true_hazard",
      [](const std::string& truth, double t) { return truth_by_name(truth).hazard(t); },
      py::arg("truth"), py::arg("t"));
  m.def(
      "true_cumhaz",
      [](const std::string& truth, double t) { return truth_by_name(truth).cumulative(t); },
      py::arg("truth"), py::arg("t"));
  m.def(
      "true_survival",
      [](const std::string& truth, double t) { return truth_by_name(truth).survival(t); },
      py::arg("truth"), py::arg("t"));
  m.def(
      "median_bvm_variance",
      [](const std::string& truth, const std::string& cens) {
        return median_bvm_variance(truth_by_name(truth), censoring_by_name(cens));
      },
      py::arg("truth"), py::arg("censoring"));

  m.def(
      "generate_dataset",
      [](const std::string& truth, const std::string& cens, std::size_t n, std::uint64_t seed) {
        RngStream rng(seed);
        return generate_dataset(truth_by_name(truth), censoring_by_name(cens), n, rng);
      },
      py::arg("truth"), py::arg("censoring"), py::arg("n"), py::arg("seed"));
  m.def(
      "run_replication_study",
      [](const std::string& truth, const std::string& cens, std::size_t n, double gamma,
         const PriorSpec& prior, std::size_t replicates, std::size_t n_draws, std::size_t burn_in,
         std::uint64_t seed, double level) {
        Scenario sc;
        sc.truth = truth_by_name(truth);
        sc.censoring = censoring_by_name(cens);
        sc.n = n;
        sc.gamma = gamma;
        sc.prior = prior;
        sc.replicates = replicates;
        sc.n_draws = n_draws;
        sc.burn_in = burn_in;
        sc.seed = seed;
        sc.level = level;
        const CoverageReport rep = run_replication_study(sc);
        py::module_ json = py::module_::import("json");
        return json.attr("loads")(report_json(rep));
      },
      py::arg("truth"), py::arg("censoring"), py::arg("n"), py::arg("gamma"), py::arg("prior"),
      py::arg("replicates"), py::arg("n_draws") = 5000, py::arg("burn_in") = 500,
      py::arg("seed") = 0, py::arg("level") = 0.95);
}
