// hazbands: batch front door for piecewise-constant-hazard posterior
// inference on right-censored data. Subcommands: fit, simulate, frequentist,
// haar. Curves come out as CSV, metadata as JSON.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hazbands/band_io.hpp"
#include "hazbands/frequentist.hpp"
#include "hazbands/haar.hpp"
#include "hazbands/posterior_bands.hpp"
#include "hazbands/priors.hpp"
#include "hazbands/sampler.hpp"
#include "hazbands/sim_harness.hpp"
#include "hazbands/survival_data.hpp"

namespace fs = std::filesystem;
using namespace hazbands;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct PriorFlags {
  std::string family = "dep-gamma";
  double alpha0 = 1.5, beta0 = 1.0, alpha = 1.0, beta = 1.0;
  double mu0 = 0.0, sigma0 = 1.0, theta0 = 3.0, sigma = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--prior", family,
                    "prior family: dep-gamma|indep-gamma|dep-lognormal|indep-lognormal|"
                    "dep-loglaplace|indep-loglaplace")
        ->capture_default_str();
    cmd->add_option("--alpha0", alpha0, "dependent-gamma first-interval shape")
        ->capture_default_str();
    cmd->add_option("--beta0", beta0, "dependent-gamma first-interval rate")->capture_default_str();
    cmd->add_option("--alpha", alpha,
                    "gamma shape: autoregressive coupling (dependent) or marginal (independent)")
        ->capture_default_str();
    cmd->add_option("--beta", beta, "independent-gamma rate")->capture_default_str();
    cmd->add_option("--mu0", mu0, "log-normal/log-Laplace base location")->capture_default_str();
    cmd->add_option("--sigma0", sigma0, "log-normal base scale")->capture_default_str();
    cmd->add_option("--theta0", theta0, "log-Laplace base rate (> 2)")->capture_default_str();
    cmd->add_option("--sigma", sigma, "dependent log-normal/log-Laplace coupling scale")
        ->capture_default_str();
  }

  PriorSpec build() const {
    switch (family_from_name(family)) {
      case PriorFamily::IndepGamma: return PriorSpec::indep_gamma(alpha, beta);
      case PriorFamily::DepGamma: return PriorSpec::dep_gamma(alpha0, beta0, alpha);
      case PriorFamily::IndepLogNormal: return PriorSpec::indep_log_normal(mu0, sigma0);
      case PriorFamily::DepLogNormal: return PriorSpec::dep_log_normal(mu0, sigma0, sigma);
      case PriorFamily::IndepLogLaplace: return PriorSpec::indep_log_laplace(mu0, theta0);
      case PriorFamily::DepLogLaplace: return PriorSpec::dep_log_laplace(mu0, theta0, sigma);
    }
    throw InvalidConfig("unknown prior family");
  }
};

void ensure_out_dir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error("cannot create output directory: " + out);
}

// Flat key=value config support: entries become --key=value tokens appended
// after the command line, skipping keys already given as flags (flags win).
// Unknown keys then fail subcommand parsing, which rejects them.
std::vector<std::string> merge_config_args(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw InvalidConfig("cannot read config file: " + config_path);
  std::vector<std::string> merged = args;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("config line " + std::to_string(line_no) + " is not key=value");
    std::string key = line.substr(b, eq - b);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = line.substr(eq + 1);
    const std::size_t vb = value.find_first_not_of(" \t");
    const std::size_t ve = value.find_last_not_of(" \t\r");
    value = vb == std::string::npos ? std::string() : value.substr(vb, ve - vb + 1);
    if (key.empty()) throw InvalidConfig("config line " + std::to_string(line_no) + " has no key");
    if (key == "config") continue;
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (!given) merged.push_back(flag + "=" + value);
  }
  return merged;
}

nlohmann::json quantiles_json(std::vector<double> values, double horizon) {
  nlohmann::json j;
  if (values.empty()) return j;
  std::sort(values.begin(), values.end());
  const auto q = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return (values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo])) * horizon;
  };
  for (double p : {0.025, 0.25, 0.5, 0.75, 0.975}) j[std::to_string(p)] = q(p);
  return j;
}

int run_fit(const std::string& input, const std::string& time_col, const std::string& status_col,
            double horizon_flag, const PriorFlags& prior_flags, double gamma, std::size_t k_flag,
            std::size_t draws, std::size_t burnin, std::uint64_t seed, double level,
            const std::string& out, bool export_draws) {
  const auto rows = read_survival_csv(input, time_col, status_col);
  std::optional<double> horizon;
  if (horizon_flag > 0.0) horizon = horizon_flag;
  const SurvivalDataset ds = load_dataset(rows, horizon);

  const std::size_t K = k_flag > 0 ? k_flag : select_interval_count(ds.n(), gamma);
  const IntervalGrid grid = IntervalGrid::regular(K);
  const IntervalSummary summary = augment(ds, grid);
  const PriorSpec prior = prior_flags.build();

  ChainConfig cfg;
  cfg.n_draws = draws;
  cfg.burn_in = burnin;
  cfg.seed = seed;
  const PosteriorChain chain = run_chain(prior, summary, cfg);

  ensure_out_dir(out);
  const std::vector<double> eval = evaluation_grid(grid);
  nlohmann::json bands_json;
  for (CurveTarget target : {CurveTarget::Hazard, CurveTarget::CumHaz, CurveTarget::Survival}) {
    const Band band = credible_band(chain, target, eval, level);
    const std::string stem = out + "/" + target_name(target) + "_band";
    write_band_csv(stem + ".csv", band, ds.horizon);
    write_band_json(stem + ".json", band, "credible");
    bands_json[target_name(target)] = {{"radius", band.radius}, {"area", band_area(band)}};
  }
  if (export_draws) write_draws_csv(out + "/draws.csv", chain, ds.horizon);

  const MedianDraws med = median_draws(chain);
  double med_mean = 0.0;
  for (double m : med.medians) med_mean += m;
  if (!med.medians.empty()) med_mean /= static_cast<double>(med.medians.size());

  nlohmann::json summary_json{
      {"input", input},
      {"n", ds.n()},
      {"events", ds.event_count()},
      {"horizon", ds.horizon},
      {"k", K},
      {"prior", prior_flags.family},
      {"draws", draws},
      {"burn_in", burnin},
      {"seed", seed},
      {"level", level},
      {"acceptance_rates", chain.acceptance_rates},
      {"median_survival",
       {{"mean", med_mean * ds.horizon},
        {"quantiles", quantiles_json(med.medians, ds.horizon)},
        {"beyond_horizon", med.beyond_horizon}}},
      {"bands", bands_json},
  };
  std::ofstream sj(out + "/summary.json");
  if (!sj) throw Error("cannot open output file: " + out + "/summary.json");
  sj << summary_json.dump(2) << '\n';
  std::cout << "fit: n=" << ds.n() << " events=" << ds.event_count() << " K=" << K
            << " -> " << out << "\n";
  return 0;
}

int run_simulate(const std::string& truth_name, const std::string& cens_name, std::size_t n,
                 double gamma, const PriorFlags& prior_flags, std::size_t replicates,
                 std::size_t draws, std::size_t burnin, std::uint64_t seed, double level,
                 const std::string& out) {
  Scenario sc;
  if (truth_name == "smooth")
    sc.truth = TruthHazard::smooth();
  else if (truth_name == "piecewise-linear")
    sc.truth = TruthHazard::piecewise_linear();
  else
    throw InvalidConfig("unknown truth '" + truth_name + "'");
  if (cens_name == "adm")
    sc.censoring = CensoringModel::AdminOnly;
  else if (cens_name == "adm-unif")
    sc.censoring = CensoringModel::AdminPlusUniform;
  else
    throw InvalidConfig("unknown censoring '" + cens_name + "'");
  sc.n = n;
  sc.gamma = gamma;
  sc.prior = prior_flags.build();
  sc.replicates = replicates;
  sc.n_draws = draws;
  sc.burn_in = burnin;
  sc.seed = seed;
  sc.level = level;

  const CoverageReport report = run_replication_study(sc);
  ensure_out_dir(out);
  write_report_json(out + "/report.json", report);
  const std::string label = truth_name + "/" + cens_name + "/n=" + std::to_string(n) +
                            "/gamma=" + std::to_string(gamma) + "/" + prior_flags.family;
  write_report_csv(out + "/table.csv", report, label);

  const auto& surv = report.stats.at(CurveTarget::Survival).at(BandMethod::Credible);
  std::cout << "simulate: " << label << " K=" << report.K
            << " survival credible coverage=" << surv.coverage << " area=" << surv.mean_area
            << " -> " << out << "\n";
  return 0;
}

int run_frequentist(const std::string& input, const std::string& time_col,
                    const std::string& status_col, double horizon_flag, const std::string& method,
                    double level, std::uint64_t seed, const std::string& out) {
  const auto rows = read_survival_csv(input, time_col, status_col);
  std::optional<double> horizon;
  if (horizon_flag > 0.0) horizon = horizon_flag;
  const SurvivalDataset ds = load_dataset(rows, horizon);
  const std::vector<double> eval = evaluation_grid();

  BridgeConfig bridge;
  bridge.seed = seed;

  Band band;
  std::string method_tag = method;
  if (method == "nelson-aalen") {
    band = pointwise_intervals(nelson_aalen(ds), level, eval);
    method_tag = "nelson_aalen";
  } else if (method == "kaplan-meier" || method == "pointwise") {
    band = pointwise_intervals(kaplan_meier(ds), level, eval);
    method_tag = method == "pointwise" ? "pointwise" : "kaplan_meier";
  } else if (method == "hall-wellner") {
    band = hall_wellner_band(ds, level, eval, bridge);
    method_tag = "hall_wellner";
  } else if (method == "log-ep") {
    band = log_ep_band(ds, level, eval, bridge);
    method_tag = "log_ep";
  } else {
    throw InvalidConfig("unknown method '" + method + "'");
  }

  ensure_out_dir(out);
  const std::string stem = out + "/" + method_tag + "_band";
  write_band_csv(stem + ".csv", band, ds.horizon);
  write_band_json(stem + ".json", band, method_tag);
  std::cout << "frequentist: method=" << method_tag << " n=" << ds.n() << " area="
            << band_area(band) << " -> " << out << "\n";
  return 0;
}

int run_haar(int levels, std::uint64_t seed) {
  bool ok = true;
  for (int L = 0; L <= levels; ++L) {
    const HaarTransform w = build_haar_matrix(L);
    const std::size_t dim = w.dim();
    // orthogonality of 2^((L+1)/2) W
    double ortho_err = 0.0;
    const double scale = std::pow(2.0, static_cast<double>(L + 1));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) acc += w.entry(r, j) * w.entry(c, j);
        ortho_err = std::max(ortho_err, std::fabs(scale * acc - (r == c ? 1.0 : 0.0)));
      }
    // round trip on random positive heights
    RngStream rng = RngStream::derive(seed, {static_cast<std::uint64_t>(L)});
    std::vector<double> h(dim);
    for (auto& v : h) v = 0.1 + rng.uniform();
    const auto coeffs = to_wavelet(h);
    const auto back = to_heights(coeffs);
    const auto dense = to_wavelet_dense(w, h);
    double rt_err = 0.0, path_err = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      rt_err = std::max(rt_err, std::fabs(back[j] - h[j]));
      path_err = std::max(path_err, std::fabs(dense[j] - coeffs[j]));
    }
    const bool pass = ortho_err < 1e-12 && rt_err < 1e-12 && path_err < 1e-12;
    ok = ok && pass;
    std::cout << "L=" << L << " dim=" << dim << " ortho_err=" << ortho_err
              << " roundtrip_err=" << rt_err << " dense_vs_fast_err=" << path_err << " "
              << (pass ? "ok" : "FAIL") << "\n";
  }
  if (!ok) throw DomainError("haar self-checks exceeded tolerance");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian nonparametric survival analysis with piecewise-constant hazards:\n"
               "posterior credible bands, classical comparators, and coverage studies."};
  app.require_subcommand(1);

  // fit ----------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "fit a dataset and write credible bands");
  std::string fit_input, fit_time_col = "time", fit_status_col = "status", fit_out = "out";
  double fit_horizon = 0.0, fit_gamma = 0.5, fit_level = 0.95;
  std::size_t fit_k = 0, fit_draws = 10000, fit_burnin = 1000;
  std::uint64_t fit_seed = 1;
  bool fit_export_draws = false;
  PriorFlags fit_prior;
  fit->add_option("input", fit_input, "input CSV with header row")->required();
  fit->add_option("--time-col", fit_time_col, "name of the time column")->capture_default_str();
  fit->add_option("--status-col", fit_status_col, "name of the status column (0/1)")
      ->capture_default_str();
  fit->add_option("--horizon", fit_horizon,
                  "study horizon in original time units (0 = max observed time)")
      ->capture_default_str();
  fit_prior.attach(fit);
  fit->add_option("--gamma", fit_gamma, "interval-rule smoothness parameter")
      ->capture_default_str();
  fit->add_option("--k", fit_k, "explicit interval count (overrides --gamma rule when > 0)")
      ->capture_default_str();
  fit->add_option("--draws", fit_draws, "MCMC draws")->capture_default_str();
  fit->add_option("--burnin", fit_burnin, "burn-in draws discarded")->capture_default_str();
  fit->add_option("--seed", fit_seed, "RNG seed")->capture_default_str();
  fit->add_option("--level", fit_level, "credible level")->capture_default_str();
  fit->add_option("--out", fit_out, "output directory")->capture_default_str();
  fit->add_flag("--export-draws", fit_export_draws, "also write the chain draws as CSV");
  std::string fit_config;
  fit->add_option("--config", fit_config, "flat key=value config file (flags win on conflict)");

  // simulate -------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "run a coverage replication study");
  std::string sim_truth = "smooth", sim_cens = "adm-unif", sim_out = "out";
  std::size_t sim_n = 200, sim_replicates = 200, sim_draws = 5000, sim_burnin = 500;
  double sim_gamma = 0.5, sim_level = 0.95;
  std::uint64_t sim_seed = 1;
  PriorFlags sim_prior;
  sim->add_option("--truth", sim_truth, "truth hazard: smooth|piecewise-linear")
      ->capture_default_str();
  sim->add_option("--cens", sim_cens, "censoring: adm|adm-unif")->capture_default_str();
  sim->add_option("--n", sim_n, "sample size per replicate")->capture_default_str();
  sim->add_option("--gamma", sim_gamma, "interval-rule smoothness parameter")
      ->capture_default_str();
  sim_prior.attach(sim);
  sim->add_option("--replicates", sim_replicates, "number of replicates")->capture_default_str();
  sim->add_option("--draws", sim_draws, "MCMC draws per replicate")->capture_default_str();
  sim->add_option("--burnin", sim_burnin, "burn-in draws discarded")->capture_default_str();
  sim->add_option("--seed", sim_seed, "master seed")->capture_default_str();
  sim->add_option("--level", sim_level, "band level")->capture_default_str();
  sim->add_option("--out", sim_out, "output directory")->capture_default_str();
  std::string sim_config;
  sim->add_option("--config", sim_config, "flat key=value config file (flags win on conflict)");

  // frequentist ----------------------------------------------------------
  auto* freq = app.add_subcommand("frequentist", "classical estimators and confidence bands");
  std::string fr_input, fr_time_col = "time", fr_status_col = "status", fr_out = "out";
  std::string fr_method = "hall-wellner";
  double fr_horizon = 0.0, fr_level = 0.95;
  std::uint64_t fr_seed = 24601;
  freq->add_option("input", fr_input, "input CSV with header row")->required();
  freq->add_option("--time-col", fr_time_col, "name of the time column")->capture_default_str();
  freq->add_option("--status-col", fr_status_col, "name of the status column (0/1)")
      ->capture_default_str();
  freq->add_option("--horizon", fr_horizon,
                   "study horizon in original time units (0 = max observed time)")
      ->capture_default_str();
  freq->add_option("--method", fr_method,
                   "nelson-aalen|kaplan-meier|hall-wellner|log-ep|pointwise")
      ->capture_default_str();
  freq->add_option("--level", fr_level, "confidence level")->capture_default_str();
  freq->add_option("--seed", fr_seed, "seed of the critical-value simulation")
      ->capture_default_str();
  freq->add_option("--out", fr_out, "output directory")->capture_default_str();
  std::string freq_config;
  freq->add_option("--config", freq_config, "flat key=value config file (flags win on conflict)");

  // haar -------------------------------------------------------------------
  auto* haar = app.add_subcommand("haar", "transform self-checks: round trip and orthogonality");
  int haar_levels = 6;
  std::uint64_t haar_seed = 7;
  haar->add_option("--levels", haar_levels, "check levels 0..L")->capture_default_str();
  haar->add_option("--seed", haar_seed, "seed of the random round-trip inputs")
      ->capture_default_str();

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config_args(args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (fit->parsed())
      return run_fit(fit_input, fit_time_col, fit_status_col, fit_horizon, fit_prior, fit_gamma,
                     fit_k, fit_draws, fit_burnin, fit_seed, fit_level, fit_out,
                     fit_export_draws);
    if (sim->parsed())
      return run_simulate(sim_truth, sim_cens, sim_n, sim_gamma, sim_prior, sim_replicates,
                          sim_draws, sim_burnin, sim_seed, sim_level, sim_out);
    if (freq->parsed())
      return run_frequentist(fr_input, fr_time_col, fr_status_col, fr_horizon, fr_method,
                             fr_level, fr_seed, fr_out);
    if (haar->parsed()) return run_haar(haar_levels, haar_seed);
  } catch (const MalformedRow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const EmptyData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.rfind("cannot open", 0) == 0 || what.rfind("cannot create", 0) == 0
               ? kExitIo
               : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
