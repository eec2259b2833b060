#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hazbands/frequentist.hpp"
#include "hazbands/hazard_model.hpp"
#include "hazbands/posterior_bands.hpp"
#include "hazbands/priors.hpp"
#include "hazbands/sampler.hpp"

namespace hazbands {

/// One cell of the coverage study: a truth hazard, a censoring mechanism, a
/// sample size, the interval rule parameter, a prior, and replication
/// settings.
struct Scenario {
  TruthHazard truth = TruthHazard::smooth();
  CensoringModel censoring = CensoringModel::AdminPlusUniform;
  std::size_t n = 200;
  double gamma = 0.5;
  PriorSpec prior = PriorSpec::dep_gamma(1.5, 1.0, 1.0);
  double level = 0.95;
  std::size_t replicates = 200;
  std::size_t n_draws = 5000;
  std::size_t burn_in = 500;
  std::uint64_t seed = 0;
  BridgeConfig bridge;

  void validate() const;
};

enum class BandMethod { Credible, HallWellner, LogEP, Pointwise };

std::string method_name(BandMethod m);

struct MethodStats {
  double coverage = 0.0;
  double coverage_se = 0.0;
  double mean_area = 0.0;
  double area_se = 0.0;
};

/// Aggregated replication results: per curve target, per band method,
/// coverage fraction (covered / replicates exactly) with Monte-Carlo
/// standard errors, plus posterior-median diagnostics.
struct CoverageReport {
  std::size_t replicates = 0;
  std::size_t K = 0;
  std::map<CurveTarget, std::map<BandMethod, MethodStats>> stats;
  double median_draw_mean = 0.0;      // average over replicates of mean median draw
  double median_draw_variance = 0.0;  // average over replicates of the draw variance
  std::size_t median_beyond_horizon = 0;
};

/// Event time by inverse cumulative hazard: T = Lambda^{-1}(E), E ~ Exp(1).
/// Events past the horizon come back as finite times above 1 (flat hazard
/// extension) for the caller to truncate.
double sample_event_time(const TruthHazard& truth, RngStream& rng);

/// Observed pair (Y, delta): AdminOnly censors at 1; AdminPlusUniform also
/// draws C ~ Uniform(0,1). Y = min(T, C, 1), delta = 1{T <= min(C, 1)}.
std::pair<double, int> apply_censoring(CensoringModel model, double event_time, RngStream& rng);

SurvivalDataset generate_dataset(const TruthHazard& truth, CensoringModel censoring,
                                 std::size_t n, RngStream& rng);

/// Full study: per replicate, generate data, select K, augment, run the
/// chain, build credible and frequentist bands, and score coverage and area
/// against the truth curve on the shared evaluation grid. Deterministic
/// given (scenario, seed); replicates run in parallel under the
/// HAZBANDS_THREADS budget.
CoverageReport run_replication_study(const Scenario& scenario);

}  // namespace hazbands
