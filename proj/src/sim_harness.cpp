#include "hazbands/sim_harness.hpp"

#include <cmath>

#include "hazbands/threads.hpp"

namespace hazbands {

void Scenario::validate() const {
  if (n < 10) throw InvalidConfig("scenario sample size must be at least 10");
  if (replicates < 1) throw InvalidConfig("need at least one replicate");
  if (!(level > 0.0 && level < 1.0)) throw InvalidConfig("level must be in (0, 1)");
  if (!(gamma > 0.0)) throw InvalidConfig("gamma must be positive");
  prior.validate();
}

std::string method_name(BandMethod m) {
  switch (m) {
    case BandMethod::Credible: return "credible";
    case BandMethod::HallWellner: return "hall_wellner";
    case BandMethod::LogEP: return "log_ep";
    case BandMethod::Pointwise: return "pointwise";
  }
  return "unknown";
}

double sample_event_time(const TruthHazard& truth, RngStream& rng) {
  return truth.inverse_cumulative(rng.exponential());
}

std::pair<double, int> apply_censoring(CensoringModel model, double event_time, RngStream& rng) {
  double censor_time = 1.0;
  if (model == CensoringModel::AdminPlusUniform) censor_time = std::min(1.0, rng.uniform());
  if (event_time <= censor_time) return {event_time, 1};
  return {censor_time, 0};
}

SurvivalDataset generate_dataset(const TruthHazard& truth, CensoringModel censoring,
                                 std::size_t n, RngStream& rng) {
  SurvivalDataset ds;
  ds.horizon = 1.0;
  ds.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = sample_event_time(truth, rng);
    const auto [y, status] = apply_censoring(censoring, t, rng);
    ds.records.push_back({y, status});
  }
  return ds;
}

namespace {

struct ReplicateOutcome {
  // indexed in the fixed (target, method) order used by the aggregator
  bool covered[6] = {};
  double area[6] = {};
  double median_mean = 0.0;
  double median_var = 0.0;
  std::size_t median_beyond = 0;
};

constexpr std::pair<CurveTarget, BandMethod> kCells[6] = {
    {CurveTarget::Survival, BandMethod::Credible},
    {CurveTarget::Survival, BandMethod::HallWellner},
    {CurveTarget::Survival, BandMethod::LogEP},
    {CurveTarget::Survival, BandMethod::Pointwise},
    {CurveTarget::CumHaz, BandMethod::Credible},
    {CurveTarget::CumHaz, BandMethod::Pointwise},
};

}  // namespace

CoverageReport run_replication_study(const Scenario& scenario) {
  scenario.validate();
  const std::size_t K = select_interval_count(scenario.n, scenario.gamma);
  const IntervalGrid grid = IntervalGrid::regular(K);
  const std::vector<double> eval = evaluation_grid(grid);
  const std::vector<double> surv_truth = truth_curve(scenario.truth, CurveTarget::Survival, eval);
  const std::vector<double> cum_truth = truth_curve(scenario.truth, CurveTarget::CumHaz, eval);

  std::vector<ReplicateOutcome> outcomes(scenario.replicates);

  parallel_for(scenario.replicates, [&](std::size_t rep) {
    try {
      RngStream data_rng = RngStream::derive(scenario.seed, {0x5e11, rep});
      const SurvivalDataset ds =
          generate_dataset(scenario.truth, scenario.censoring, scenario.n, data_rng);
      const IntervalSummary summary = augment(ds, grid);

      ChainConfig cfg;
      cfg.n_draws = scenario.n_draws;
      cfg.burn_in = scenario.burn_in;
      cfg.seed = mix_seed(scenario.seed, {0xc4a1, rep});
      const PosteriorChain chain = run_chain(scenario.prior, summary, cfg);

      const Band cred_surv = credible_band(chain, CurveTarget::Survival, eval, scenario.level);
      const Band cred_cum = credible_band(chain, CurveTarget::CumHaz, eval, scenario.level);

      const StepEstimate km = kaplan_meier(ds);
      const StepEstimate na = nelson_aalen(ds);

      // One bridge simulation serves both simultaneous frequentist bands.
      double hw_hi = 0.0, ep_lo = 1.0, ep_hi = 0.0;
      {
        constexpr std::size_t no_jump = static_cast<std::size_t>(-1);
        std::size_t last_fin = no_jump, last_pos = no_jump;
        for (std::size_t i = 0; i < km.jump_times.size(); ++i) {
          if (!std::isfinite(km.sigma2_log[i])) break;
          last_fin = i;
          if (km.values[i] > 0.0) last_pos = i;
        }
        const double n = static_cast<double>(km.n);
        if (last_fin != no_jump)
          hw_hi = n * km.sigma2_log[last_fin] / (1.0 + n * km.sigma2_log[last_fin]);
        if (!km.jump_times.empty() && last_pos != no_jump) {
          ep_lo = n * km.sigma2_log[0] / (1.0 + n * km.sigma2_log[0]);
          ep_hi = n * km.sigma2_log[last_pos] / (1.0 + n * km.sigma2_log[last_pos]);
        }
      }
      const BridgeCritValues crit =
          bridge_critical_values(hw_hi, ep_lo, ep_hi, scenario.level, scenario.bridge);

      const Band hw =
          hall_wellner_from_estimate(km, scenario.level, eval, scenario.bridge, crit.hall_wellner);
      const Band ep = log_ep_from_estimate(km, scenario.level, eval, scenario.bridge, crit.log_ep);
      const Band pw_km = pointwise_intervals(km, scenario.level, eval);
      const Band pw_na = pointwise_intervals(na, scenario.level, eval);

      ReplicateOutcome& out = outcomes[rep];
      const Band* bands[6] = {&cred_surv, &hw, &ep, &pw_km, &cred_cum, &pw_na};
      for (int c = 0; c < 6; ++c) {
        const auto& truth = (kCells[c].first == CurveTarget::Survival) ? surv_truth : cum_truth;
        out.covered[c] = band_covers(*bands[c], truth);
        out.area[c] = band_area(*bands[c]);
      }

      const MedianDraws med = median_draws(chain);
      out.median_beyond = med.beyond_horizon;
      if (!med.medians.empty()) {
        double mean = 0.0;
        for (double m : med.medians) mean += m;
        mean /= static_cast<double>(med.medians.size());
        double var = 0.0;
        for (double m : med.medians) var += (m - mean) * (m - mean);
        var /= std::max<std::size_t>(1, med.medians.size() - 1);
        out.median_mean = mean;
        out.median_var = var;
      }
    } catch (const Error& e) {
      throw Error("replicate " + std::to_string(rep) + ": " + e.what());
    }
  });

  CoverageReport report;
  report.replicates = scenario.replicates;
  report.K = K;
  const double n_rep = static_cast<double>(scenario.replicates);
  for (int c = 0; c < 6; ++c) {
    std::size_t covered = 0;
    double area_sum = 0.0, area_sq = 0.0;
    for (const auto& out : outcomes) {
      covered += out.covered[c] ? 1 : 0;
      area_sum += out.area[c];
      area_sq += out.area[c] * out.area[c];
    }
    MethodStats s;
    s.coverage = static_cast<double>(covered) / n_rep;
    s.coverage_se = std::sqrt(std::max(0.0, s.coverage * (1.0 - s.coverage) / n_rep));
    s.mean_area = area_sum / n_rep;
    const double var =
        std::max(0.0, (area_sq - n_rep * s.mean_area * s.mean_area) / std::max(1.0, n_rep - 1.0));
    s.area_se = std::sqrt(var / n_rep);
    report.stats[kCells[c].first][kCells[c].second] = s;
  }
  for (const auto& out : outcomes) {
    report.median_draw_mean += out.median_mean / n_rep;
    report.median_draw_variance += out.median_var / n_rep;
    report.median_beyond_horizon += out.median_beyond;
  }
  return report;
}

}  // namespace hazbands
