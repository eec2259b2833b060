#include "hazbands/frequentist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hazbands/rng.hpp"
#include "hazbands/special.hpp"

namespace hazbands {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoJump = static_cast<std::size_t>(-1);

struct TimeGroup {
  double t;
  std::size_t d;  // events
  std::size_t c;  // censorings
};

std::vector<TimeGroup> group_times(const SurvivalDataset& ds) {
  std::vector<SurvivalRecord> sorted(ds.records);
  std::sort(sorted.begin(), sorted.end(),
            [](const SurvivalRecord& a, const SurvivalRecord& b) { return a.time < b.time; });
  std::vector<TimeGroup> groups;
  for (std::size_t i = 0; i < sorted.size();) {
    TimeGroup g{sorted[i].time, 0, 0};
    while (i < sorted.size() && sorted[i].time == g.t) {
      if (sorted[i].status == 1)
        ++g.d;
      else
        ++g.c;
      ++i;
    }
    groups.push_back(g);
  }
  return groups;
}

double step_lookup(const std::vector<double>& times, const std::vector<double>& vals, double t,
                   double baseline) {
  // value of the right-continuous step function at t
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return baseline;
  return vals[static_cast<std::size_t>(it - times.begin()) - 1];
}

}  // namespace

double StepEstimate::value_at(double t) const {
  return step_lookup(jump_times, values, t, baseline());
}

double StepEstimate::sigma2_log_at(double t) const {
  return step_lookup(jump_times, sigma2_log, t, 0.0);
}

StepEstimate nelson_aalen(const SurvivalDataset& dataset) {
  if (dataset.n() == 0) throw EmptyData();
  StepEstimate est;
  est.kind = StepKind::NelsonAalen;
  est.n = dataset.n();
  std::size_t at_risk = dataset.n();
  double cum = 0.0, var = 0.0, s2log = 0.0;
  for (const auto& g : group_times(dataset)) {
    const double r = static_cast<double>(at_risk);
    if (g.d > 0 && at_risk > 0) {
      const double d = static_cast<double>(g.d);
      cum += d / r;
      var += d / (r * r);
      s2log += (at_risk > g.d) ? d / (r * (r - d)) : kInf;
      est.jump_times.push_back(g.t);
      est.values.push_back(cum);
      est.variance.push_back(var);
      est.sigma2_log.push_back(s2log);
    }
    at_risk -= std::min(at_risk, g.d + g.c);
  }
  return est;
}

StepEstimate kaplan_meier(const SurvivalDataset& dataset) {
  if (dataset.n() == 0) throw EmptyData();
  StepEstimate est;
  est.kind = StepKind::KaplanMeier;
  est.n = dataset.n();
  std::size_t at_risk = dataset.n();
  double surv = 1.0, greenwood = 0.0;
  for (const auto& g : group_times(dataset)) {
    const double r = static_cast<double>(at_risk);
    if (g.d > 0 && at_risk > 0) {
      const double d = static_cast<double>(g.d);
      surv *= 1.0 - d / r;
      greenwood += (at_risk > g.d) ? d / (r * (r - d)) : kInf;
      est.jump_times.push_back(g.t);
      est.values.push_back(surv);
      est.sigma2_log.push_back(greenwood);
      est.variance.push_back(std::isfinite(greenwood) ? surv * surv * greenwood
                                                      : (surv == 0.0 ? 0.0 : kInf));
    }
    at_risk -= std::min(at_risk, g.d + g.c);
  }
  return est;
}

// --- Brownian-bridge critical values ----------------------------------------

BridgeCritValues bridge_critical_values(double hw_hi, double ep_lo, double ep_hi, double level,
                                        const BridgeConfig& config) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("level must be in (0, 1)");
  if (config.n_paths < 100) throw InvalidParameter("need at least 100 bridge paths");
  if (config.grid_size < 8) throw InvalidParameter("bridge grid too coarse");

  const bool do_hw = hw_hi > 0.0;
  const bool do_ep = ep_hi >= ep_lo && ep_hi > 0.0 && ep_lo < 1.0;
  if (!do_hw && !do_ep) return {0.0, 0.0};

  const std::size_t m = config.grid_size;
  const double inv_m = 1.0 / static_cast<double>(m);
  const double sd = std::sqrt(inv_m);

  std::vector<double> ep_weight(m, 0.0);
  std::vector<char> in_ep(m, 0);
  for (std::size_t j = 1; j < m; ++j) {
    const double u = static_cast<double>(j) * inv_m;
    ep_weight[j] = 1.0 / std::sqrt(u * (1.0 - u));
    in_ep[j] = do_ep && u >= ep_lo - 1e-12 && u <= ep_hi + 1e-12;
  }
  const std::size_t hw_idx =
      do_hw ? static_cast<std::size_t>(std::min(
                  static_cast<double>(m), std::floor(hw_hi * static_cast<double>(m) + 1e-12)))
            : 0;

  RngStream rng(config.seed);
  std::vector<double> w(m + 1, 0.0);
  std::vector<double> hw_stats(config.n_paths, 0.0);
  std::vector<double> ep_stats(config.n_paths, 0.0);
  for (std::size_t p = 0; p < config.n_paths; ++p) {
    for (std::size_t j = 1; j <= m; ++j) w[j] = w[j - 1] + sd * rng.normal();
    const double wm = w[m];
    double hw = 0.0, ep = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
      const double b = std::fabs(w[j] - static_cast<double>(j) * inv_m * wm);
      if (j <= hw_idx && b > hw) hw = b;
      if (in_ep[j]) ep = std::max(ep, b * ep_weight[j]);
    }
    hw_stats[p] = hw;
    ep_stats[p] = ep;
  }

  const std::size_t idx = std::min(
      config.n_paths,
      static_cast<std::size_t>(std::ceil(level * static_cast<double>(config.n_paths))));
  BridgeCritValues out;
  if (do_hw) {
    std::sort(hw_stats.begin(), hw_stats.end());
    out.hall_wellner = hw_stats[idx - 1];
  }
  if (do_ep) {
    std::sort(ep_stats.begin(), ep_stats.end());
    out.log_ep = ep_stats[idx - 1];
  }
  return out;
}

double brownian_bridge_sup_quantile(double range_hi, double level, const BridgeConfig& config) {
  return bridge_critical_values(range_hi, 1.0, 0.0, level, config).hall_wellner;
}

// --- simultaneous bands ------------------------------------------------------

namespace {

// Index of the last jump usable by a band construction, or kNoJump when none.
std::size_t last_usable_jump(const StepEstimate& km, bool need_positive_value) {
  std::size_t idx = kNoJump;
  for (std::size_t i = 0; i < km.jump_times.size(); ++i) {
    if (!std::isfinite(km.sigma2_log[i])) break;
    if (need_positive_value && !(km.values[i] > 0.0)) break;
    idx = i;
  }
  return idx;
}

Band degenerate_band(const StepEstimate& est, double level, std::span<const double> grid,
                     CurveTarget target) {
  Band band;
  band.target = target;
  band.level = level;
  band.grid.assign(grid.begin(), grid.end());
  band.center.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) band.center[j] = est.value_at(grid[j]);
  band.lower = band.center;
  band.upper = band.center;
  band.radius = 0.0;
  return band;
}

void finish_band(Band& band, CurveTarget target) {
  double max_half = 0.0;
  for (std::size_t j = 0; j < band.grid.size(); ++j) {
    band.lower[j] = std::max(0.0, band.lower[j]);
    if (target == CurveTarget::Survival) band.upper[j] = std::min(1.0, band.upper[j]);
    max_half = std::max(max_half, 0.5 * (band.upper[j] - band.lower[j]));
  }
  band.radius = max_half;
}

}  // namespace

Band hall_wellner_from_estimate(const StepEstimate& km, double level, std::span<const double> grid,
                                const BridgeConfig& config, std::optional<double> crit) {
  if (km.kind != StepKind::KaplanMeier) throw InvalidParameter("Hall-Wellner needs a Kaplan-Meier estimate");
  if (km.jump_times.empty()) throw NoEvents();
  const std::size_t last = last_usable_jump(km, false);
  if (last == kNoJump) return degenerate_band(km, level, grid, CurveTarget::Survival);

  const double n = static_cast<double>(km.n);
  const double t_max = km.jump_times[last];
  const double s2_max = km.sigma2_log[last];
  const double b = n * s2_max / (1.0 + n * s2_max);
  const double c = crit ? *crit : brownian_bridge_sup_quantile(b, level, config);

  Band band;
  band.target = CurveTarget::Survival;
  band.level = level;
  band.grid.assign(grid.begin(), grid.end());
  band.center.resize(grid.size());
  band.lower.resize(grid.size());
  band.upper.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = std::min(grid[j], t_max);  // flat beyond the last usable event
    const double s = km.value_at(t);
    const double s2 = km.sigma2_log_at(t);
    const double half = c / std::sqrt(n) * (1.0 + n * s2) * s;
    band.center[j] = s;
    band.lower[j] = s - half;
    band.upper[j] = s + half;
  }
  finish_band(band, CurveTarget::Survival);
  return band;
}

Band log_ep_from_estimate(const StepEstimate& km, double level, std::span<const double> grid,
                          const BridgeConfig& config, std::optional<double> crit) {
  if (km.kind != StepKind::KaplanMeier) throw InvalidParameter("log-EP needs a Kaplan-Meier estimate");
  if (km.jump_times.empty()) throw NoEvents();
  const std::size_t last = last_usable_jump(km, true);
  if (last == kNoJump || !(km.values[last] < 1.0))
    return degenerate_band(km, level, grid, CurveTarget::Survival);

  const double n = static_cast<double>(km.n);
  const double t_first = km.jump_times[0];
  const double t_last = km.jump_times[last];
  const double a_lo = n * km.sigma2_log[0] / (1.0 + n * km.sigma2_log[0]);
  const double a_hi = n * km.sigma2_log[last] / (1.0 + n * km.sigma2_log[last]);
  const double c =
      crit ? *crit : bridge_critical_values(0.0, a_lo, a_hi, level, config).log_ep;

  Band band;
  band.target = CurveTarget::Survival;
  band.level = level;
  band.grid.assign(grid.begin(), grid.end());
  band.center.resize(grid.size());
  band.lower.resize(grid.size());
  band.upper.resize(grid.size());

  auto limits_at = [&](double t) {
    const double s = km.value_at(t);
    const double sig = std::sqrt(km.sigma2_log_at(t));
    const double theta = std::exp(c * sig / std::log(s));
    return std::pair<double, double>{std::pow(s, 1.0 / theta), std::pow(s, theta)};
  };
  const auto first_limits = limits_at(t_first);

  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid[j];
    if (t < t_first) {
      // left of the first event the transform is undefined; widen with the
      // first defined interval
      band.center[j] = 1.0;
      band.lower[j] = first_limits.first;
      band.upper[j] = 1.0;
    } else {
      const double tc = std::min(t, t_last);
      const auto lim = limits_at(tc);
      band.center[j] = km.value_at(tc);
      band.lower[j] = lim.first;
      band.upper[j] = lim.second;
    }
  }
  finish_band(band, CurveTarget::Survival);
  return band;
}

Band pointwise_intervals(const StepEstimate& estimate, double level, std::span<const double> grid) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("level must be in (0, 1)");
  const double z = norm_quantile(0.5 * (1.0 + level));
  const bool km = estimate.kind == StepKind::KaplanMeier;
  const CurveTarget target = km ? CurveTarget::Survival : CurveTarget::CumHaz;
  if (estimate.jump_times.empty()) return degenerate_band(estimate, level, grid, target);

  const std::size_t last = last_usable_jump(estimate, false);
  if (last == kNoJump) return degenerate_band(estimate, level, grid, target);
  const double t_first = estimate.jump_times[0];
  const double t_last = estimate.jump_times[last];

  auto limits_at = [&](double t) -> std::pair<double, double> {
    const double v = estimate.value_at(t);
    if (km) {
      const double sig = std::sqrt(estimate.sigma2_log_at(t));
      return {v * std::exp(-z * sig), v * std::exp(z * sig)};
    }
    const double se = std::sqrt(step_lookup(estimate.jump_times, estimate.variance, t, 0.0));
    return {v - z * se, v + z * se};
  };
  const auto first_limits = limits_at(t_first);
  const double base = estimate.baseline();

  Band band;
  band.target = target;
  band.level = level;
  band.grid.assign(grid.begin(), grid.end());
  band.center.resize(grid.size());
  band.lower.resize(grid.size());
  band.upper.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid[j];
    if (t < t_first) {
      band.center[j] = base;
      band.lower[j] = std::min(base, first_limits.first);
      band.upper[j] = std::max(base, first_limits.second);
    } else {
      const double tc = std::min(t, t_last);
      const auto lim = limits_at(tc);
      band.center[j] = estimate.value_at(tc);
      band.lower[j] = lim.first;
      band.upper[j] = lim.second;
    }
  }
  finish_band(band, target);
  return band;
}

Band hall_wellner_band(const SurvivalDataset& dataset, double level, std::span<const double> grid,
                       const BridgeConfig& config) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("level must be in (0, 1)");
  return hall_wellner_from_estimate(kaplan_meier(dataset), level, grid, config);
}

Band log_ep_band(const SurvivalDataset& dataset, double level, std::span<const double> grid,
                 const BridgeConfig& config) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("level must be in (0, 1)");
  return log_ep_from_estimate(kaplan_meier(dataset), level, grid, config);
}

}  // namespace hazbands
