#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hazbands/posterior_bands.hpp"
#include "hazbands/survival_data.hpp"

namespace hazbands {

enum class StepKind { NelsonAalen, KaplanMeier };

/// Right-continuous step estimate with jumps at event times. `variance` is
/// the estimated pointwise variance of the value (sum of d/n^2 for
/// Nelson-Aalen, the Greenwood formula S^2 * sum d/(n(n-d)) for
/// Kaplan-Meier); `sigma2_log` is the cumulative Greenwood sum
/// sum d/(n(n-d)) that both simultaneous band constructions need.
struct StepEstimate {
  StepKind kind = StepKind::NelsonAalen;
  std::size_t n = 0;  // sample size behind the estimate
  std::vector<double> jump_times;
  std::vector<double> values;
  std::vector<double> variance;
  std::vector<double> sigma2_log;

  /// Value at t (baseline before the first jump: 0 for Nelson-Aalen,
  /// 1 for Kaplan-Meier).
  double value_at(double t) const;
  double sigma2_log_at(double t) const;
  double baseline() const { return kind == StepKind::KaplanMeier ? 1.0 : 0.0; }
};

StepEstimate nelson_aalen(const SurvivalDataset& dataset);
StepEstimate kaplan_meier(const SurvivalDataset& dataset);

/// Settings of the Monte-Carlo simulation behind the Brownian-bridge
/// critical values.
struct BridgeConfig {
  std::size_t n_paths = 100000;
  std::size_t grid_size = 512;
  std::uint64_t seed = 24601;
};

struct BridgeCritValues {
  double hall_wellner = 0.0;  // level-quantile of sup_{u <= hw_hi} |B(u)|
  double log_ep = 0.0;        // level-quantile of sup_{ep_lo <= u <= ep_hi} |B(u)|/sqrt(u(1-u))
};

/// Simulate both band functionals from one set of bridge paths. Degenerate
/// ranges yield a zero critical value without simulation.
BridgeCritValues bridge_critical_values(double hw_hi, double ep_lo, double ep_hi, double level,
                                        const BridgeConfig& config = {});

/// Level-quantile of sup_{u <= range_hi} |B(u)| for a standard Brownian
/// bridge B (the Kolmogorov statistic when range_hi = 1).
double brownian_bridge_sup_quantile(double range_hi, double level,
                                    const BridgeConfig& config = {});

/// Hall-Wellner simultaneous band for the survival function:
/// S(t) +/- c * n^{-1/2} * (1 + n*sigma2(t)) * S(t), with c the
/// Brownian-bridge sup quantile over [0, K(t_max)],
/// K(t) = n*sigma2(t) / (1 + n*sigma2(t)). Clamped to [0, 1].
Band hall_wellner_band(const SurvivalDataset& dataset, double level, std::span<const double> grid,
                       const BridgeConfig& config = {});

/// Log-transformed equal-precision band: bounds S^(1/theta) and S^theta with
/// theta = exp(c * sigma(t) / log S(t)), c simulated over the data-driven
/// range [K(t_first), K(t_last)]. Defined where 0 < S < 1; extended flat
/// left of the first event (upper limit 1) and right of the last usable one.
Band log_ep_band(const SurvivalDataset& dataset, double level, std::span<const double> grid,
                 const BridgeConfig& config = {});

/// Pointwise normal-approximation intervals collated into a pseudo-band:
/// log-transformed S*exp(+/- z*sigma(t)) around Kaplan-Meier, plain
/// value +/- z*SE around Nelson-Aalen.
Band pointwise_intervals(const StepEstimate& estimate, double level, std::span<const double> grid);

/// Band builders on a precomputed step estimate; `crit` skips the
/// Monte-Carlo simulation when the caller already holds the critical value.
Band hall_wellner_from_estimate(const StepEstimate& km, double level, std::span<const double> grid,
                                const BridgeConfig& config = {},
                                std::optional<double> crit = std::nullopt);
Band log_ep_from_estimate(const StepEstimate& km, double level, std::span<const double> grid,
                          const BridgeConfig& config = {},
                          std::optional<double> crit = std::nullopt);

}  // namespace hazbands
