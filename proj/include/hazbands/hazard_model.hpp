#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hazbands/errors.hpp"
#include "hazbands/survival_data.hpp"

namespace hazbands {

/// Piecewise-constant hazard on a regular interval grid. Heights are rates
/// per unit time and must be strictly positive.
struct HazardHistogram {
  IntervalGrid grid;
  std::vector<double> heights;

  HazardHistogram() = default;
  HazardHistogram(IntervalGrid g, std::vector<double> h);

  std::size_t K() const { return heights.size(); }
};

double hazard_at(const HazardHistogram& h, double t);
double cumulative_hazard(const HazardHistogram& h, double t);
double survival(const HazardHistogram& h, double t);

/// Smallest t with Lambda(t) = ln 2, solved in closed form within the
/// containing interval; nullopt when Lambda(1) < ln 2 (median beyond horizon).
std::optional<double> median_survival(const HazardHistogram& h);

/// Prefix sums of height*width; entry k is Lambda(breakpoints[k]).
std::vector<double> cumhaz_prefix(const HazardHistogram& h);

enum class TruthKind { Smooth, PiecewiseLinear, Histogram, Constant };

/// Data-generating hazards for simulation studies plus constants and
/// histograms for tests. Evaluable at every t in [0, 1] with exact
/// closed-form cumulative hazards.
class TruthHazard {
 public:
  /// 6((t+0.05)^3 - 2(t+0.05)^2 + (t+0.05)) + 0.7.
  static TruthHazard smooth();
  /// 3 on [0, 0.4], 1.5 on [0.6, 1], linear in between.
  static TruthHazard piecewise_linear();
  static TruthHazard histogram(HazardHistogram h);
  static TruthHazard constant(double level);

  TruthKind kind() const { return kind_; }
  double hazard(double t) const;
  double cumulative(double t) const;
  double survival(double t) const;
  std::optional<double> median() const;

  /// Inverse cumulative hazard: smallest t with Lambda(t) = e. For e beyond
  /// Lambda(1) the hazard is extended flat at its value at 1, so the result
  /// exceeds the horizon (callers truncate).
  double inverse_cumulative(double e) const;

  const HazardHistogram& as_histogram() const { return hist_; }

 private:
  TruthHazard(TruthKind k, double level, HazardHistogram h)
      : kind_(k), level_(level), hist_(std::move(h)) {}
  TruthKind kind_;
  double level_ = 1.0;
  HazardHistogram hist_;
};

/// Censoring mechanisms of the simulation scenarios: administrative
/// censoring at t = 1 only, or an additional independent Uniform(0,1)
/// censoring time.
enum class CensoringModel { AdminOnly, AdminPlusUniform };

/// Censoring survivor function G-bar(u) = P(C >= u) on [0, 1].
double censoring_survivor(CensoringModel cens, double u);

/// At-risk probability M0(u) = G-bar(u) * exp(-Lambda0(u)). Under
/// AdminPlusUniform, M0(1) = 0 (the boundary value is the left limit).
double m0(const TruthHazard& truth, CensoringModel cens, double u);

/// U0(t) = integral of lambda0 / M0 over [0, t], by adaptive Simpson
/// quadrature with absolute tolerance 1e-8. Under AdminPlusUniform the
/// integrand diverges at 1; t must stay at or below 1 - 1e-6 or
/// IntegrandSingular is thrown.
double u0(const TruthHazard& truth, CensoringModel cens, double t);

/// Asymptotic variance U0(m0) / (4 f0(m0)^2) of sqrt(n)*(median - truth),
/// with f0 = lambda0 * S0 the event density.
double median_bvm_variance(const TruthHazard& truth, CensoringModel cens);

/// Empirical level-quantile of sup over a grid of |W(U0(t))| for W standard
/// Brownian motion, given the U0 values on the chosen grid. Quantile
/// convention: ceil(level * n_paths)-th smallest.
double limit_sup_quantile_from_u0(std::span<const double> u0_grid, double level,
                                  std::size_t n_paths, std::uint64_t seed);

/// As above, with U0 evaluated on `grid_size` equispaced points of [0, 1]
/// (capped at 1 - 1e-6 under AdminPlusUniform).
double simulate_limit_sup_quantile(const TruthHazard& truth, CensoringModel cens, double level,
                                   std::size_t n_paths, std::size_t grid_size, std::uint64_t seed);

}  // namespace hazbands
