#pragma once

#include <span>
#include <string>
#include <vector>

#include "hazbands/hazard_model.hpp"
#include "hazbands/sampler.hpp"

namespace hazbands {

enum class CurveTarget { Hazard, CumHaz, Survival };

std::string target_name(CurveTarget t);

/// Center curve with lower/upper envelopes on an evaluation grid. For
/// fixed-radius credible bands the radius is the sup-distance quantile; for
/// other constructions it is the maximum half-width, so that
/// upper - lower <= 2 * radius holds pointwise either way.
struct Band {
  CurveTarget target = CurveTarget::Survival;
  std::vector<double> grid;
  std::vector<double> center;
  std::vector<double> lower;
  std::vector<double> upper;
  double level = 0.95;
  double radius = 0.0;
};

/// Evaluation grid: `points` equispaced values on [0, 1] merged with all
/// interval breakpoints, so kinks of piecewise-exponential curves land on
/// grid points exactly.
std::vector<double> evaluation_grid(const IntervalGrid& grid, std::size_t points = 401);
std::vector<double> evaluation_grid(std::size_t points = 401);

/// Pointwise evaluation of a draw's hazard / cumulative hazard / survival
/// curve. The grid must be sorted.
std::vector<double> curve_of_draw(const HazardHistogram& draw, CurveTarget target,
                                  std::span<const double> grid);

/// Truth curve on a grid, for coverage evaluation.
std::vector<double> truth_curve(const TruthHazard& truth, CurveTarget target,
                                std::span<const double> grid);

/// Fixed-radius simultaneous credible band: center is the pointwise mean of
/// the draw curves, the radius is the ceil(level * N)-th smallest sup
/// distance to the center, and the envelopes are clamped (>= 0 always,
/// <= 1 for survival). Needs at least 100 retained draws.
Band credible_band(const PosteriorChain& chain, CurveTarget target, std::span<const double> grid,
                   double level);

struct MedianDraws {
  std::vector<double> medians;      // finite medians only
  std::size_t beyond_horizon = 0;   // draws whose cumulative hazard never reaches ln 2
};

/// Median survival time of every posterior draw.
MedianDraws median_draws(const PosteriorChain& chain);

/// True iff lower <= truth <= upper at every grid point.
bool band_covers(const Band& band, std::span<const double> truth);

/// Trapezoidal integral of (upper - lower) over the band's grid.
double band_area(const Band& band);

}  // namespace hazbands
