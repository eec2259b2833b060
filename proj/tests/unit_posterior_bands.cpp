#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hazbands/posterior_bands.hpp"
#include "hazbands/rng.hpp"

using namespace hazbands;

namespace {

// Chain stub with explicitly chosen draws.
PosteriorChain chain_of(std::vector<std::vector<double>> draws) {
  PosteriorChain chain;
  const std::size_t K = draws.front().size();
  chain.grid = IntervalGrid::regular(K);
  chain.summary.d.assign(K, 0);
  chain.summary.T.assign(K, 0.0);
  chain.draws = std::move(draws);
  return chain;
}

}  // namespace

TEST_CASE("curve evaluation of simple draws") {
  const HazardHistogram unit(IntervalGrid::regular(1), {1.0});
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto cum = curve_of_draw(unit, CurveTarget::CumHaz, grid);
  CHECK(cum[0] == doctest::Approx(0.0));
  CHECK(cum[1] == doctest::Approx(0.5));
  CHECK(cum[2] == doctest::Approx(1.0));
  const auto surv = curve_of_draw(unit, CurveTarget::Survival, std::vector<double>{0.0, 1.0});
  CHECK(surv[0] == doctest::Approx(1.0));
  CHECK(surv[1] == doctest::Approx(std::exp(-1.0)));

  // piecewise-linear truth benchmark value through the generic evaluator
  const auto pl = truth_curve(TruthHazard::piecewise_linear(), CurveTarget::CumHaz,
                              std::vector<double>{1.0});
  CHECK(pl[0] == doctest::Approx(2.25));
}

TEST_CASE("evaluation grid contains the breakpoints") {
  const IntervalGrid grid = IntervalGrid::regular(7);
  const auto eval = evaluation_grid(grid);
  CHECK(eval.front() == 0.0);
  CHECK(eval.back() == 1.0);
  for (double b : grid.breakpoints)
    CHECK(std::find(eval.begin(), eval.end(), b) != eval.end());
  CHECK(eval.size() >= 401);
  CHECK(std::is_sorted(eval.begin(), eval.end()));
}

TEST_CASE("identical draws give a zero-radius band") {
  std::vector<std::vector<double>> draws(150, std::vector<double>{1.0, 2.0});
  const PosteriorChain chain = chain_of(std::move(draws));
  const auto grid = evaluation_grid(chain.grid, 41);
  const Band band = credible_band(chain, CurveTarget::CumHaz, grid, 0.9);
  CHECK(band.radius == doctest::Approx(0.0));
  for (std::size_t j = 0; j < band.grid.size(); ++j) {
    CHECK(band.lower[j] == doctest::Approx(band.center[j]));
    CHECK(band.upper[j] == doctest::Approx(band.center[j]));
  }
}

TEST_CASE("radius follows the order-statistic convention") {
  // 200 draws of a constant hazard: heights 1 + i*delta produce sup distances
  // that are linear in the height, so the radius quantile is explicit.
  std::vector<std::vector<double>> draws;
  for (int i = 0; i < 200; ++i) draws.push_back({1.0 + 0.01 * static_cast<double>(i)});
  const PosteriorChain chain = chain_of(std::move(draws));
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const Band band = credible_band(chain, CurveTarget::Hazard, grid, 0.9);
  // center = mean height; distances |h_i - mean|; radius = 180th smallest
  std::vector<double> dist;
  double mean = 0.0;
  for (int i = 0; i < 200; ++i) mean += 1.0 + 0.01 * i;
  mean /= 200.0;
  for (int i = 0; i < 200; ++i) dist.push_back(std::fabs(1.0 + 0.01 * i - mean));
  std::sort(dist.begin(), dist.end());
  CHECK(band.radius == doctest::Approx(dist[179]).epsilon(1e-12));

  // minimality: enough draws within the radius, while any strictly smaller
  // radius covers too few
  std::size_t within = 0, within_smaller = 0;
  for (double d : dist) {
    if (d <= band.radius + 1e-15) ++within;
    if (d < band.radius - 1e-15) ++within_smaller;
  }
  CHECK(within >= 180);
  CHECK(within_smaller < 180);
}

TEST_CASE("clamping keeps survival bands inside [0,1] and never widens") {
  RngStream rng(20);
  std::vector<std::vector<double>> draws;
  for (int i = 0; i < 300; ++i) {
    std::vector<double> h(4);
    for (auto& v : h) v = 0.05 + 4.0 * rng.uniform();
    draws.push_back(h);
  }
  const PosteriorChain chain = chain_of(std::move(draws));
  const auto grid = evaluation_grid(chain.grid, 101);
  for (CurveTarget target : {CurveTarget::Survival, CurveTarget::CumHaz, CurveTarget::Hazard}) {
    const Band band = credible_band(chain, target, grid, 0.95);
    double prev_center = band.center[0];
    for (std::size_t j = 0; j < band.grid.size(); ++j) {
      CHECK(band.lower[j] >= 0.0);
      CHECK(band.lower[j] <= band.center[j] + 1e-12);
      CHECK(band.center[j] <= band.upper[j] + 1e-12);
      CHECK(band.upper[j] - band.lower[j] <= 2.0 * band.radius + 1e-12);
      if (target == CurveTarget::Survival) {
        CHECK(band.upper[j] <= 1.0);
        CHECK(band.center[j] <= prev_center + 1e-12);  // nonincreasing center
        prev_center = band.center[j];
      }
    }
    CHECK(band_area(band) <= 2.0 * band.radius + 1e-12);
  }
}

TEST_CASE("insufficient draws is an error") {
  std::vector<std::vector<double>> draws(50, std::vector<double>{1.0});
  const PosteriorChain chain = chain_of(std::move(draws));
  CHECK_THROWS_AS(credible_band(chain, CurveTarget::Hazard, std::vector<double>{0.0, 1.0}, 0.95),
                  InsufficientDraws);
}

TEST_CASE("median draws and beyond-horizon accounting") {
  std::vector<std::vector<double>> draws(120, std::vector<double>{1.0});
  draws.push_back({0.5});  // cumulative hazard 0.5 < ln 2: beyond horizon
  const PosteriorChain chain = chain_of(std::move(draws));
  const MedianDraws med = median_draws(chain);
  CHECK(med.beyond_horizon == 1);
  REQUIRE(med.medians.size() == 120);
  for (double m : med.medians) CHECK(m == doctest::Approx(std::log(2.0)));
}

TEST_CASE("band coverage checks") {
  Band band;
  band.target = CurveTarget::Survival;
  band.grid = {0.0, 0.5, 1.0};
  band.center = {1.0, 0.6, 0.4};
  band.lower = {0.9, 0.5, 0.3};
  band.upper = {1.0, 0.7, 0.5};
  CHECK(band_covers(band, band.center));
  CHECK(!band_covers(band, std::vector<double>{1.0, 0.71, 0.4}));
  CHECK_THROWS_AS(band_covers(band, std::vector<double>{1.0, 0.6}), InvalidParameter);
  // widths are 0.1, 0.2, 0.2 -> trapezoid = 0.5*(0.1+0.2)*0.5 + 0.5*(0.2+0.2)*0.5
  CHECK(band_area(band) == doctest::Approx(0.175).epsilon(1e-12));
}

TEST_CASE("metamorphic: widening a band never lowers coverage") {
  RngStream rng(31);
  std::vector<std::vector<double>> draws;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> h(3);
    for (auto& v : h) v = 0.2 + 2.0 * rng.uniform();
    draws.push_back(h);
  }
  const PosteriorChain chain = chain_of(std::move(draws));
  const auto grid = evaluation_grid(chain.grid, 81);
  const Band band = credible_band(chain, CurveTarget::Survival, grid, 0.9);
  Band wider = band;
  for (std::size_t j = 0; j < wider.grid.size(); ++j) {
    const double w = wider.upper[j] - wider.lower[j];
    wider.lower[j] = std::max(0.0, wider.lower[j] - 0.05 * w);
    wider.upper[j] = std::min(1.0, wider.upper[j] + 0.05 * w);
  }
  const auto truth = truth_curve(TruthHazard::constant(1.2), CurveTarget::Survival, grid);
  if (band_covers(band, truth)) CHECK(band_covers(wider, truth));
}
