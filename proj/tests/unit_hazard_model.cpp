#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hazbands/hazard_model.hpp"
#include "hazbands/rng.hpp"
#include "test_oracles.hpp"

using namespace hazbands;

namespace {

HazardHistogram random_histogram(RngStream& rng, std::size_t K) {
  std::vector<double> h(K);
  for (auto& v : h) v = 0.05 + 3.0 * rng.uniform();
  return HazardHistogram(IntervalGrid::regular(K), std::move(h));
}

}  // namespace

TEST_CASE("cumulative hazard closed forms") {
  const TruthHazard c1 = TruthHazard::constant(1.0);
  CHECK(c1.cumulative(0.7) == doctest::Approx(0.7).epsilon(1e-12));

  const TruthHazard pl = TruthHazard::piecewise_linear();
  CHECK(pl.cumulative(1.0) == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(pl.hazard(0.2) == doctest::Approx(3.0));
  CHECK(pl.hazard(0.5) == doctest::Approx(2.25));

  const TruthHazard sm = TruthHazard::smooth();
  CHECK(sm.cumulative(1.0) == doctest::Approx(1.19325).epsilon(1e-9));
  CHECK(sm.hazard(0.0) == doctest::Approx(0.97075).epsilon(1e-12));

  CHECK_THROWS_AS(sm.cumulative(1.5), OutOfDomain);
}

TEST_CASE("survival values") {
  const TruthHazard pl = TruthHazard::piecewise_linear();
  CHECK(pl.survival(0.0) == doctest::Approx(1.0));
  CHECK(pl.survival(1.0) == doctest::Approx(0.1054).epsilon(1e-3));
  const TruthHazard sm = TruthHazard::smooth();
  CHECK(sm.survival(1.0) == doctest::Approx(0.3033).epsilon(1e-3));
}

TEST_CASE("smooth cumulative hazard agrees with brute-force quadrature") {
  const TruthHazard sm = TruthHazard::smooth();
  for (double t : {0.2, 0.5, 0.77, 1.0}) {
    const double brute =
        oracles::simpson([&](double u) { return sm.hazard(u); }, 0.0, t, 20000);
    CHECK(sm.cumulative(t) == doctest::Approx(brute).epsilon(1e-9));
  }
}

TEST_CASE("histogram cumulative hazard vs Riemann sum, median root condition") {
  RngStream rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const HazardHistogram h = random_histogram(rng, 1 + static_cast<std::size_t>(rng.uniform() * 9));
    const double t = rng.uniform();
    // brute-force midpoint sum with 1e5 panels split along the grid, so no
    // panel straddles a jump of the step function
    double riemann = 0.0;
    const std::size_t panels_per_piece = 100000 / (h.K() + 1);
    std::size_t piece = 0;
    double start = 0.0;
    while (start < t) {
      const double stop = piece + 1 <= h.K() ? std::min(t, h.grid.breakpoints[piece + 1]) : t;
      for (std::size_t i = 0; i < panels_per_piece; ++i) {
        const double u =
            start + (static_cast<double>(i) + 0.5) / static_cast<double>(panels_per_piece) *
                        (stop - start);
        riemann += hazard_at(h, u) * (stop - start) / static_cast<double>(panels_per_piece);
      }
      start = stop;
      ++piece;
    }
    CHECK(cumulative_hazard(h, t) == doctest::Approx(riemann).epsilon(1e-6));

    const auto med = median_survival(h);
    if (med) {
      CHECK(std::fabs(cumulative_hazard(h, *med) - std::log(2.0)) < 1e-12);
    } else {
      CHECK(cumulative_hazard(h, 1.0) < std::log(2.0));
    }
  }
}

TEST_CASE("monotonicity of cumulative hazard and survival") {
  RngStream rng(9);
  for (int rep = 0; rep < 30; ++rep) {
    const HazardHistogram h = random_histogram(rng, 4);
    const double a = rng.uniform(), b = rng.uniform();
    const double lo = std::min(a, b), hi = std::max(a, b);
    CHECK(cumulative_hazard(h, lo) <= cumulative_hazard(h, hi) + 1e-15);
    CHECK(survival(h, lo) >= survival(h, hi) - 1e-15);
    CHECK(survival(h, 0.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("median survival closed forms") {
  CHECK(*TruthHazard::constant(1.0).median() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(!TruthHazard::constant(0.5).median());
  CHECK(*TruthHazard::piecewise_linear().median() ==
        doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-9));
}

TEST_CASE("m0 values and monotonicity") {
  const TruthHazard c1 = TruthHazard::constant(1.0);
  CHECK(m0(c1, CensoringModel::AdminOnly, 0.5) == doctest::Approx(std::exp(-0.5)));
  CHECK(m0(c1, CensoringModel::AdminPlusUniform, 0.5) == doctest::Approx(0.5 * std::exp(-0.5)));
  const TruthHazard sm = TruthHazard::smooth();
  CHECK(m0(sm, CensoringModel::AdminPlusUniform, 0.5) ==
        doctest::Approx(0.5 * 0.4856).epsilon(1e-3));
  CHECK(m0(sm, CensoringModel::AdminPlusUniform, 1.0) == doctest::Approx(0.0));
  double prev = 2.0;
  for (double u = 0.0; u <= 0.999; u += 0.037) {
    const double v = m0(sm, CensoringModel::AdminPlusUniform, u);
    CHECK(v <= prev + 1e-12);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("u0 closed form under administrative censoring") {
  // with G-bar == 1, lambda0/M0 = d/du exp(Lambda0), so U0(t) = exp(Lambda0(t)) - 1
  const TruthHazard c1 = TruthHazard::constant(1.0);
  CHECK(u0(c1, CensoringModel::AdminOnly, std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(u0(c1, CensoringModel::AdminOnly, 0.0) == 0.0);
  const TruthHazard sm = TruthHazard::smooth();
  const double expected = std::exp(sm.cumulative(1.0)) - 1.0;
  CHECK(u0(sm, CensoringModel::AdminOnly, 1.0) == doctest::Approx(expected).epsilon(1e-7));
  CHECK(std::fabs(u0(sm, CensoringModel::AdminOnly, 1.0) - expected) < 1e-4);
}

TEST_CASE("u0 under uniform censoring: quadrature oracle and singular edge") {
  const TruthHazard sm = TruthHazard::smooth();
  const double got = u0(sm, CensoringModel::AdminPlusUniform, 0.9);
  const double brute = oracles::simpson(
      [&](double u) { return sm.hazard(u) / m0(sm, CensoringModel::AdminPlusUniform, u); }, 0.0,
      0.9, 200000);
  CHECK(got == doctest::Approx(brute).epsilon(1e-7));
  CHECK_THROWS_AS(u0(sm, CensoringModel::AdminPlusUniform, 1.0), IntegrandSingular);
  CHECK_NOTHROW(u0(sm, CensoringModel::AdminPlusUniform, 1.0 - 1e-6));
}

TEST_CASE("median BvM variance") {
  CHECK(median_bvm_variance(TruthHazard::constant(1.0), CensoringModel::AdminOnly) ==
        doctest::Approx(1.0).epsilon(1e-7));
  // frozen regression values from the quadrature oracle at the analytic medians
  const double v_pl = median_bvm_variance(TruthHazard::piecewise_linear(), CensoringModel::AdminOnly);
  const double m_pl = std::log(2.0) / 3.0;
  const double f_pl = 3.0 * 0.5;
  const double u_pl = std::exp(3.0 * m_pl) - 1.0;  // = 1 by the admin-only identity
  CHECK(v_pl == doctest::Approx(u_pl / (4.0 * f_pl * f_pl)).epsilon(1e-9));
  CHECK(v_pl == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
  CHECK(median_bvm_variance(TruthHazard::smooth(), CensoringModel::AdminOnly) > 0.0);
  CHECK_THROWS_AS(median_bvm_variance(TruthHazard::constant(0.5), CensoringModel::AdminOnly),
                  NoFiniteMedian);
}

TEST_CASE("limit sup quantile: degenerate, variance check, monotone levels") {
  // degenerate stub: U0 identically zero
  const std::vector<double> zeros(64, 0.0);
  CHECK(limit_sup_quantile_from_u0(zeros, 0.95, 2000, 1) == 0.0);
  CHECK_THROWS_AS(limit_sup_quantile_from_u0(zeros, 0.95, 10, 1), InvalidParameter);

  // Var(G(t)) = U0(t): simulate paths, check the endpoint variance
  const TruthHazard c1 = TruthHazard::constant(1.0);
  const double u_end = std::exp(0.5) - 1.0;
  RngStream rng(17);
  const int n = 20000;
  std::vector<double> endpoints(n);
  for (int i = 0; i < n; ++i) {
    double w = 0.0;
    for (int j = 0; j < 16; ++j) w += std::sqrt(u_end / 16.0) * rng.normal();
    endpoints[i] = w;
  }
  const double var = oracles::sample_variance(endpoints);
  const double se = u_end * std::sqrt(2.0 / (n - 1.0));
  CHECK(std::fabs(var - u_end) < 3.0 * se);

  const double q50 = simulate_limit_sup_quantile(c1, CensoringModel::AdminOnly, 0.5, 2000, 128, 3);
  const double q95 = simulate_limit_sup_quantile(c1, CensoringModel::AdminOnly, 0.95, 2000, 128, 3);
  CHECK(q50 <= q95);
  CHECK(q50 > 0.0);

  // uniform censoring: the time change blows up near 1 but the capped grid
  // keeps the simulation finite
  const double qu = simulate_limit_sup_quantile(c1, CensoringModel::AdminPlusUniform, 0.95, 2000,
                                                128, 3);
  CHECK(qu > q95);
  CHECK(std::isfinite(qu));
}

TEST_CASE("limit sup quantile scales like the square root of the time change") {
  // For constant U0 ramps, sup |W(U0 t)| over the full grid is distributed as
  // sqrt(U0(1)) * sup |W(s)|, s <= 1; quantiles must scale accordingly.
  std::vector<double> ramp1(257), ramp4(257);
  for (std::size_t j = 0; j < ramp1.size(); ++j) {
    ramp1[j] = static_cast<double>(j) / 256.0;
    ramp4[j] = 4.0 * ramp1[j];
  }
  const double q1 = limit_sup_quantile_from_u0(ramp1, 0.9, 20000, 5);
  const double q4 = limit_sup_quantile_from_u0(ramp4, 0.9, 20000, 5);
  CHECK(q4 == doctest::Approx(2.0 * q1).epsilon(0.05));
}
