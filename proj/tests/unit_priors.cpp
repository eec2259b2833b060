#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hazbands/priors.hpp"
#include "hazbands/quadrature.hpp"
#include "test_oracles.hpp"

using namespace hazbands;

namespace {

// Monte-Carlo check of the autoregressive moment structure: draw h_k given a
// fixed previous height and compare mean/variance with prev and (sigma*prev)^2.
// The variance comparison is skipped when the conditional's fourth moment is
// infinite (dependent log-Laplace with rate <= 4), where no Monte-Carlo
// variance estimate can converge; those cases are covered by the exact
// second-moment identity below.
void check_ar_moments(const PriorSpec& spec, double prev, double sigma, std::uint64_t seed) {
  RngStream rng(seed);
  const int n = 100000;
  bool variance_testable = true;
  std::vector<double> draws(n);
  for (int i = 0; i < n; ++i) {
    switch (spec.family) {
      case PriorFamily::DepGamma:
        draws[i] = rng.gamma(spec.ar_alpha, spec.ar_alpha / prev);
        break;
      case PriorFamily::DepLogNormal: {
        const double s2 = std::log(1.0 + spec.sigma * spec.sigma);
        draws[i] = rng.lognormal(std::log(prev) - 0.5 * s2, std::sqrt(s2));
        break;
      }
      case PriorFamily::DepLogLaplace: {
        const auto link = log_laplace_link(spec.sigma);
        draws[i] = std::exp(rng.laplace(std::log(prev * link.shift_factor), link.rate));
        variance_testable = link.rate > 4.5;
        break;
      }
      default: REQUIRE(false);
    }
  }
  const double mean = oracles::sample_mean(draws);
  const double var = oracles::sample_variance(draws);
  const double target_sd = sigma * prev;
  const double se_mean = std::sqrt(var / n);
  CHECK(std::fabs(mean - prev) < 3.0 * se_mean);
  if (variance_testable) {
    double m4 = 0.0;
    for (double x : draws) m4 += std::pow(x - mean, 4.0);
    m4 /= n;
    const double se_var = std::sqrt(std::max(0.0, m4 - var * var) / n);
    CHECK(std::fabs(var - target_sd * target_sd) < 3.0 * se_var);
  }
}

// Exact conditional second-moment identity of the dependent log-Laplace link:
// with theta^2 = g/sigma^2 and e^mu = prev*(g - sigma^2)/g,
// Var = prev^2 [ (g-sigma^2)^2 / (g (g-4 sigma^2)) - 1 ] must equal
// (sigma*prev)^2.
void check_log_laplace_variance_identity(double sigma) {
  const double s2 = sigma * sigma;
  const double g = 2.0 * s2 + 1.0 + std::sqrt(4.0 * s2 * s2 + 5.0 * s2 + 1.0);
  const double ratio = (g - s2) * (g - s2) / (g * (g - 4.0 * s2)) - 1.0;
  CHECK(ratio == doctest::Approx(s2).epsilon(1e-12));
}

}  // namespace

TEST_CASE("dependent families satisfy the AR moment structure") {
  // Gamma(alpha, alpha/prev) has conditional SD prev/sqrt(alpha), so the
  // coupling scale sigma corresponds to alpha = 1/sigma^2 (identical to
  // 1/sigma at the default sigma = 1).
  for (double sigma : {0.25, 0.5, 1.0}) {
    check_ar_moments(PriorSpec::dep_gamma(1.5, 1.0, 1.0 / (sigma * sigma)), 2.0, sigma, 101);
    check_ar_moments(PriorSpec::dep_log_normal(0.0, 1.0, sigma), 2.0, sigma, 102);
    check_ar_moments(PriorSpec::dep_log_laplace(0.5, 3.0, sigma), 2.0, sigma, 103);
    check_log_laplace_variance_identity(sigma);
  }
}

TEST_CASE("dep log-normal conditional mean identity at prev=2, sigma=1") {
  // exp(mu + s^2/2) with mu = log(2/sqrt(2)), s^2 = log 2
  const double s2 = std::log(2.0);
  const double mu = std::log(2.0 / std::sqrt(2.0));
  CHECK(std::exp(mu + 0.5 * s2) == doctest::Approx(2.0).epsilon(1e-12));
  check_ar_moments(PriorSpec::dep_log_normal(0.0, 1.0, 1.0), 2.0, 1.0, 105);
}

TEST_CASE("independent gamma marginal moments") {
  RngStream rng(7);
  const PriorSpec spec = PriorSpec::indep_gamma(1.5, 1.0);
  const int n = 100000;
  std::vector<double> draws(n);
  for (int i = 0; i < n; ++i) draws[i] = sample_prior(spec, 1, rng).heights[0];
  CHECK(std::fabs(oracles::sample_mean(draws) - 1.5) < 3.0 * std::sqrt(1.5 / n));
  CHECK(std::fabs(oracles::sample_variance(draws) - 1.5) < 3.0 * 1.5 * std::sqrt(20.0 / n));
}

TEST_CASE("log-laplace link values") {
  const auto link = log_laplace_link(1.0);
  const double g = 3.0 + std::sqrt(10.0);
  CHECK(g == doctest::Approx(6.16228).epsilon(1e-5));
  CHECK(link.rate == doctest::Approx(std::sqrt(g)).epsilon(1e-12));
  CHECK(link.rate == doctest::Approx(2.48239).epsilon(1e-5));
  CHECK(link.shift_factor == doctest::Approx((g - 1.0) / g).epsilon(1e-12));
  CHECK(link.shift_factor == doctest::Approx(0.83772).epsilon(1e-5));
  CHECK_THROWS_AS(log_laplace_link(0.0), InvalidParameter);
  CHECK_THROWS_AS(log_laplace_link(-1.0), InvalidParameter);
}

TEST_CASE("log prior density closed values and errors") {
  const PriorSpec g11 = PriorSpec::indep_gamma(1.0, 1.0);
  const std::vector<double> ones{1.0, 1.0, 1.0};
  CHECK(log_prior_density(g11, ones) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK_THROWS_AS(log_prior_density(g11, std::vector<double>{1.0, -0.5}), DomainError);
  CHECK_THROWS_AS(log_prior_density(g11, std::vector<double>{0.0}), DomainError);
}

TEST_CASE("dependent density is Markov in adjacent heights") {
  const PriorSpec spec = PriorSpec::dep_gamma(1.5, 1.0, 1.0);
  std::vector<double> a{0.8, 1.2, 2.0, 0.9};
  std::vector<double> b = a;
  b[3] = 1.7;  // far coordinate
  std::vector<double> a2 = a, b2 = b;
  a2[1] = 0.4;
  b2[1] = 0.4;
  // the change from modifying h[1] must not depend on h[3]
  const double delta_a = log_prior_density(spec, a2) - log_prior_density(spec, a);
  const double delta_b = log_prior_density(spec, b2) - log_prior_density(spec, b);
  CHECK(delta_a == doctest::Approx(delta_b).epsilon(1e-12));
}

TEST_CASE("K=1 densities integrate to one") {
  const std::vector<PriorSpec> specs{
      PriorSpec::indep_gamma(1.5, 1.0),      PriorSpec::dep_gamma(1.5, 1.0, 1.0),
      PriorSpec::indep_log_normal(0.0, 1.0), PriorSpec::dep_log_normal(0.0, 1.0, 1.0),
      PriorSpec::indep_log_laplace(0.3, 3.0), PriorSpec::dep_log_laplace(0.3, 3.0, 1.0),
  };
  for (const auto& spec : specs) {
    const auto f = [&](double u) {
      const double x = std::exp(u);
      return std::exp(log_prior_density(spec, std::vector<double>{x}) + u);
    };
    const double total = adaptive_simpson(f, -40.0, 12.0, 1e-9);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("sample_prior shapes, positivity, determinism") {
  const PriorSpec spec = PriorSpec::dep_gamma(1.5, 1.0, 1.0);
  const HazardHistogram a = sample_prior(spec, 8, std::uint64_t{42});
  const HazardHistogram b = sample_prior(spec, 8, std::uint64_t{42});
  REQUIRE(a.K() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(a.heights[k] > 0.0);
    CHECK(a.heights[k] == b.heights[k]);
  }
  CHECK_THROWS_AS(sample_prior(spec, 0, std::uint64_t{1}), InvalidParameter);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PriorSpec::indep_gamma(0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(PriorSpec::dep_gamma(1.0, -1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(PriorSpec::indep_log_laplace(0.0, 2.0), InvalidParameter);  // theta0 must exceed 2
  CHECK_THROWS_AS(PriorSpec::dep_log_laplace(0.0, 1.5, 0.5), InvalidParameter);
  CHECK_THROWS_AS(PriorSpec::dep_log_normal(0.0, 1.0, 0.0), InvalidParameter);
  CHECK_NOTHROW(PriorSpec::indep_log_laplace(0.0, 2.1));
}
