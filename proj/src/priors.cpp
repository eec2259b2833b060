#include "hazbands/priors.hpp"

#include <cmath>

namespace hazbands {

bool is_dependent(PriorFamily f) {
  return f == PriorFamily::DepGamma || f == PriorFamily::DepLogNormal ||
         f == PriorFamily::DepLogLaplace;
}

bool is_gamma(PriorFamily f) {
  return f == PriorFamily::IndepGamma || f == PriorFamily::DepGamma;
}

std::string family_name(PriorFamily f) {
  switch (f) {
    case PriorFamily::IndepGamma: return "indep-gamma";
    case PriorFamily::DepGamma: return "dep-gamma";
    case PriorFamily::IndepLogNormal: return "indep-lognormal";
    case PriorFamily::DepLogNormal: return "dep-lognormal";
    case PriorFamily::IndepLogLaplace: return "indep-loglaplace";
    case PriorFamily::DepLogLaplace: return "dep-loglaplace";
  }
  return "unknown";
}

PriorFamily family_from_name(const std::string& name) {
  if (name == "indep-gamma") return PriorFamily::IndepGamma;
  if (name == "dep-gamma") return PriorFamily::DepGamma;
  if (name == "indep-lognormal") return PriorFamily::IndepLogNormal;
  if (name == "dep-lognormal") return PriorFamily::DepLogNormal;
  if (name == "indep-loglaplace") return PriorFamily::IndepLogLaplace;
  if (name == "dep-loglaplace") return PriorFamily::DepLogLaplace;
  throw InvalidParameter("unknown prior family '" + name + "'");
}

PriorSpec PriorSpec::indep_gamma(double shape, double rate) {
  PriorSpec s;
  s.family = PriorFamily::IndepGamma;
  s.alpha = shape;
  s.beta = rate;
  s.validate();
  return s;
}

PriorSpec PriorSpec::dep_gamma(double alpha0, double beta0, double alpha) {
  PriorSpec s;
  s.family = PriorFamily::DepGamma;
  s.alpha0 = alpha0;
  s.beta0 = beta0;
  s.ar_alpha = alpha;
  s.validate();
  return s;
}

PriorSpec PriorSpec::indep_log_normal(double mu0, double sigma0) {
  PriorSpec s;
  s.family = PriorFamily::IndepLogNormal;
  s.mu0 = mu0;
  s.sigma0 = sigma0;
  s.validate();
  return s;
}

PriorSpec PriorSpec::dep_log_normal(double mu0, double sigma0, double sigma) {
  PriorSpec s;
  s.family = PriorFamily::DepLogNormal;
  s.mu0 = mu0;
  s.sigma0 = sigma0;
  s.sigma = sigma;
  s.validate();
  return s;
}

PriorSpec PriorSpec::indep_log_laplace(double mu0, double theta0) {
  PriorSpec s;
  s.family = PriorFamily::IndepLogLaplace;
  s.mu0 = mu0;
  s.theta0 = theta0;
  s.validate();
  return s;
}

PriorSpec PriorSpec::dep_log_laplace(double mu0, double theta0, double sigma) {
  PriorSpec s;
  s.family = PriorFamily::DepLogLaplace;
  s.mu0 = mu0;
  s.theta0 = theta0;
  s.sigma = sigma;
  s.validate();
  return s;
}

void PriorSpec::validate() const {
  switch (family) {
    case PriorFamily::IndepGamma:
      if (!(alpha > 0.0 && beta > 0.0)) throw InvalidParameter("gamma shape/rate must be positive");
      break;
    case PriorFamily::DepGamma:
      if (!(alpha0 > 0.0 && beta0 > 0.0 && ar_alpha > 0.0))
        throw InvalidParameter("dependent gamma parameters must be positive");
      break;
    case PriorFamily::IndepLogNormal:
      if (!(sigma0 > 0.0)) throw InvalidParameter("log-normal sigma0 must be positive");
      break;
    case PriorFamily::DepLogNormal:
      if (!(sigma0 > 0.0 && sigma > 0.0))
        throw InvalidParameter("log-normal sigma parameters must be positive");
      break;
    case PriorFamily::IndepLogLaplace:
      if (!(theta0 > 2.0)) throw InvalidParameter("log-Laplace theta0 must exceed 2");
      break;
    case PriorFamily::DepLogLaplace:
      if (!(theta0 > 2.0)) throw InvalidParameter("log-Laplace theta0 must exceed 2");
      if (!(sigma > 0.0)) throw InvalidParameter("log-Laplace sigma must be positive");
      break;
  }
}

LogLaplaceLink log_laplace_link(double sigma) {
  if (!(sigma > 0.0)) throw InvalidParameter("sigma must be positive");
  const double s2 = sigma * sigma;
  const double g = 2.0 * s2 + 1.0 + std::sqrt(4.0 * s2 * s2 + 5.0 * s2 + 1.0);
  return {(g - s2) / g, std::sqrt(g / s2)};
}

namespace {

double log_gamma_density(double x, double shape, double rate) {
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

// Density of exp(Y) with Y ~ N(mu, s^2).
double log_lognormal_density(double x, double mu, double s) {
  const double z = (std::log(x) - mu) / s;
  return -std::log(x) - std::log(s) - 0.5 * std::log(2.0 * M_PI) - 0.5 * z * z;
}

// Density of exp(Y) with Y ~ Laplace(mu, rate theta).
double log_loglaplace_density(double x, double mu, double theta) {
  return std::log(0.5 * theta) - theta * std::fabs(std::log(x) - mu) - std::log(x);
}

}  // namespace

double log_prior_term(const PriorSpec& spec, std::size_t k, double value, double prev) {
  if (!(value > 0.0)) throw DomainError("heights must be strictly positive");
  const bool base = (k == 0) || !is_dependent(spec.family);
  switch (spec.family) {
    case PriorFamily::IndepGamma:
      return log_gamma_density(value, spec.alpha, spec.beta);
    case PriorFamily::DepGamma:
      if (base) return log_gamma_density(value, spec.alpha0, spec.beta0);
      return log_gamma_density(value, spec.ar_alpha, spec.ar_alpha / prev);
    case PriorFamily::IndepLogNormal:
      return log_lognormal_density(value, spec.mu0, spec.sigma0);
    case PriorFamily::DepLogNormal: {
      if (base) return log_lognormal_density(value, spec.mu0, spec.sigma0);
      const double s2 = std::log(1.0 + spec.sigma * spec.sigma);
      return log_lognormal_density(value, std::log(prev) - 0.5 * s2, std::sqrt(s2));
    }
    case PriorFamily::IndepLogLaplace:
      return log_loglaplace_density(value, spec.mu0, spec.theta0);
    case PriorFamily::DepLogLaplace: {
      if (base) return log_loglaplace_density(value, spec.mu0, spec.theta0);
      const auto link = log_laplace_link(spec.sigma);
      return log_loglaplace_density(value, std::log(prev * link.shift_factor), link.rate);
    }
  }
  throw InvalidParameter("unknown prior family");
}

double log_prior_density(const PriorSpec& spec, std::span<const double> heights) {
  if (heights.empty()) throw InvalidParameter("empty height vector");
  double total = 0.0;
  for (std::size_t k = 0; k < heights.size(); ++k)
    total += log_prior_term(spec, k, heights[k], k > 0 ? heights[k - 1] : 0.0);
  return total;
}

HazardHistogram sample_prior(const PriorSpec& spec, std::size_t K, RngStream& rng) {
  spec.validate();
  if (K == 0) throw InvalidParameter("K must be at least 1");
  std::vector<double> h(K);
  for (std::size_t k = 0; k < K; ++k) {
    const bool base = (k == 0) || !is_dependent(spec.family);
    switch (spec.family) {
      case PriorFamily::IndepGamma:
        h[k] = rng.gamma(spec.alpha, spec.beta);
        break;
      case PriorFamily::DepGamma:
        h[k] = base ? rng.gamma(spec.alpha0, spec.beta0)
                    : rng.gamma(spec.ar_alpha, spec.ar_alpha / h[k - 1]);
        break;
      case PriorFamily::IndepLogNormal:
        h[k] = rng.lognormal(spec.mu0, spec.sigma0);
        break;
      case PriorFamily::DepLogNormal: {
        if (base) {
          h[k] = rng.lognormal(spec.mu0, spec.sigma0);
        } else {
          const double s2 = std::log(1.0 + spec.sigma * spec.sigma);
          h[k] = rng.lognormal(std::log(h[k - 1]) - 0.5 * s2, std::sqrt(s2));
        }
        break;
      }
      case PriorFamily::IndepLogLaplace:
        h[k] = std::exp(rng.laplace(spec.mu0, spec.theta0));
        break;
      case PriorFamily::DepLogLaplace: {
        if (base) {
          h[k] = std::exp(rng.laplace(spec.mu0, spec.theta0));
        } else {
          const auto link = log_laplace_link(spec.sigma);
          h[k] = std::exp(rng.laplace(std::log(h[k - 1] * link.shift_factor), link.rate));
        }
        break;
      }
    }
  }
  return HazardHistogram(IntervalGrid::regular(K), std::move(h));
}

HazardHistogram sample_prior(const PriorSpec& spec, std::size_t K, std::uint64_t seed) {
  RngStream rng(seed);
  return sample_prior(spec, K, rng);
}

}  // namespace hazbands
