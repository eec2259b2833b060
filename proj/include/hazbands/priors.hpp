#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hazbands/errors.hpp"
#include "hazbands/hazard_model.hpp"
#include "hazbands/rng.hpp"

namespace hazbands {

enum class PriorFamily {
  IndepGamma,
  DepGamma,
  IndepLogNormal,
  DepLogNormal,
  IndepLogLaplace,
  DepLogLaplace,
};

bool is_dependent(PriorFamily f);
bool is_gamma(PriorFamily f);
std::string family_name(PriorFamily f);
PriorFamily family_from_name(const std::string& name);

/// Histogram prior on interval heights. Independent families draw heights
/// i.i.d.; dependent families are first-order autoregressive with
/// E[h_k | h_{k-1}] = h_{k-1} and SD(h_k | h_{k-1}) = sigma * h_{k-1}
/// (sigma = 1/alpha for the dependent Gamma).
struct PriorSpec {
  PriorFamily family = PriorFamily::DepGamma;

  // Gamma parameters: independent family uses (alpha, beta); the dependent
  // family starts at Gamma(alpha0, beta0) and couples through ar_alpha.
  double alpha = 1.5;
  double beta = 1.0;
  double alpha0 = 1.5;
  double beta0 = 1.0;
  double ar_alpha = 1.0;

  // Log-normal / log-Laplace base parameters and dependent coupling sigma.
  double mu0 = 0.0;
  double sigma0 = 1.0;
  double theta0 = 3.0;
  double sigma = 1.0;

  static PriorSpec indep_gamma(double shape, double rate);
  static PriorSpec dep_gamma(double alpha0, double beta0, double alpha);
  static PriorSpec indep_log_normal(double mu0, double sigma0);
  static PriorSpec dep_log_normal(double mu0, double sigma0, double sigma);
  static PriorSpec indep_log_laplace(double mu0, double theta0);
  static PriorSpec dep_log_laplace(double mu0, double theta0, double sigma);

  void validate() const;
};

/// Location-shift factor and Laplace rate of the dependent log-Laplace
/// conditional: the next height is LL(log(prev * shift_factor), rate) with
/// shift_factor = (g - sigma^2)/g, rate = sqrt(g / sigma^2) and
/// g = 2 sigma^2 + 1 + sqrt(4 sigma^4 + 5 sigma^2 + 1).
struct LogLaplaceLink {
  double shift_factor;
  double rate;
};
LogLaplaceLink log_laplace_link(double sigma);

/// Draw one histogram from the prior, heights left to right.
HazardHistogram sample_prior(const PriorSpec& spec, std::size_t K, RngStream& rng);
HazardHistogram sample_prior(const PriorSpec& spec, std::size_t K, std::uint64_t seed);

/// Log prior density of a height vector, including normalizing constants
/// (so that K = 1 integrates to one). Throws DomainError on nonpositive
/// heights.
double log_prior_density(const PriorSpec& spec, std::span<const double> heights);

/// Log density of the conditional term for index k: the marginal of h_k for
/// independent families and k = 0, the autoregressive conditional given
/// h_prev otherwise. Used by the samplers for local Metropolis updates.
double log_prior_term(const PriorSpec& spec, std::size_t k, double value, double prev);

}  // namespace hazbands
