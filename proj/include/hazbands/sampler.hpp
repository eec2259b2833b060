#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hazbands/priors.hpp"
#include "hazbands/survival_data.hpp"

namespace hazbands {

struct ChainConfig {
  std::size_t n_draws = 10000;
  std::size_t burn_in = 1000;
  std::uint64_t seed = 0;
  /// Initial state is d_k / (T_k + 1) + init_epsilon.
  double init_epsilon = 1e-4;
  /// Shape offset of the middle-interval proposal, also the floor applied to
  /// the first-interval proposal shape when d_1 + alpha0 - alpha <= 0.
  double proposal_epsilon = 1e-2;
  /// Log-scale random-walk step of the generic Metropolis sweep.
  double rw_step = 0.3;

  void validate() const;
};

/// Post-burn-in hazard draws with chain metadata. Directly sampled intervals
/// carry acceptance rate 1.
struct PosteriorChain {
  std::vector<std::vector<double>> draws;
  std::vector<double> acceptance_rates;
  ChainConfig config;
  IntervalSummary summary;
  IntervalGrid grid;

  std::size_t K() const { return summary.K(); }
  std::size_t n_draws() const { return draws.size(); }

  HazardHistogram histogram(std::size_t i) const {
    return HazardHistogram(grid, draws[i]);
  }
};

/// Poisson-representation log likelihood sum_k (d_k log h_k - h_k T_k),
/// additive constants dropped. Matches the exact right-censoring
/// log density up to a term free of the hazard.
double log_likelihood(std::span<const double> heights, const IntervalSummary& summary);

/// One conjugate Gibbs update: every height redrawn from
/// Gamma(d_k + alpha, T_k + beta).
void gibbs_step_indep_gamma(std::vector<double>& state, const IntervalSummary& summary,
                            const PriorSpec& prior, RngStream& rng);

/// One left-to-right Metropolis-within-Gibbs sweep for the dependent Gamma
/// prior: independence Gamma proposals for intervals 1..K-1 with closed-form
/// acceptance ratios, and a direct conjugate draw for the last interval.
/// accept_counts (when given) accumulates per-interval acceptances.
void mh_sweep_dep_gamma(std::vector<double>& state, const IntervalSummary& summary,
                        const PriorSpec& prior, const ChainConfig& config, RngStream& rng,
                        std::vector<std::size_t>* accept_counts = nullptr);

/// One sweep of log-scale Gaussian random-walk Metropolis updates, used for
/// the log-normal and log-Laplace priors.
void mh_sweep_generic(std::vector<double>& state, const IntervalSummary& summary,
                      const PriorSpec& prior, const ChainConfig& config, RngStream& rng,
                      std::vector<std::size_t>* accept_counts = nullptr);

/// Run the posterior sampler appropriate to the prior family. Deterministic
/// given (prior, summary, config).
PosteriorChain run_chain(const PriorSpec& prior, const IntervalSummary& summary,
                         const ChainConfig& config);

}  // namespace hazbands
