#ifndef MOMSJUMP_DIAGNOSTICS_HPP
#define MOMSJUMP_DIAGNOSTICS_HPP

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "momsjump/chain.hpp"
#include "momsjump/exact.hpp"

namespace momsjump {

/// Two-state Markov chain summary of one inclusion indicator. The switch
/// probabilities a = P(0 -> 1) and b = P(1 -> 0) are estimated from the
/// transition counts; tau_int = (2 - (a + b)) / (a + b), ESS = T / tau_int
/// and MCSE = sqrt(p (1 - p) / ESS).
struct IndicatorChainStats {
  long n00 = 0, n01 = 0, n10 = 0, n11 = 0;
  long length = 0;
  double a_hat = 0;
  double b_hat = 0;
  double tau_int = 0;
  double ess = 0;
  double pip_hat = 0;
  double mcse = 0;
  bool defined = false;
  bool super_efficient = false;  // a + b = 2: tau_int = 0, ESS reported as T
  std::string reason;            // why the stats are undefined
};

/// Throws DataError when the chain has fewer than two draws.
IndicatorChainStats indicator_ess(std::span<const std::uint8_t> chain);

/// Pooled estimate from per-chain transition counts (no transitions across
/// chain boundaries). `ones` is the total number of draws equal to 1.
IndicatorChainStats indicator_ess_from_counts(long n00, long n01, long n10, long n11, long ones, long length);

/// Closed-form tau_int for known switch probabilities.
double tau_int_two_state(double a, double b);

struct InclusionBayesFactor {
  double value = 1;
  bool saturated = false;  // pip at 0 or 1: value is -/+ infinity
};

/// Posterior inclusion odds over prior inclusion odds.
InclusionBayesFactor inclusion_bayes_factor(double pip, double prior_incl);

/// Includes exactly the predictors with pip > 0.5.
ModelIndicator median_probability_model(const Eigen::VectorXd& pips);

/// Batch-means Monte Carlo standard error of the mean of a continuous chain
/// (floor(sqrt(T)) batches).
double batch_means_mcse(std::span<const double> x);

struct ChainSummary {
  PosteriorSummary posterior;
  std::vector<IndicatorChainStats> indicators;
  Eigen::VectorXd ess_per_iter;
  Eigen::VectorXd ess_per_sec;
  Eigen::VectorXd bma_mean_mcse;
  std::vector<InclusionBayesFactor> bf_incl;
  std::vector<double> accept_rate;
  long draws = 0;
  double wall_time = 0;
  int chains = 0;
};

/// Monte Carlo summary of one or more chains: pip and coefficient moments
/// from the pooled draws (excluded coefficients count as 0), pooled
/// indicator ESS/MCSE, ESS per iteration and per second, visited-model
/// frequencies.
ChainSummary summarize_chain(const ChainOutput& output, std::size_t top_k = 10);
ChainSummary summarize_chains(std::span<const ChainOutput> outputs, std::size_t top_k = 10);

}  // namespace momsjump

#endif  // MOMSJUMP_DIAGNOSTICS_HPP
