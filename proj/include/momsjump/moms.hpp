#ifndef MOMSJUMP_MOMS_HPP
#define MOMSJUMP_MOMS_HPP

#include "momsjump/chain.hpp"
#include "momsjump/config.hpp"
#include "momsjump/tuning.hpp"

namespace momsjump {

/// Builds the MoMS proposal that flips indicator `index`. For an add move
/// `beta_star` is the drawn coefficient (a draw of exactly 0 is outside the
/// slab support and yields an invalid proposal); for a delete move it is
/// ignored and the coefficient is set to 0.
FlipProposal moms_flip_proposal(const ChainState& state, const JointPosterior& post, const ProposalScales& scales,
                                Eigen::Index index, double beta_star);

/// One between-model flip of indicator `index` with a random-walk coefficient
/// proposal N(beta_i, tau_i^2).
FlipResult moms_flip_step(ChainState& state, const JointPosterior& post, const ProposalScales& scales,
                          AcceptanceRule rule, Eigen::Index index);

/// Gibbs updates at fixed gamma: mu | sigma2, beta_gamma | sigma2, g,
/// sigma2 | beta, mu, g and g | beta, sigma2.
void within_model_gibbs(ChainState& state, const RegressionData<double>& data);

/// Random-walk Metropolis on the full model for `config.warmup` sweeps with
/// Robbins-Monro adaptation of every tau_i; returns the frozen scales.
ProposalScales adapt_on_full_model(ChainState& state, const JointPosterior& post, const SamplerConfig& config);

/// One MoMS chain seeded with `config.seed`.
ChainOutput run_moms(const RegressionData<double>& data, const SamplerConfig& config);

}  // namespace momsjump

#endif  // MOMSJUMP_MOMS_HPP
