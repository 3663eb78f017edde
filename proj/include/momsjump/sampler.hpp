#ifndef MOMSJUMP_SAMPLER_HPP
#define MOMSJUMP_SAMPLER_HPP

#include <functional>
#include <vector>

#include "momsjump/chain.hpp"
#include "momsjump/config.hpp"

namespace momsjump {

using FlipKernel = std::function<FlipResult(ChainState&, Eigen::Index)>;

/// Runs `config.iterations` recorded sweeps from `state`: a flip attempt for
/// every predictor (systematic or random scan) followed by one within-model
/// Gibbs refresh. Wall time covers this loop only.
ChainOutput sample_chain(ChainState& state, const JointPosterior& post, const SamplerConfig& config,
                         const FlipKernel& flip);

/// Runs `config.chains` independent chains with seeds seed, seed + 1, ...
/// on a bounded worker pool. Output order follows chain id.
std::vector<ChainOutput> run_chains(const RegressionData<double>& data, const SamplerConfig& config);

/// Random variate from Inverse-Gamma(shape, scale), floored at 1e-300.
double draw_inverse_gamma(Rng& rng, double shape, double scale);

}  // namespace momsjump

#endif  // MOMSJUMP_SAMPLER_HPP
