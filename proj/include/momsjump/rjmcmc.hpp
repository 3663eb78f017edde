#ifndef MOMSJUMP_RJMCMC_HPP
#define MOMSJUMP_RJMCMC_HPP

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "momsjump/chain.hpp"
#include "momsjump/config.hpp"
#include "momsjump/tuning.hpp"

namespace momsjump {

/// Full-model fit that anchors the add/delete proposals.
struct FullModelAnchor {
  Eigen::VectorXd beta_star_hat;  // OLS coefficients of the full model
  Eigen::VectorXd eta_hat;        // X beta_star_hat
  Eigen::VectorXd Xt_eta;         // X' eta_hat, cached for Gram-space projections
  double sigma2_star_hat = 0;     // rss / (n - p - 1)
};

FullModelAnchor compute_anchor(const RegressionData<double>& data);

/// Gaussian auxiliary proposal N(mean, variance) for the coefficient of
/// `index`, conditioned on the model gamma without `index`. `shift` holds
/// (X_c'X_c)^{-1} X_c' s for the conditioning columns `conditioning`.
struct ForsterParams {
  double mean = 0;
  double variance = 0;
  double sd = 0;
  std::vector<Eigen::Index> conditioning;
  Eigen::VectorXd shift;
};

/// v = (s'r_s / sigma2*)^{-1}, mu = v s'r_eta / sigma2*, where r_s and r_eta
/// are the residuals of the candidate column s and of the anchor fitted
/// values after projection on the conditioning columns. Throws
/// DegenerateProposalError when s lies (numerically) in their span.
ForsterParams forster_proposal_params(const RegressionData<double>& data, const ModelIndicator& gamma_current,
                                      Eigen::Index index, const FullModelAnchor& anchor);

enum class MoveDirection { add, remove };

struct AddDeleteProposal {
  Eigen::Index index = 0;
  MoveDirection direction = MoveDirection::add;
  double mu_prop = 0;
  double v_prop = 0;
  double u = 0;
};

/// Unit upper-triangular map [[I, -shift], [0, 1]] acting on (beta_c, u).
Eigen::MatrixXd add_transform_matrix(const Eigen::VectorXd& shift);

/// (beta_c, u) -> (beta_c - shift u, u); the last entry is the new coefficient.
Eigen::VectorXd apply_add_transform(const Eigen::VectorXd& beta_conditioning, double u, const Eigen::VectorXd& shift);

/// Inverse of apply_add_transform: (beta_c*, b) -> (beta_c* + shift b, u* = b).
std::pair<Eigen::VectorXd, double> apply_delete_transform(const Eigen::VectorXd& beta_extended,
                                                          const Eigen::VectorXd& shift);

/// Proposal kernel configuration. Forster mode needs `anchor`; identity mode
/// proposes u ~ N(beta_i, tau_i^2) with no coefficient shift and needs `scales`.
struct RjKernel {
  RjTransform transform = RjTransform::forster;
  const FullModelAnchor* anchor = nullptr;
  const ProposalScales* scales = nullptr;
};

/// Auxiliary-variable proposal parameters for flipping `index` from `state`.
ForsterParams rj_move_params(const ChainState& state, const RegressionData<double>& data, const RjKernel& kernel,
                             Eigen::Index index);

/// Builds the reversible-jump flip proposal for `index`. `u` is the drawn
/// auxiliary value for an add move and is ignored for a delete move, where
/// it is recovered through the inverse transformation.
FlipProposal rj_flip_proposal(const ChainState& state, const JointPosterior& post, const ForsterParams& params,
                              Eigen::Index index, double u, AddDeleteProposal* record = nullptr);

FlipResult rj_flip_step(ChainState& state, const JointPosterior& post, const RjKernel& kernel, AcceptanceRule rule,
                        Eigen::Index index);

/// One reversible-jump chain seeded with `config.seed`.
ChainOutput run_rjmcmc(const RegressionData<double>& data, const SamplerConfig& config);

}  // namespace momsjump

#endif  // MOMSJUMP_RJMCMC_HPP
