#include "momsjump/rjmcmc.hpp"

#include <cmath>
#include <random>

#include "momsjump/moms.hpp"
#include "momsjump/sampler.hpp"

namespace momsjump {

FullModelAnchor compute_anchor(const RegressionData<double>& data) {
  if (data.n <= data.p + 1 || !data.full_rank)
    throw RankDeficiencyError(
        "full-model anchor unavailable: the design is under-determined or rank deficient (use the moms sampler)");
  const auto fit = fit_model(data, ModelIndicator(static_cast<std::size_t>(data.p), true));
  FullModelAnchor a;
  a.beta_star_hat = fit.beta_hat;
  a.eta_hat = data.X_centered * a.beta_star_hat;
  a.Xt_eta = data.XtX * a.beta_star_hat;
  a.sigma2_star_hat = fit.rss / static_cast<double>(data.n - data.p - 1);
  if (!(a.sigma2_star_hat > 0)) throw RankDeficiencyError("full-model anchor has zero residual variance");
  return a;
}

ForsterParams forster_proposal_params(const RegressionData<double>& data, const ModelIndicator& gamma_current,
                                      Eigen::Index index, const FullModelAnchor& anchor) {
  ForsterParams fp;
  ModelIndicator cond = gamma_current;
  cond.set(static_cast<std::size_t>(index), false);
  fp.conditioning = cond.included();

  const double ss = data.XtX(index, index);
  double s_rs = ss;
  double s_reta = anchor.Xt_eta(index);
  if (!fp.conditioning.empty()) {
    SubGramFactor<double> factor(data, fp.conditioning);
    if (!factor.ok)
      throw DegenerateProposalError("conditioning model " + describe_model(data, cond) + " has a singular Gram matrix");
    const Eigen::VectorXd Xs = data.XtX(fp.conditioning, index);
    fp.shift = factor.llt.solve(Xs);
    s_rs -= Xs.dot(fp.shift);
    s_reta -= fp.shift.dot(anchor.Xt_eta(fp.conditioning));
  } else {
    fp.shift.resize(0);
  }
  if (!(s_rs > 1e-12 * ss))
    throw DegenerateProposalError("column '" + data.predictor_names[static_cast<std::size_t>(index)] +
                                  "' is collinear with the conditioning model");
  fp.variance = anchor.sigma2_star_hat / s_rs;
  fp.mean = fp.variance * s_reta / anchor.sigma2_star_hat;
  fp.sd = std::sqrt(fp.variance);
  return fp;
}

Eigen::MatrixXd add_transform_matrix(const Eigen::VectorXd& shift) {
  const Eigen::Index k = shift.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(k + 1, k + 1);
  m.topRightCorner(k, 1) = -shift;
  return m;
}

Eigen::VectorXd apply_add_transform(const Eigen::VectorXd& beta_conditioning, double u, const Eigen::VectorXd& shift) {
  Eigen::VectorXd out(beta_conditioning.size() + 1);
  out.head(beta_conditioning.size()) = beta_conditioning - shift * u;
  out(beta_conditioning.size()) = u;
  return out;
}

std::pair<Eigen::VectorXd, double> apply_delete_transform(const Eigen::VectorXd& beta_extended,
                                                          const Eigen::VectorXd& shift) {
  const Eigen::Index k = beta_extended.size() - 1;
  const double u = beta_extended(k);
  return {beta_extended.head(k) + shift * u, u};
}

ForsterParams rj_move_params(const ChainState& state, const RegressionData<double>& data, const RjKernel& kernel,
                             Eigen::Index index) {
  if (kernel.transform == RjTransform::forster) return forster_proposal_params(data, state.gamma, index, *kernel.anchor);
  ForsterParams fp;
  ModelIndicator cond = state.gamma;
  cond.set(static_cast<std::size_t>(index), false);
  fp.conditioning = cond.included();
  const double tau = kernel.scales->tau(index);
  fp.mean = 0.0;  // beta_i is 0 whenever i is excluded
  fp.variance = tau * tau;
  fp.sd = tau;
  return fp;
}

FlipProposal rj_flip_proposal(const ChainState& state, const JointPosterior& post, const ForsterParams& params,
                              Eigen::Index index, double u, AddDeleteProposal* record) {
  FlipProposal prop;
  prop.index = index;
  prop.add = !state.gamma[static_cast<std::size_t>(index)];
  prop.gamma = state.gamma.flipped(static_cast<std::size_t>(index));
  prop.beta = state.beta;
  const double sd = params.sd;
  const bool shifted = params.shift.size() > 0;
  const auto& cond = params.conditioning;

  if (prop.add) {
    prop.valid = u != 0.0;
    if (shifted) {
      const Eigen::VectorXd moved = apply_add_transform(state.beta(cond), u, params.shift);
      prop.beta(cond) = moved.head(static_cast<Eigen::Index>(cond.size()));
    }
    prop.beta(index) = u;
    prop.log_q_forward = normal_log_pdf(u, params.mean, sd);
  } else {
    u = state.beta(index);
    if (shifted) {
      Eigen::VectorXd extended(static_cast<Eigen::Index>(cond.size()) + 1);
      extended << state.beta(cond), u;
      prop.beta(cond) = apply_delete_transform(extended, params.shift).first;
    }
    prop.beta(index) = 0.0;
    prop.log_q_reverse = normal_log_pdf(u, params.mean, sd);
  }
  if (record)
    *record = {index, prop.add ? MoveDirection::add : MoveDirection::remove, params.mean, params.variance, u};
  finish_flip(prop, state, post);
  return prop;
}

FlipResult rj_flip_step(ChainState& state, const JointPosterior& post, const RjKernel& kernel, AcceptanceRule rule,
                        Eigen::Index index) {
  FlipResult r;
  r.add = !state.gamma[static_cast<std::size_t>(index)];
  ForsterParams params;
  try {
    params = rj_move_params(state, post.data(), kernel, index);
  } catch (const DegenerateProposalError&) {
    r.degenerate = true;
    return r;
  }
  double u = 0.0;
  if (r.add) {
    std::normal_distribution<double> normal(params.mean, params.sd);
    u = normal(state.rng);
  }
  FlipProposal prop = rj_flip_proposal(state, post, params, index, u);
  r.accept_prob = accept_prob(rule, prop.log_ratio);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  r.accepted = unif(state.rng) < r.accept_prob;
  if (r.accepted) {
    state.gamma = std::move(prop.gamma);
    state.beta = std::move(prop.beta);
  }
  return r;
}

ChainOutput run_rjmcmc(const RegressionData<double>& data, const SamplerConfig& config) {
  config.validate();
  JointPosterior post(data);
  ChainState state = initial_full_state(data, config.seed);
  const FullModelAnchor anchor = compute_anchor(data);

  RjKernel kernel;
  kernel.transform = config.rj_transform;
  kernel.anchor = &anchor;
  ProposalScales scales;
  if (config.rj_transform == RjTransform::identity) {
    scales = adapt_on_full_model(state, post, config);
    kernel.scales = &scales;
  }
  const FlipKernel flip = [&](ChainState& s, Eigen::Index i) {
    return rj_flip_step(s, post, kernel, config.acceptance_rule, i);
  };

  if (config.rj_transform == RjTransform::forster && config.warmup > 0) {
    SamplerConfig burn = config;
    burn.iterations = config.warmup;
    sample_chain(state, post, burn, flip);
  }
  ChainOutput out = sample_chain(state, post, config, flip);
  if (config.rj_transform == RjTransform::identity) out.tau = scales.tau;
  return out;
}

}  // namespace momsjump
