#include "momsjump/moms.hpp"

#include <cmath>
#include <random>

#include "momsjump/sampler.hpp"

namespace momsjump {

FlipProposal moms_flip_proposal(const ChainState& state, const JointPosterior& post, const ProposalScales& scales,
                                Eigen::Index index, double beta_star) {
  FlipProposal prop;
  prop.index = index;
  prop.add = !state.gamma[static_cast<std::size_t>(index)];
  prop.gamma = state.gamma.flipped(static_cast<std::size_t>(index));
  prop.beta = state.beta;
  const double tau = scales.tau(index);
  if (prop.add) {
    prop.valid = beta_star != 0.0;
    prop.beta(index) = beta_star;
    prop.log_q_forward = normal_log_pdf(beta_star, state.beta(index), tau);
  } else {
    prop.beta(index) = 0.0;
    prop.log_q_reverse = normal_log_pdf(state.beta(index), 0.0, tau);
  }
  finish_flip(prop, state, post);
  return prop;
}

FlipResult moms_flip_step(ChainState& state, const JointPosterior& post, const ProposalScales& scales,
                          AcceptanceRule rule, Eigen::Index index) {
  double beta_star = 0.0;
  if (!state.gamma[static_cast<std::size_t>(index)]) {
    std::normal_distribution<double> normal(state.beta(index), scales.tau(index));
    beta_star = normal(state.rng);
  }
  FlipProposal prop = moms_flip_proposal(state, post, scales, index, beta_star);

  FlipResult r;
  r.add = prop.add;
  r.accept_prob = accept_prob(rule, prop.log_ratio);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  r.accepted = unif(state.rng) < r.accept_prob;
  if (r.accepted) {
    state.gamma = std::move(prop.gamma);
    state.beta = std::move(prop.beta);
  }
  return r;
}

void within_model_gibbs(ChainState& state, const RegressionData<double>& data) {
  const double n = static_cast<double>(data.n);
  std::normal_distribution<double> std_normal(0.0, 1.0);

  state.mu = data.y_mean + std::sqrt(state.sigma2 / n) * std_normal(state.rng);

  const auto idx = state.gamma.included();
  const auto k = static_cast<Eigen::Index>(idx.size());
  double quad = 0.0;
  if (k > 0) {
    SubGramFactor<double> factor(data, idx);
    if (!factor.ok)
      throw RankDeficiencyError("within-model update: Gram submatrix of " + describe_model(data, state.gamma) +
                                " is singular");
    const double shrink = state.g / (1.0 + state.g);
    const Eigen::VectorXd beta_hat = factor.llt.solve(Eigen::VectorXd(data.Xty(idx)));
    Eigen::VectorXd draw(k);
    do {
      Eigen::VectorXd z(k);
      for (Eigen::Index j = 0; j < k; ++j) z(j) = std_normal(state.rng);
      draw = shrink * beta_hat +
             std::sqrt(state.sigma2 * shrink) * factor.llt.matrixU().solve(z);
    } while ((draw.array() == 0.0).any());
    state.beta.setZero();
    state.beta(idx) = draw;
    quad = draw.dot(sub_gram(data, idx) * draw);
  }

  const double rss = data.yty - 2.0 * state.beta.dot(data.Xty) + state.beta.dot(data.XtX * state.beta);
  const double dmu = state.mu - data.y_mean;
  const double kd = static_cast<double>(k);
  state.sigma2 = draw_inverse_gamma(state.rng, 0.5 * (n + kd),
                                    0.5 * (std::max(rss, 0.0) + n * dmu * dmu + quad / state.g));
  state.g = draw_inverse_gamma(state.rng, 0.5 * (kd + 1.0), 0.5 * n + 0.5 * quad / state.sigma2);
}

ProposalScales adapt_on_full_model(ChainState& state, const JointPosterior& post, const SamplerConfig& config) {
  const auto& data = post.data();
  ProposalScales scales = ProposalScales::uniform(data.p, config.tau_init, config.phi, config.target_accept);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (long t = 0; t < config.warmup; ++t) {
    for (Eigen::Index i = 0; i < data.p; ++i) {
      std::normal_distribution<double> normal(state.beta(i), scales.tau(i));
      const double proposal = normal(state.rng);
      bool accepted = false;
      if (proposal != 0.0) {
        const double lp_cur = post.log_density(state);
        Eigen::VectorXd beta = state.beta;
        beta(i) = proposal;
        const double lp_new = post.log_density(state.gamma, beta, state.mu, state.sigma2, state.g);
        accepted = unif(state.rng) < accept_prob(config.acceptance_rule, lp_new - lp_cur);
        if (accepted) state.beta(i) = proposal;
      }
      rm_update_in_place(scales, i, t, accepted);
    }
    within_model_gibbs(state, data);
  }
  scales.adapting = false;
  return scales;
}

ChainOutput run_moms(const RegressionData<double>& data, const SamplerConfig& config) {
  config.validate();
  if (!data.full_rank)
    throw RankDeficiencyError("MoMS warmup adapts on the full model, which requires a full-rank design");
  JointPosterior post(data);
  ChainState state = initial_full_state(data, config.seed);
  const ProposalScales scales = adapt_on_full_model(state, post, config);
  ChainOutput out = sample_chain(state, post, config, [&](ChainState& s, Eigen::Index i) {
    return moms_flip_step(s, post, scales, config.acceptance_rule, i);
  });
  out.tau = scales.tau;
  return out;
}

}  // namespace momsjump
