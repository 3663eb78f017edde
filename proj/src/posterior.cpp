#include "momsjump/chain.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace momsjump {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}  // namespace

ChainState initial_full_state(const RegressionData<double>& data, std::uint64_t seed) {
  ChainState s;
  s.rng.seed(seed);
  s.gamma = ModelIndicator(static_cast<std::size_t>(data.p), true);
  s.mu = data.y_mean;
  s.g = static_cast<double>(data.n);
  s.beta = Eigen::VectorXd::Zero(data.p);
  const double dof = static_cast<double>(data.n - data.p - 1);
  if (data.full_rank && data.p > 0) {
    const auto fit = fit_model(data, s.gamma);
    s.beta = fit.beta_hat;
    s.sigma2 = dof > 0 ? fit.rss / dof : data.yty / static_cast<double>(data.n - 1);
  } else {
    s.sigma2 = data.yty / static_cast<double>(data.n - 1);
  }
  // A coefficient of exactly zero lies outside the slab support.
  for (Eigen::Index j = 0; j < data.p; ++j)
    if (s.beta(j) == 0.0) s.beta(j) = 1e-8;
  return s;
}

bool satisfies_zero_coupling(const ModelIndicator& gamma, const Eigen::VectorXd& beta) {
  if (static_cast<Eigen::Index>(gamma.dim()) != beta.size()) return false;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const bool in = gamma[static_cast<std::size_t>(j)];
    if (in == (beta(j) == 0.0)) return false;
  }
  return true;
}

JointPosterior::JointPosterior(const RegressionData<double>& data)
    : data_(&data), g_prior_(GPriorSpec::jzs(data.n)) {}

double JointPosterior::rss(const Eigen::VectorXd& beta) const {
  return data_->yty - 2.0 * beta.dot(data_->Xty) + beta.dot(data_->XtX * beta);
}

double JointPosterior::log_density(const ModelIndicator& gamma, const Eigen::VectorXd& beta, double mu,
                                   double sigma2, double g) const {
  if (!(sigma2 > 0) || !(g > 0)) return kNegInf;
  if (!satisfies_zero_coupling(gamma, beta)) return kNegInf;
  const auto& d = *data_;
  const double n = static_cast<double>(d.n);
  const double log_s2 = std::log(sigma2);

  const double quad = beta.dot(d.XtX * beta);
  const double rss = d.yty - 2.0 * beta.dot(d.Xty) + quad;
  const double dmu = mu - d.y_mean;

  // Likelihood and the Jeffreys prior 1/sigma2 on (mu, sigma2).
  double lp = -0.5 * n * (kLog2Pi + log_s2) - 0.5 * (rss + n * dmu * dmu) / sigma2 - log_s2;
  lp += g_prior_.log_density(g);

  const std::size_t k = gamma.size();
  if (k > 0) {
    SubGramFactor<double> factor(d, gamma.included());
    if (!factor.ok) return kNegInf;
    const double kd = static_cast<double>(k);
    lp += -0.5 * kd * (kLog2Pi + std::log(g) + log_s2) + 0.5 * factor.log_det - 0.5 * quad / (g * sigma2);
  }
  return lp;
}

double normal_log_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * kLog2Pi - std::log(sd) - 0.5 * z * z;
}

void finish_flip(FlipProposal& prop, const ChainState& current, const JointPosterior& post) {
  const double lp_cur = post.log_density(current);
  if (!std::isfinite(lp_cur))
    throw NumericalError("non-finite log posterior at the current state (model " + current.gamma.to_string() + ")");
  if (!prop.valid) {
    prop.log_target_ratio = kNegInf;
    prop.log_ratio = kNegInf;
    return;
  }
  const double lp_new = post.log_density(prop.gamma, prop.beta, current.mu, current.sigma2, current.g);
  prop.log_target_ratio = lp_new - lp_cur;
  prop.log_ratio = prop.log_target_ratio + prop.log_q_reverse - prop.log_q_forward;
  if (std::isnan(prop.log_ratio)) prop.log_ratio = kNegInf;
}

}  // namespace momsjump
