#ifndef MOMSJUMP_CHAIN_HPP
#define MOMSJUMP_CHAIN_HPP

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <vector>

#include "momsjump/exact.hpp"
#include "momsjump/linmodel.hpp"
#include "momsjump/model_indicator.hpp"

namespace momsjump {

using Rng = std::mt19937_64;
using IndicatorMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Joint sampler state on R^p x {0,1}^p. Excluded coefficients are exactly 0.
struct ChainState {
  ModelIndicator gamma;
  Eigen::VectorXd beta;
  double mu = 0;
  double sigma2 = 1;
  double g = 1;
  Rng rng;
  std::uint64_t iteration = 0;
};

/// Full model at the OLS fit (or zero coefficients when the full Gram is
/// singular), residual variance, g = n.
ChainState initial_full_state(const RegressionData<double>& data, std::uint64_t seed);

/// gamma_i = 0 implies beta_i = 0, and included coefficients are non-zero.
bool satisfies_zero_coupling(const ModelIndicator& gamma, const Eigen::VectorXd& beta);

/// Unnormalized log p(gamma, beta, mu, sigma2, g | y) under the JZS prior and
/// the uniform model prior. Includes the model-dependent normalizing constant
/// |X_g'X_g|^{1/2} / (2 pi g sigma2)^{p_g/2} of the coefficient prior, so
/// differences across models of different size are meaningful.
class JointPosterior {
 public:
  explicit JointPosterior(const RegressionData<double>& data);

  const RegressionData<double>& data() const { return *data_; }

  double log_density(const ModelIndicator& gamma, const Eigen::VectorXd& beta, double mu, double sigma2,
                     double g) const;
  double log_density(const ChainState& s) const { return log_density(s.gamma, s.beta, s.mu, s.sigma2, s.g); }

  /// Residual sum of squares of the centered response at `beta`.
  double rss(const Eigen::VectorXd& beta) const;

 private:
  const RegressionData<double>* data_;
  GPriorSpec g_prior_;
};

double normal_log_pdf(double x, double mean, double sd);

/// A proposed single-indicator flip with every term of its log acceptance
/// ratio, shared by the MoMS and reversible-jump kernels.
struct FlipProposal {
  Eigen::Index index = 0;
  bool add = false;
  bool valid = true;  // false for probability-zero proposals (hard reject)
  ModelIndicator gamma;
  Eigen::VectorXd beta;
  double log_target_ratio = 0;
  double log_q_forward = 0;  // density of the generated auxiliary value (add)
  double log_q_reverse = 0;  // density of the recovered auxiliary value (delete)
  double log_ratio = 0;
};

/// Fills the target ratio and log_ratio of `prop` relative to `current`.
/// Throws NumericalError when the current state has a non-finite density.
void finish_flip(FlipProposal& prop, const ChainState& current, const JointPosterior& post);

/// Result of one flip attempt.
struct FlipResult {
  bool add = false;
  bool accepted = false;
  double accept_prob = 0;
  bool degenerate = false;
};

/// Post-warmup draws of one chain.
struct ChainOutput {
  IndicatorMatrix gamma_draws;  // T x p
  Eigen::MatrixXd beta_draws;   // T x p
  Eigen::VectorXd sigma2_draws;
  Eigen::VectorXd g_draws;
  std::vector<long> accept_counts;   // accepted between-model moves per predictor
  std::vector<long> propose_counts;  // attempted between-model moves per predictor
  std::vector<long> degenerate_counts;
  Eigen::VectorXd tau;  // proposal scales after warmup (empty when unused)
  double wall_time = 0;
  std::uint64_t seed = 0;
  int chain_id = 0;
  std::vector<std::string> predictor_names;

  Eigen::Index draws() const { return gamma_draws.rows(); }
};

}  // namespace momsjump

#endif  // MOMSJUMP_CHAIN_HPP
