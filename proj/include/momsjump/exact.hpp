#ifndef MOMSJUMP_EXACT_HPP
#define MOMSJUMP_EXACT_HPP

#include <Eigen/Core>

#include <span>
#include <utility>
#include <vector>

#include "momsjump/linmodel.hpp"
#include "momsjump/model_indicator.hpp"
#include "momsjump/quadrature.hpp"

namespace momsjump {

inline constexpr Eigen::Index kMaxEnumerationPredictors = 25;

/// Inverse-Gamma hyper-prior on g; the JZS choice is shape 1/2, scale n/2.
struct GPriorSpec {
  double shape = 0.5;
  double scale = 0.5;

  static GPriorSpec jzs(Eigen::Index n) { return {0.5, 0.5 * static_cast<double>(n)}; }
  double log_density(double g) const;
};

struct ModelScore {
  ModelIndicator gamma;
  double log_bf_vs_null = 0;
  double log_post_prob = 0;
  double R2 = 0;
  std::size_t dim = 0;
};

struct PosteriorSummary {
  Eigen::VectorXd pip;
  Eigen::VectorXd bma_mean;
  Eigen::VectorXd bma_sd;
  std::vector<std::pair<ModelIndicator, double>> top_models;
};

/// Posterior expectations over g for one model, scaled so that the Bayes
/// factor and the coefficient moments come out of a single integration.
struct ShrinkageMoments {
  double log_bf = 0;              // log of the normalizing integral
  double mean_shrink = 0;         // E[g/(1+g) | y]
  double mean_shrink_sq = 0;      // E[(g/(1+g))^2 | y]
  double mean_shrink_resid = 0;   // E[(g/(1+g)) (1 - R2 g/(1+g)) | y]
  double relative_error = 0;
};

/// Integrates the JZS marginal likelihood ratio for a model with `dim`
/// predictors and coefficient of determination `R2`, on t = g/(1+g).
ShrinkageMoments shrinkage_moments(Eigen::Index n, std::size_t dim, double R2, const QuadratureConfig& quad = {});

double log_bf_vs_null(const RegressionData<double>& data, const ModelIndicator& gamma,
                      const QuadratureConfig& quad = {});

/// Scores every model in {0,1}^p under the uniform model prior, in canonical
/// (lexicographic) order with normalized log posterior probabilities.
std::vector<ModelScore> enumerate(const RegressionData<double>& data, const QuadratureConfig& quad = {});

struct ModelMoments {
  Eigen::VectorXd mean;  // length p_gamma, included predictors in ascending order
  Eigen::VectorXd sd;
};

/// Posterior mean and standard deviation of the included coefficients under
/// model `gamma`, integrating the g-conditional moments over p(g | y).
ModelMoments model_conditional_moments(const RegressionData<double>& data, const ModelIndicator& gamma,
                                       const QuadratureConfig& quad = {});

PosteriorSummary summarize_exact(const std::vector<ModelScore>& scores, const RegressionData<double>& data,
                                 const QuadratureConfig& quad = {}, std::size_t top_k = 10);

/// log(sum(exp(x))) without overflow.
double log_sum_exp(std::span<const double> x);

}  // namespace momsjump

#endif  // MOMSJUMP_EXACT_HPP
