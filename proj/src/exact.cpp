#include "momsjump/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace momsjump {

double GPriorSpec::log_density(double g) const {
  if (!(g > 0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(g) - scale / g;
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

ShrinkageMoments shrinkage_moments(Eigen::Index n, std::size_t dim, double R2, const QuadratureConfig& quad) {
  ShrinkageMoments out;
  if (dim == 0) return out;
  if (n <= 3) throw NumericalError("at least four observations are needed for coefficient moments");

  const double nm1 = static_cast<double>(n - 1);
  const double k = static_cast<double>(dim);
  const GPriorSpec prior = GPriorSpec::jzs(n);
  const double one_minus_r2 = std::max(0.0, 1.0 - R2);

  // Log integrand on t = g/(1+g); dg/dt = (1+g)^2.
  auto log_h = [&](double t) {
    if (!(t > 0.0) || !(t < 1.0)) return -std::numeric_limits<double>::infinity();
    const double g = t / (1.0 - t);
    const double log1pg = -std::log1p(-t);
    return 0.5 * (nm1 - k) * log1pg - 0.5 * nm1 * std::log1p(one_minus_r2 * g) + prior.log_density(g) +
           2.0 * log1pg;
  };

  // Panel breaks at unit steps in log g, clipped to t < 1.
  std::vector<double> breaks{0.0};
  double shift = -std::numeric_limits<double>::infinity();
  for (int x = -40; x <= 40; ++x) {
    const double g = std::exp(static_cast<double>(x));
    const double t = g / (1.0 + g);
    if (!(t < 1.0) || !(t > breaks.back())) continue;
    breaks.push_back(t);
    for (int sub = 0; sub < 8; ++sub) {
      const double gs = std::exp(static_cast<double>(x) + sub / 8.0);
      shift = std::max(shift, log_h(gs / (1.0 + gs)));
    }
  }
  breaks.push_back(1.0);

  auto integrand = [&](double t) {
    Eigen::ArrayXd v(4);
    const double w = std::exp(log_h(t) - shift);
    v << w, w * t, w * t * t, w * t * (1.0 - R2 * t);
    return v;
  };
  const QuadratureResult res = integrate_gauss_kronrod(integrand, breaks, quad);
  if (!res.converged || !(res.value(0) > 0)) {
    std::ostringstream msg;
    msg << "quadrature for the g integral did not converge (relative error " << res.relative_error << ")";
    throw IntegrationError(msg.str(), res.relative_error);
  }
  out.log_bf = shift + std::log(res.value(0));
  out.mean_shrink = res.value(1) / res.value(0);
  out.mean_shrink_sq = res.value(2) / res.value(0);
  out.mean_shrink_resid = res.value(3) / res.value(0);
  out.relative_error = res.relative_error;
  return out;
}

double log_bf_vs_null(const RegressionData<double>& data, const ModelIndicator& gamma,
                      const QuadratureConfig& quad) {
  if (gamma.empty()) return 0.0;
  const auto fit = fit_model(data, gamma);
  return shrinkage_moments(data.n, gamma.size(), fit.R2, quad).log_bf;
}

std::vector<ModelScore> enumerate(const RegressionData<double>& data, const QuadratureConfig& quad) {
  if (data.p > kMaxEnumerationPredictors)
    throw EnumerationRefused("enumeration of 2^" + std::to_string(data.p) +
                             " models refused (limit p <= " + std::to_string(kMaxEnumerationPredictors) +
                             "); use the moms or rjmcmc samplers instead");

  const std::size_t p = static_cast<std::size_t>(data.p);
  const std::uint64_t count = std::uint64_t{1} << p;
  std::vector<ModelScore> scores(count);

  auto score_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      ModelScore& s = scores[mask];
      s.gamma = ModelIndicator::from_mask(p, mask);
      s.dim = s.gamma.size();
      if (s.dim == 0) continue;
      const auto fit = fit_model(data, s.gamma);
      s.R2 = fit.R2;
      s.log_bf_vs_null = shrinkage_moments(data.n, s.dim, fit.R2, quad).log_bf;
    }
  };

  const std::uint64_t workers =
      std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(1, count / 64));
  if (workers <= 1) {
    score_range(0, count);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      const std::uint64_t chunk = (count + workers - 1) / workers;
      for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            score_range(w * chunk, std::min(count, (w + 1) * chunk));
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::sort(scores.begin(), scores.end(), [](const ModelScore& a, const ModelScore& b) { return a.gamma < b.gamma; });

  // Uniform model prior: posterior odds equal Bayes factors.
  std::vector<double> log_bf(scores.size());
  std::transform(scores.begin(), scores.end(), log_bf.begin(), [](const ModelScore& s) { return s.log_bf_vs_null; });
  const double log_norm = log_sum_exp(log_bf);
  for (auto& s : scores) s.log_post_prob = s.log_bf_vs_null - log_norm;
  return scores;
}

ModelMoments model_conditional_moments(const RegressionData<double>& data, const ModelIndicator& gamma,
                                       const QuadratureConfig& quad) {
  ModelMoments m;
  if (gamma.empty()) return m;
  const auto fit = fit_model(data, gamma);
  const auto sm = shrinkage_moments(data.n, gamma.size(), fit.R2, quad);

  // Given g: beta ~ t_{n-1}(t * beta_hat, (yty (1 - t R2) / (n - 1)) t (X'X)^{-1}),
  // whose covariance uses yty (1 - t R2) / (n - 3).
  const double resid_scale = data.yty * sm.mean_shrink_resid / static_cast<double>(data.n - 3);
  const double var_shrink = std::max(0.0, sm.mean_shrink_sq - sm.mean_shrink * sm.mean_shrink);
  m.mean = sm.mean_shrink * fit.beta_hat;
  m.sd = (resid_scale * fit.XtX_sub_inv.diagonal().array() + var_shrink * fit.beta_hat.array().square()).sqrt();
  return m;
}

PosteriorSummary summarize_exact(const std::vector<ModelScore>& scores, const RegressionData<double>& data,
                                 const QuadratureConfig& quad, std::size_t top_k) {
  const std::size_t p = static_cast<std::size_t>(data.p);
  if (p > 63 || scores.size() != (std::uint64_t{1} << p))
    throw DataError("inconsistent enumeration: expected 2^p model scores");
  std::vector<const ModelScore*> sorted;
  sorted.reserve(scores.size());
  for (const auto& s : scores) {
    if (s.gamma.dim() != p) throw DataError("inconsistent enumeration: model of wrong dimension");
    sorted.push_back(&s);
  }
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->gamma < b->gamma; });
  for (std::size_t j = 1; j < sorted.size(); ++j)
    if (sorted[j]->gamma == sorted[j - 1]->gamma)
      throw DataError("inconsistent enumeration: duplicate model " + sorted[j]->gamma.to_string());

  PosteriorSummary out;
  out.pip = Eigen::VectorXd::Zero(data.p);
  Eigen::VectorXd first = Eigen::VectorXd::Zero(data.p);
  Eigen::VectorXd second = Eigen::VectorXd::Zero(data.p);
  for (const ModelScore* s : sorted) {
    const double w = std::exp(s->log_post_prob);
    if (s->gamma.empty()) continue;
    const auto idx = s->gamma.included();
    const auto mm = model_conditional_moments(data, s->gamma, quad);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const auto e = idx[j];
      out.pip(e) += w;
      first(e) += w * mm.mean(j);
      second(e) += w * (mm.sd(j) * mm.sd(j) + mm.mean(j) * mm.mean(j));
    }
  }
  out.pip = out.pip.cwiseMin(1.0);
  out.bma_mean = first;
  out.bma_sd = (second - first.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();

  std::vector<const ModelScore*> ranked = sorted;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](auto* a, auto* b) { return a->log_post_prob > b->log_post_prob; });
  for (std::size_t j = 0; j < std::min(top_k, ranked.size()); ++j)
    out.top_models.emplace_back(ranked[j]->gamma, std::exp(ranked[j]->log_post_prob));
  return out;
}

}  // namespace momsjump
