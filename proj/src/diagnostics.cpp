#include "momsjump/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "momsjump/errors.hpp"

namespace momsjump {

double tau_int_two_state(double a, double b) { return (2.0 - (a + b)) / (a + b); }

IndicatorChainStats indicator_ess_from_counts(long n00, long n01, long n10, long n11, long ones, long length) {
  IndicatorChainStats s;
  s.n00 = n00;
  s.n01 = n01;
  s.n10 = n10;
  s.n11 = n11;
  s.length = length;
  s.pip_hat = length > 0 ? static_cast<double>(ones) / static_cast<double>(length) : 0.0;

  const long from0 = n00 + n01;
  const long from1 = n10 + n11;
  if (from0 == 0 || from1 == 0) {
    s.reason = (ones == length) ? "indicator included in every draw" : (ones == 0 ? "indicator excluded in every draw"
                                                                                  : "only one state has outgoing transitions");
    s.a_hat = from0 > 0 ? static_cast<double>(n01) / static_cast<double>(from0) : 0.0;
    s.b_hat = from1 > 0 ? static_cast<double>(n10) / static_cast<double>(from1) : 0.0;
    return s;
  }
  s.defined = true;
  s.a_hat = static_cast<double>(n01) / static_cast<double>(from0);
  s.b_hat = static_cast<double>(n10) / static_cast<double>(from1);
  const double ab = s.a_hat + s.b_hat;
  s.tau_int = tau_int_two_state(s.a_hat, s.b_hat);
  if (ab >= 2.0) {
    s.super_efficient = true;
    s.tau_int = 0.0;
    s.ess = static_cast<double>(length);
  } else {
    s.ess = static_cast<double>(length) / s.tau_int;
  }
  s.mcse = std::sqrt(s.pip_hat * (1.0 - s.pip_hat) / s.ess);
  return s;
}

IndicatorChainStats indicator_ess(std::span<const std::uint8_t> chain) {
  if (chain.size() < 2) throw DataError("indicator ESS needs at least two draws");
  long c[2][2] = {{0, 0}, {0, 0}};
  long ones = chain[0] ? 1 : 0;
  for (std::size_t t = 1; t < chain.size(); ++t) {
    ++c[chain[t - 1] ? 1 : 0][chain[t] ? 1 : 0];
    ones += chain[t] ? 1 : 0;
  }
  return indicator_ess_from_counts(c[0][0], c[0][1], c[1][0], c[1][1], ones, static_cast<long>(chain.size()));
}

InclusionBayesFactor inclusion_bayes_factor(double pip, double prior_incl) {
  if (!(prior_incl > 0.0 && prior_incl < 1.0)) throw ConfigError("prior inclusion probability must lie in (0, 1)");
  if (!(pip >= 0.0 && pip <= 1.0)) throw DataError("posterior inclusion probability must lie in [0, 1]");
  InclusionBayesFactor bf;
  if (pip <= 0.0 || pip >= 1.0) {
    bf.saturated = true;
    bf.value = pip >= 1.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    return bf;
  }
  bf.value = (pip / (1.0 - pip)) / (prior_incl / (1.0 - prior_incl));
  return bf;
}

ModelIndicator median_probability_model(const Eigen::VectorXd& pips) {
  ModelIndicator m(static_cast<std::size_t>(pips.size()));
  for (Eigen::Index j = 0; j < pips.size(); ++j) m.set(static_cast<std::size_t>(j), pips(j) > 0.5);
  return m;
}

double batch_means_mcse(std::span<const double> x) {
  const std::size_t T = x.size();
  if (T < 4) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t batches = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(T))));
  const std::size_t len = T / batches;
  std::vector<double> means(batches);
  double grand = 0;
  for (std::size_t b = 0; b < batches; ++b) {
    double s = 0;
    for (std::size_t t = b * len; t < (b + 1) * len; ++t) s += x[t];
    means[b] = s / static_cast<double>(len);
    grand += means[b];
  }
  grand /= static_cast<double>(batches);
  double var = 0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= static_cast<double>(batches - 1);
  // Variance of a batch mean estimates sigma^2 tau / len; scale to T draws.
  return std::sqrt(var * static_cast<double>(len) / static_cast<double>(T));
}

ChainSummary summarize_chains(std::span<const ChainOutput> outputs, std::size_t top_k) {
  if (outputs.empty() || outputs.front().draws() == 0) throw DataError("cannot summarize an empty chain");
  const Eigen::Index p = outputs.front().gamma_draws.cols();

  ChainSummary out;
  out.chains = static_cast<int>(outputs.size());
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd incl = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd mcse_sq = Eigen::VectorXd::Zero(p);
  std::vector<std::array<long, 5>> counts(static_cast<std::size_t>(p), {0, 0, 0, 0, 0});
  std::map<ModelIndicator, long> visits;
  std::vector<long> accepted(static_cast<std::size_t>(p), 0), proposed(static_cast<std::size_t>(p), 0);

  for (const auto& o : outputs) {
    if (o.gamma_draws.cols() != p || o.beta_draws.cols() != p || o.beta_draws.rows() != o.draws())
      throw DataError("chains disagree on dimensions");
    const Eigen::Index T = o.draws();
    out.draws += T;
    out.wall_time += o.wall_time;
    for (Eigen::Index j = 0; j < p; ++j) {
      const auto col = o.beta_draws.col(j);
      sum(j) += col.sum();
      sum_sq(j) += col.squaredNorm();
      const Eigen::VectorXd colv = col;
      const double m = batch_means_mcse({colv.data(), static_cast<std::size_t>(T)});
      mcse_sq(j) += (std::isfinite(m) ? m * m : 0.0) * static_cast<double>(T) * static_cast<double>(T);

      auto& c = counts[static_cast<std::size_t>(j)];
      const std::uint8_t* g = o.gamma_draws.col(j).data();
      for (Eigen::Index t = 0; t < T; ++t) {
        c[4] += g[t];
        if (t > 0) ++c[static_cast<std::size_t>(2 * g[t - 1] + g[t])];
      }
    }
    for (Eigen::Index t = 0; t < T; ++t) {
      ModelIndicator m(static_cast<std::size_t>(p));
      for (Eigen::Index j = 0; j < p; ++j) m.set(static_cast<std::size_t>(j), o.gamma_draws(t, j) != 0);
      ++visits[m];
    }
    for (std::size_t j = 0; j < o.accept_counts.size() && j < accepted.size(); ++j) {
      accepted[j] += o.accept_counts[j];
      proposed[j] += o.propose_counts[j];
    }
  }

  const double N = static_cast<double>(out.draws);
  out.posterior.pip.resize(p);
  out.posterior.bma_mean = sum / N;
  out.posterior.bma_sd =
      (sum_sq / N - out.posterior.bma_mean.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();
  out.bma_mean_mcse = mcse_sq.cwiseSqrt() / N;
  out.ess_per_iter = Eigen::VectorXd::Constant(p, std::numeric_limits<double>::quiet_NaN());
  out.ess_per_sec = out.ess_per_iter;

  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& c = counts[static_cast<std::size_t>(j)];
    IndicatorChainStats s = indicator_ess_from_counts(c[0], c[1], c[2], c[3], c[4], out.draws);
    out.posterior.pip(j) = s.pip_hat;
    if (s.defined) {
      out.ess_per_iter(j) = s.ess / N;
      if (out.wall_time > 0) out.ess_per_sec(j) = s.ess / out.wall_time;
    }
    out.bf_incl.push_back(inclusion_bayes_factor(s.pip_hat, 0.5));
    out.indicators.push_back(std::move(s));
    const auto sj = static_cast<std::size_t>(j);
    out.accept_rate.push_back(proposed[sj] > 0 ? static_cast<double>(accepted[sj]) / static_cast<double>(proposed[sj])
                                               : std::numeric_limits<double>::quiet_NaN());
  }

  std::vector<std::pair<ModelIndicator, long>> ranked(visits.begin(), visits.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  for (std::size_t k = 0; k < std::min(top_k, ranked.size()); ++k)
    out.posterior.top_models.emplace_back(ranked[k].first, static_cast<double>(ranked[k].second) / N);
  return out;
}

ChainSummary summarize_chain(const ChainOutput& output, std::size_t top_k) {
  return summarize_chains(std::span<const ChainOutput>(&output, 1), top_k);
}

}  // namespace momsjump
