#include "momsjump/sampler.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include "momsjump/moms.hpp"
#include "momsjump/rjmcmc.hpp"

namespace momsjump {

double draw_inverse_gamma(Rng& rng, double shape, double scale) {
  std::gamma_distribution<double> gamma(shape, 1.0);
  double x = scale / gamma(rng);
  if (!(x > 0.0) || !std::isfinite(x)) {
    static std::once_flag warned;
    std::call_once(warned, [] { std::clog << "warning: variance draw underflowed; flooring at 1e-300\n"; });
    x = std::isfinite(x) ? 1e-300 : 1e300;
  }
  return std::max(x, 1e-300);
}

ChainOutput sample_chain(ChainState& state, const JointPosterior& post, const SamplerConfig& config,
                         const FlipKernel& flip) {
  const auto& data = post.data();
  const Eigen::Index p = data.p;
  const Eigen::Index T = config.iterations;

  ChainOutput out;
  out.predictor_names = data.predictor_names;
  out.seed = config.seed;
  out.gamma_draws.resize(T, p);
  out.beta_draws.resize(T, p);
  out.sigma2_draws.resize(T);
  out.g_draws.resize(T);
  out.accept_counts.assign(static_cast<std::size_t>(p), 0);
  out.propose_counts.assign(static_cast<std::size_t>(p), 0);
  out.degenerate_counts.assign(static_cast<std::size_t>(p), 0);

  std::uniform_int_distribution<Eigen::Index> pick(0, std::max<Eigen::Index>(p - 1, 0));
  const auto start = std::chrono::steady_clock::now();
  for (Eigen::Index t = 0; t < T; ++t) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const Eigen::Index i = config.scan_order == ScanOrder::systematic ? j : pick(state.rng);
      const FlipResult r = flip(state, i);
      const auto si = static_cast<std::size_t>(i);
      ++out.propose_counts[si];
      if (r.accepted) ++out.accept_counts[si];
      if (r.degenerate) ++out.degenerate_counts[si];
    }
    within_model_gibbs(state, data);
    ++state.iteration;

    for (Eigen::Index j = 0; j < p; ++j) out.gamma_draws(t, j) = state.gamma[static_cast<std::size_t>(j)] ? 1 : 0;
    out.beta_draws.row(t) = state.beta.transpose();
    out.sigma2_draws(t) = state.sigma2;
    out.g_draws(t) = state.g;
  }
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<ChainOutput> run_chains(const RegressionData<double>& data, const SamplerConfig& config) {
  config.validate();
  if (config.method == Method::enumerate) throw ConfigError("run_chains requires method moms or rjmcmc");

  const int chains = config.chains;
  std::vector<ChainOutput> outputs(static_cast<std::size_t>(chains));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chains));

  auto run_one = [&](int k) {
    SamplerConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(k);
    try {
      ChainOutput out = config.method == Method::moms ? run_moms(data, c) : run_rjmcmc(data, c);
      out.chain_id = k;
      outputs[static_cast<std::size_t>(k)] = std::move(out);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(chains));
    for (int k = 0; k < chains; ++k) pool.emplace_back(run_one, k);
  }

  for (int k = 0; k < chains; ++k) {
    if (!errors[static_cast<std::size_t>(k)]) continue;
    try {
      std::rethrow_exception(errors[static_cast<std::size_t>(k)]);
    } catch (const Error& e) {
      const std::string msg = "chain " + std::to_string(k) + ": " + e.what();
      if (e.code() == ExitCode::numerical) throw NumericalError(msg);
      if (e.code() == ExitCode::data) throw DataError(msg);
      throw ConfigError(msg);
    }
  }
  return outputs;
}

}  // namespace momsjump
