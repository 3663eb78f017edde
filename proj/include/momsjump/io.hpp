#ifndef MOMSJUMP_IO_HPP
#define MOMSJUMP_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "momsjump/chain.hpp"
#include "momsjump/diagnostics.hpp"
#include "momsjump/exact.hpp"

namespace momsjump {

/// name,pip,bma_mean,bma_sd; one row per predictor.
void write_predictors_csv(const std::string& path, const std::vector<std::string>& names,
                          const PosteriorSummary& summary);

/// Top models with posterior probabilities (exact or visit frequencies).
nlohmann::json models_to_json(const std::vector<std::string>& names, const PosteriorSummary& summary);

/// Exact-enumeration summary: per-predictor pip, moments, inclusion Bayes
/// factor, plus the median probability model.
nlohmann::json exact_summary_to_json(const std::vector<std::string>& names, const PosteriorSummary& summary);

/// Sampler summary. Per predictor: name, pip, bma_mean, bma_sd, ess,
/// ess_per_iter, ess_per_sec, mcse, bf_incl. Undefined indicator statistics
/// are null with a `reason` field.
nlohmann::json chain_summary_to_json(const std::vector<std::string>& names, const ChainSummary& summary,
                                     const std::string& method);

/// One row per draw: gamma_<name>..., beta_<name>..., sigma2, g, preceded
/// by a `#` metadata line carrying chain id, seed, wall time, method and
/// between-model acceptance tallies.
void write_chain_csv(const std::string& path, const ChainOutput& output, const std::string& method);

struct ChainFile {
  ChainOutput output;
  std::string method;
};

/// Parses a file written by write_chain_csv. Errors name the file and line.
ChainFile read_chain_csv(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace momsjump

#endif  // MOMSJUMP_IO_HPP
