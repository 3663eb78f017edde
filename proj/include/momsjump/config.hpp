#ifndef MOMSJUMP_CONFIG_HPP
#define MOMSJUMP_CONFIG_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "momsjump/tuning.hpp"

namespace momsjump {

enum class Method { enumerate, moms, rjmcmc };
enum class ScanOrder { systematic, random };
enum class RjTransform { forster, identity };

/// Run-control knobs shared by every backend. Keys in the JSON config file
/// match the member names.
struct SamplerConfig {
  Method method = Method::moms;
  long iterations = 50000;
  long warmup = 5000;
  int chains = 4;
  std::uint64_t seed = 1;
  double phi = 0.75;
  double target_accept = 0.44;
  double tau_init = 1.0;
  AcceptanceRule acceptance_rule = AcceptanceRule::metropolis;
  ScanOrder scan_order = ScanOrder::systematic;
  RjTransform rj_transform = RjTransform::forster;
  double quad_tolerance = 1e-8;
  int top_k = 10;

  /// Throws ConfigError when a value is out of range.
  void validate() const;
};

Method parse_method(const std::string& s);
ScanOrder parse_scan_order(const std::string& s);
RjTransform parse_rj_transform(const std::string& s);
std::string to_string(Method m);
std::string to_string(ScanOrder s);
std::string to_string(RjTransform t);

/// Overlays the keys present in `j` onto `base`. Unknown keys are rejected.
SamplerConfig config_from_json(const nlohmann::json& j, SamplerConfig base = {});
SamplerConfig config_from_file(const std::string& path, SamplerConfig base = {});
nlohmann::json to_json(const SamplerConfig& c);

}  // namespace momsjump

#endif  // MOMSJUMP_CONFIG_HPP
