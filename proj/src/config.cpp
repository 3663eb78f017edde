#include "momsjump/config.hpp"

#include <fstream>

#include "momsjump/errors.hpp"

namespace momsjump {

void SamplerConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (warmup < 0) throw ConfigError("warmup must be >= 0");
  if (chains < 1) throw ConfigError("chains must be >= 1");
  if (!(phi > 0.5 && phi <= 1.0)) throw ConfigError("phi must lie in (1/2, 1]");
  if (!(target_accept > 0.0 && target_accept < 1.0)) throw ConfigError("target_accept must lie in (0, 1)");
  if (!(tau_init > 0.0)) throw ConfigError("tau_init must be positive");
  if (!(quad_tolerance > 0.0 && quad_tolerance < 1.0)) throw ConfigError("quad_tolerance must lie in (0, 1)");
  if (top_k < 1) throw ConfigError("top_k must be >= 1");
}

Method parse_method(const std::string& s) {
  if (s == "enumerate") return Method::enumerate;
  if (s == "moms") return Method::moms;
  if (s == "rjmcmc") return Method::rjmcmc;
  throw ConfigError("unknown method '" + s + "' (expected enumerate, moms or rjmcmc)");
}

ScanOrder parse_scan_order(const std::string& s) {
  if (s == "systematic") return ScanOrder::systematic;
  if (s == "random") return ScanOrder::random;
  throw ConfigError("unknown scan_order '" + s + "' (expected systematic or random)");
}

RjTransform parse_rj_transform(const std::string& s) {
  if (s == "forster") return RjTransform::forster;
  if (s == "identity") return RjTransform::identity;
  throw ConfigError("unknown rj_transform '" + s + "' (expected forster or identity)");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::enumerate: return "enumerate";
    case Method::moms: return "moms";
    case Method::rjmcmc: return "rjmcmc";
  }
  return "?";
}

std::string to_string(ScanOrder s) { return s == ScanOrder::systematic ? "systematic" : "random"; }
std::string to_string(RjTransform t) { return t == RjTransform::forster ? "forster" : "identity"; }

SamplerConfig config_from_json(const nlohmann::json& j, SamplerConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "method") c.method = parse_method(value.get<std::string>());
      else if (key == "iterations") c.iterations = value.get<long>();
      else if (key == "warmup") c.warmup = value.get<long>();
      else if (key == "chains") c.chains = value.get<int>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "phi") c.phi = value.get<double>();
      else if (key == "target_accept") c.target_accept = value.get<double>();
      else if (key == "tau_init") c.tau_init = value.get<double>();
      else if (key == "acceptance_rule") c.acceptance_rule = parse_acceptance_rule(value.get<std::string>());
      else if (key == "scan_order") c.scan_order = parse_scan_order(value.get<std::string>());
      else if (key == "rj_transform") c.rj_transform = parse_rj_transform(value.get<std::string>());
      else if (key == "quad_tolerance") c.quad_tolerance = value.get<double>();
      else if (key == "top_k") c.top_k = value.get<int>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  }
  c.validate();
  return c;
}

SamplerConfig config_from_file(const std::string& path, SamplerConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j, base);
}

nlohmann::json to_json(const SamplerConfig& c) {
  return {{"method", to_string(c.method)},
          {"iterations", c.iterations},
          {"warmup", c.warmup},
          {"chains", c.chains},
          {"seed", c.seed},
          {"phi", c.phi},
          {"target_accept", c.target_accept},
          {"tau_init", c.tau_init},
          {"acceptance_rule", to_string(c.acceptance_rule)},
          {"scan_order", to_string(c.scan_order)},
          {"rj_transform", to_string(c.rj_transform)},
          {"quad_tolerance", c.quad_tolerance},
          {"top_k", c.top_k}};
}

}  // namespace momsjump
