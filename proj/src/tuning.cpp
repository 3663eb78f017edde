#include "momsjump/tuning.hpp"

#include <cmath>
#include <limits>

#include "momsjump/errors.hpp"

namespace momsjump {

AcceptanceRule parse_acceptance_rule(const std::string& s) {
  if (s == "metropolis") return AcceptanceRule::metropolis;
  if (s == "barker") return AcceptanceRule::barker;
  throw ConfigError("unknown acceptance_rule '" + s + "' (expected metropolis or barker)");
}

std::string to_string(AcceptanceRule rule) {
  return rule == AcceptanceRule::metropolis ? "metropolis" : "barker";
}

double accept_prob(AcceptanceRule rule, double log_ratio) {
  if (std::isnan(log_ratio)) throw NumericalError("acceptance log ratio is NaN");
  switch (rule) {
    case AcceptanceRule::metropolis:
      return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
    case AcceptanceRule::barker:
      // Logistic function, evaluated on the side that cannot overflow.
      if (log_ratio >= 0.0) return 1.0 / (1.0 + std::exp(-log_ratio));
      {
        const double e = std::exp(log_ratio);
        return e / (1.0 + e);
      }
  }
  return 0.0;
}

ProposalScales ProposalScales::uniform(Eigen::Index p, double tau_init, double step_exponent, double target_rate) {
  if (!(tau_init > 0)) throw ConfigError("tau_init must be positive");
  if (!(step_exponent > 0.5 && step_exponent <= 1.0)) throw ConfigError("phi must lie in (1/2, 1]");
  if (!(target_rate > 0.0 && target_rate < 1.0)) throw ConfigError("target_accept must lie in (0, 1)");
  ProposalScales s;
  s.tau = Eigen::VectorXd::Constant(p, tau_init);
  s.step_exponent = step_exponent;
  s.target_rate = target_rate;
  return s;
}

double rm_step_size(long t, double phi) { return std::pow(static_cast<double>(t) + 1.0, -phi); }

void rm_update_in_place(ProposalScales& scales, Eigen::Index index, long t, bool accepted) {
  if (!scales.adapting) throw ConfigError("proposal scales are frozen; adaptation is only allowed during warmup");
  if (t < 0) throw ConfigError("warmup iteration must be non-negative");
  const double step = rm_step_size(t, scales.step_exponent);
  const double log_tau = std::log(scales.tau(index)) + step * ((accepted ? 1.0 : 0.0) - scales.target_rate);
  scales.tau(index) = std::exp(log_tau);
}

ProposalScales rm_update(ProposalScales scales, Eigen::Index index, long t, bool accepted) {
  rm_update_in_place(scales, index, t, accepted);
  return scales;
}

}  // namespace momsjump
