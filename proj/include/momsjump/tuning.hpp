#ifndef MOMSJUMP_TUNING_HPP
#define MOMSJUMP_TUNING_HPP

#include <Eigen/Core>

#include <string>

namespace momsjump {

enum class AcceptanceRule { metropolis, barker };

AcceptanceRule parse_acceptance_rule(const std::string& s);
std::string to_string(AcceptanceRule rule);

/// Acceptance probability for a Metropolis-Hastings log ratio log R.
/// Metropolis: min(1, R). Barker: R / (1 + R). Both satisfy
/// alpha(R) = R * alpha(1/R). A log ratio of -inf gives 0; NaN throws.
double accept_prob(AcceptanceRule rule, double log_ratio);

/// Per-coefficient random-walk scales with Robbins-Monro adaptation on the
/// log scale. Frozen once warmup ends.
struct ProposalScales {
  Eigen::VectorXd tau;
  double step_exponent = 0.75;
  double target_rate = 0.44;
  bool adapting = true;

  static ProposalScales uniform(Eigen::Index p, double tau_init = 1.0, double step_exponent = 0.75,
                                double target_rate = 0.44);
};

/// (t + 1)^(-phi)
double rm_step_size(long t, double phi);

/// log tau_i += (t + 1)^(-phi) * (1{accepted} - target). Throws ConfigError
/// once adaptation is frozen.
void rm_update_in_place(ProposalScales& scales, Eigen::Index index, long t, bool accepted);
ProposalScales rm_update(ProposalScales scales, Eigen::Index index, long t, bool accepted);

}  // namespace momsjump

#endif  // MOMSJUMP_TUNING_HPP
