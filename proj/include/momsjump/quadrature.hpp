#ifndef MOMSJUMP_QUADRATURE_HPP
#define MOMSJUMP_QUADRATURE_HPP

#include <Eigen/Core>

#include <functional>
#include <span>

namespace momsjump {

struct QuadratureConfig {
  double tolerance = 1e-8;      // relative error target on every component
  int max_subdivisions = 4000;  // cap on panel bisections
};

struct QuadratureResult {
  Eigen::ArrayXd value;
  double relative_error = 0;  // worst component estimate
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of a vector-valued
/// integrand over consecutive panels [breaks[i], breaks[i+1]]. The panel
/// with the largest error estimate is bisected until every component meets
/// `cfg.tolerance` relative to its running integral.
QuadratureResult integrate_gauss_kronrod(const std::function<Eigen::ArrayXd(double)>& f,
                                         std::span<const double> breaks, const QuadratureConfig& cfg);

}  // namespace momsjump

#endif  // MOMSJUMP_QUADRATURE_HPP
