#include "momsjump/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace momsjump {

namespace {

// Kronrod abscissae on [-1, 1] (non-negative half); odd entries are the
// embedded Gauss nodes.
constexpr double kXk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Eigen::ArrayXd value;
  Eigen::ArrayXd error;
  double priority;
  bool operator<(const Panel& o) const { return priority < o.priority; }
};

Panel evaluate(const std::function<Eigen::ArrayXd(double)>& f, double a, double b, int& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Eigen::ArrayXd fc = f(c);
  Eigen::ArrayXd kron = kWk[7] * fc;
  Eigen::ArrayXd gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXk[j];
    Eigen::ArrayXd s = f(c - dx) + f(c + dx);
    kron += kWk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  evals += 15;
  Panel p{a, b, h * kron, (h * (kron - gauss)).abs(), 0.0};
  return p;
}

}  // namespace

QuadratureResult integrate_gauss_kronrod(const std::function<Eigen::ArrayXd(double)>& f,
                                         std::span<const double> breaks, const QuadratureConfig& cfg) {
  if (breaks.size() < 2) throw std::invalid_argument("integrate_gauss_kronrod: need at least two breakpoints");
  QuadratureResult res;
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) panels.push_back(evaluate(f, breaks[i], breaks[i + 1], res.evaluations));
  if (panels.empty()) throw std::invalid_argument("integrate_gauss_kronrod: empty interval");

  const Eigen::Index k = panels.front().value.size();
  Eigen::ArrayXd total = Eigen::ArrayXd::Zero(k);
  Eigen::ArrayXd err = Eigen::ArrayXd::Zero(k);
  for (const auto& p : panels) {
    total += p.value;
    err += p.error;
  }

  auto scaled = [&](const Eigen::ArrayXd& e) {
    double worst = 0;
    for (Eigen::Index c = 0; c < k; ++c) {
      const double denom = std::abs(total(c)) > 0 ? std::abs(total(c)) : 1.0;
      worst = std::max(worst, e(c) / denom);
    }
    return worst;
  };

  std::priority_queue<Panel> queue;
  for (auto& p : panels) {
    p.priority = scaled(p.error);
    queue.push(std::move(p));
  }

  int splits = 0;
  while (scaled(err) > cfg.tolerance && splits < cfg.max_subdivisions) {
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be bisected further in floating point.
      worst.priority = 0;
      queue.push(std::move(worst));
      break;
    }
    Panel left = evaluate(f, worst.a, mid, res.evaluations);
    Panel right = evaluate(f, mid, worst.b, res.evaluations);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    left.priority = scaled(left.error);
    right.priority = scaled(right.error);
    queue.push(std::move(left));
    queue.push(std::move(right));
    ++splits;
  }

  // Recompute from the panels to shed accumulated rounding in the running sums.
  total.setZero();
  err.setZero();
  while (!queue.empty()) {
    total += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  res.value = total;
  res.relative_error = scaled(err);
  res.converged = res.relative_error <= cfg.tolerance;
  return res;
}

}  // namespace momsjump
