#include "doctest.h"

#include <Eigen/QR>

#include <cmath>
#include <random>

#include "momsjump/config.hpp"
#include "momsjump/diagnostics.hpp"
#include "momsjump/exact.hpp"
#include "momsjump/moms.hpp"
#include "momsjump/rjmcmc.hpp"
#include "momsjump/sampler.hpp"
#include "support.hpp"

using namespace momsjump;

namespace {

// Dense n x n projection oracle for the add-move proposal.
std::pair<double, double> projection_oracle(const RegressionData<double>& d, const std::vector<Eigen::Index>& cond,
                                            Eigen::Index index) {
  const Eigen::Index n = d.n;
  Eigen::MatrixXd A(n, d.p + 1);
  A << Eigen::VectorXd::Ones(n), d.X_centered;
  Eigen::VectorXd full = A.householderQr().solve(d.y_centered);
  Eigen::VectorXd eta = A * full;
  const double sigma2 = (d.y_centered - eta).squaredNorm() / static_cast<double>(n - d.p - 1);

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  if (!cond.empty()) {
    Eigen::MatrixXd Xc = d.X_centered(Eigen::all, cond);
    P = Xc * (Xc.transpose() * Xc).inverse() * Xc.transpose();
  }
  const Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n) - P;
  const Eigen::VectorXd s = d.X_centered.col(index);
  const double srs = s.dot(R * s);
  const double sre = s.dot(R * eta);
  const double v = sigma2 / srs;
  return {v * sre / sigma2, v};
}

}  // namespace

TEST_SUITE("rjmcmc") {

TEST_CASE("anchor on an orthonormal design") {
  Eigen::MatrixXd Z = Eigen::MatrixXd::Random(30, 3);
  Z.rowwise() -= Z.colwise().mean();
  Eigen::MatrixXd Q = Z.householderQr().householderQ() * Eigen::MatrixXd::Identity(30, 3);
  Eigen::VectorXd y = Eigen::VectorXd::Random(30);
  auto d = make_regression_data<double>(Q, y);
  auto a = compute_anchor(d);
  Eigen::VectorXd expect = Q.transpose() * d.y_centered;
  CHECK((a.beta_star_hat - expect).norm() < 1e-12);
}

TEST_CASE("anchor on diabetes against a QR decomposition") {
  const auto& d = testsupport::diabetes();
  auto a = compute_anchor(d);
  Eigen::MatrixXd A(d.n, d.p + 1);
  A << Eigen::VectorXd::Ones(d.n), d.X_centered;
  Eigen::VectorXd full = A.colPivHouseholderQr().solve(d.y_centered);
  for (Eigen::Index j = 0; j < d.p; ++j)
    CHECK(a.beta_star_hat(j) == doctest::Approx(full(j + 1)).epsilon(1e-8));
  const double rss = (d.y_centered - A * full).squaredNorm();
  CHECK(a.sigma2_star_hat == doctest::Approx(rss / static_cast<double>(d.n - d.p - 1)).epsilon(1e-10));
}

TEST_CASE("anchor needs n > p + 1") {
  auto d = testsupport::synthetic(4, Eigen::Vector3d(1, 0, 1), 2);
  CHECK_THROWS_AS(compute_anchor(d), RankDeficiencyError);
}

TEST_CASE("proposal parameters against the dense projection oracle") {
  const auto& d = testsupport::diabetes();
  auto a = compute_anchor(d);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> mask(0, 1023);
  for (int rep = 0; rep < 40; ++rep) {
    auto gamma = ModelIndicator::from_mask(10, mask(rng));
    const Eigen::Index i = rep % 10;
    auto fp = forster_proposal_params(d, gamma, i, a);
    auto [mu, v] = projection_oracle(d, fp.conditioning, i);
    CAPTURE(gamma.to_string());
    CHECK(std::abs(fp.mean - mu) <= 1e-9 * std::max(1.0, std::abs(mu)));
    CHECK(fp.variance == doctest::Approx(v).epsilon(1e-9));
    CHECK(fp.sd * fp.sd == doctest::Approx(fp.variance).epsilon(1e-14));
  }
}

TEST_CASE("empty conditioning model") {
  const auto& d = testsupport::diabetes();
  auto a = compute_anchor(d);
  auto fp = forster_proposal_params(d, ModelIndicator(10), 4, a);
  CHECK(fp.shift.size() == 0);
  const double ss = d.XtX(4, 4);
  CHECK(fp.variance == doctest::Approx(a.sigma2_star_hat / ss).epsilon(1e-14));
  CHECK(fp.mean == doctest::Approx(a.Xt_eta(4) / ss).epsilon(1e-12));
}

TEST_CASE("candidate orthogonal to the fit gets a zero-mean proposal") {
  Eigen::MatrixXd Z = Eigen::MatrixXd::Random(40, 3);
  Z.rowwise() -= Z.colwise().mean();
  Eigen::MatrixXd Q = Z.householderQr().householderQ() * Eigen::MatrixXd::Identity(40, 3);
  Eigen::VectorXd y = 2.0 * Q.col(0) - Q.col(1) + 0.1 * Eigen::VectorXd::Random(40);
  y -= Q.col(2) * Q.col(2).dot(y);
  auto d = make_regression_data<double>(Q, y);
  auto a = compute_anchor(d);
  auto fp = forster_proposal_params(d, ModelIndicator::from_string("110"), 2, a);
  CHECK(std::abs(fp.mean) < 1e-12);
  CHECK(fp.shift.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("collinear candidate is degenerate") {
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(20, 3);
  X.col(2) = X.col(0) - 2 * X.col(1);
  Eigen::VectorXd y = Eigen::VectorXd::Random(20);
  auto d = make_regression_data<double>(X, y);
  FullModelAnchor a;
  a.beta_star_hat = Eigen::VectorXd::Zero(3);
  a.Xt_eta = Eigen::VectorXd::Zero(3);
  a.sigma2_star_hat = 1;
  CHECK_THROWS_AS(forster_proposal_params(d, ModelIndicator::from_string("110"), 2, a), DegenerateProposalError);

  JointPosterior post(d);
  RjKernel kernel;
  kernel.anchor = &a;
  ChainState s;
  s.gamma = ModelIndicator::from_string("110");
  s.beta = Eigen::Vector3d(0.5, -0.2, 0);
  s.rng.seed(1);
  auto r = rj_flip_step(s, post, kernel, AcceptanceRule::metropolis, 2);
  CHECK(r.degenerate);
  CHECK_FALSE(r.accepted);
  CHECK(s.gamma.to_string() == "110");
}

TEST_CASE("transformation inverse and unit determinant") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> z;
  for (int k : {0, 1, 4, 9}) {
    Eigen::VectorXd shift(k), beta(k);
    for (int j = 0; j < k; ++j) {
      shift(j) = 3 * z(rng);
      beta(j) = 10 * z(rng);
    }
    const double u = z(rng);
    auto m = add_transform_matrix(shift);
    CHECK(m.determinant() == 1.0);
    auto ext = apply_add_transform(beta, u, shift);
    Eigen::VectorXd stacked(k + 1);
    stacked << beta, u;
    CHECK((m * stacked - ext).norm() < 1e-12);
    auto [back, u2] = apply_delete_transform(ext, shift);
    CHECK(u2 == u);
    if (k > 0) CHECK((back - beta).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("add and reverse delete have opposite log ratios") {
  const auto& d = testsupport::diabetes();
  JointPosterior post(d);
  auto a = compute_anchor(d);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 100; ++rep) {
    auto s = initial_full_state(d, static_cast<std::uint64_t>(rep));
    const Eigen::Index i = rep % 10;
    for (Eigen::Index j = 0; j < 10; ++j)
      if ((rep >> (j % 7)) & 1) {
        s.gamma.set(static_cast<std::size_t>(j), false);
        s.beta(j) = 0;
      }
    s.gamma.set(static_cast<std::size_t>(i), false);
    s.beta(i) = 0;
    auto fp = forster_proposal_params(d, s.gamma, i, a);
    const double u = fp.mean + fp.sd * z(rng);
    AddDeleteProposal rec;
    auto add = rj_flip_proposal(s, post, fp, i, u, &rec);
    CHECK(rec.direction == MoveDirection::add);
    ChainState t = s;
    t.gamma = add.gamma;
    t.beta = add.beta;
    auto fp2 = forster_proposal_params(d, t.gamma, i, a);
    CHECK(fp2.mean == fp.mean);
    auto del = rj_flip_proposal(t, post, fp2, i, 0.0);
    CHECK((del.beta - s.beta).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(add.log_ratio + del.log_ratio == doctest::Approx(0.0).epsilon(1e-7));
  }
}

TEST_CASE("identity transform reproduces MoMS") {
  auto d = testsupport::synthetic(50, Eigen::Vector3d(0.5, -0.2, 0.0), 77);
  SamplerConfig c;
  c.iterations = 3000;
  c.warmup = 500;
  c.seed = 9;
  c.rj_transform = RjTransform::identity;
  auto rj = run_rjmcmc(d, c);
  auto moms = run_moms(d, c);
  CHECK(rj.gamma_draws == moms.gamma_draws);
  CHECK(rj.beta_draws == moms.beta_draws);
  CHECK(rj.tau == moms.tau);
}

TEST_CASE("reversible-jump chains are reproducible") {
  auto d = testsupport::synthetic(50, Eigen::Vector3d(0.5, -0.2, 0.0), 77);
  SamplerConfig c;
  c.iterations = 2000;
  c.warmup = 200;
  c.seed = 4;
  auto a = run_rjmcmc(d, c);
  auto b = run_rjmcmc(d, c);
  CHECK(a.gamma_draws == b.gamma_draws);
  CHECK(a.beta_draws == b.beta_draws);
  CHECK(a.tau.size() == 0);
}

TEST_CASE("inclusion frequencies match enumeration on a small problem") {
  auto d = testsupport::synthetic(40, Eigen::Vector3d(0.35, 0.0, 0.25), 31, 1.0, 0.3);
  auto exact = summarize_exact(enumerate(d), d);
  SamplerConfig c;
  c.method = Method::rjmcmc;
  c.iterations = 60'000;
  c.warmup = 2000;
  c.chains = 2;
  c.seed = 5;
  auto runs = run_chains(d, c);
  auto s = summarize_chains(runs);
  for (Eigen::Index j = 0; j < d.p; ++j) {
    const auto& st = s.indicators[static_cast<std::size_t>(j)];
    REQUIRE(st.defined);
    CAPTURE(j);
    CHECK(std::abs(s.posterior.pip(j) - exact.pip(j)) <= 4 * st.mcse);
  }
}

}
