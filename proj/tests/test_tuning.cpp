#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "momsjump/errors.hpp"
#include "momsjump/tuning.hpp"

using namespace momsjump;

TEST_SUITE("tuning") {

TEST_CASE("Robbins-Monro worked examples") {
  auto s = ProposalScales::uniform(3, 1.0, 0.75, 0.44);
  auto up = rm_update(s, 1, 0, true);
  CHECK(up.tau(1) == doctest::Approx(1.7507).epsilon(1e-4));
  CHECK(up.tau(0) == 1.0);
  CHECK(up.tau(2) == 1.0);
  auto down = rm_update(s, 1, 0, false);
  CHECK(down.tau(1) == doctest::Approx(0.6440).epsilon(1e-4));
  CHECK(s.tau(1) == 1.0);
}

TEST_CASE("step sizes decay with the configured exponent") {
  CHECK(rm_step_size(0, 0.75) == 1.0);
  CHECK(rm_step_size(15, 0.75) == doctest::Approx(std::pow(16.0, -0.75)));
  double prev = 2;
  for (long t = 0; t < 1000; t += 37) {
    CHECK(rm_step_size(t, 0.75) < prev);
    prev = rm_step_size(t, 0.75);
  }
}

TEST_CASE("frozen scales refuse updates") {
  auto s = ProposalScales::uniform(2);
  s.adapting = false;
  CHECK_THROWS_AS(rm_update_in_place(s, 0, 5, true), ConfigError);
  auto live = ProposalScales::uniform(2);
  CHECK_THROWS_AS(rm_update_in_place(live, 0, -1, true), ConfigError);
}

TEST_CASE("update moves log tau by at most one step") {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.5);
  auto s = ProposalScales::uniform(1);
  for (long t = 0; t < 500; ++t) {
    const double before = std::log(s.tau(0));
    rm_update_in_place(s, 0, t, coin(rng));
    CHECK(std::abs(std::log(s.tau(0)) - before) <= rm_step_size(t, s.step_exponent) * 0.56 + 1e-15);
  }
}

TEST_CASE("acceptance functions") {
  CHECK(accept_prob(AcceptanceRule::metropolis, 0.5) == 1.0);
  CHECK(accept_prob(AcceptanceRule::metropolis, std::log(0.25)) == doctest::Approx(0.25));
  CHECK(accept_prob(AcceptanceRule::barker, 0.0) == doctest::Approx(0.5));
  CHECK(accept_prob(AcceptanceRule::barker, std::log(3.0)) == doctest::Approx(0.75));
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(accept_prob(AcceptanceRule::metropolis, ninf) == 0.0);
  CHECK(accept_prob(AcceptanceRule::barker, ninf) == 0.0);
  CHECK(accept_prob(AcceptanceRule::barker, 800.0) == 1.0);
  CHECK(accept_prob(AcceptanceRule::barker, -800.0) >= 0.0);
  CHECK_THROWS_AS(accept_prob(AcceptanceRule::metropolis, std::nan("")), NumericalError);
}

TEST_CASE("both rules satisfy alpha(R) = R alpha(1/R)") {
  for (auto rule : {AcceptanceRule::metropolis, AcceptanceRule::barker}) {
    for (double lr = -20; lr <= 20; lr += 0.37) {
      const double fwd = accept_prob(rule, lr);
      const double rev = accept_prob(rule, -lr);
      CHECK(fwd == doctest::Approx(std::exp(lr) * rev).epsilon(1e-12));
    }
  }
}

TEST_CASE("rule names round trip") {
  CHECK(parse_acceptance_rule("barker") == AcceptanceRule::barker);
  CHECK(to_string(AcceptanceRule::metropolis) == "metropolis");
  CHECK_THROWS_AS(parse_acceptance_rule("gibbs"), ConfigError);
}

TEST_CASE("adaptation calibrates a monotone acceptance curve") {
  // Acceptance falls with the scale; the recursion must settle where it
  // equals the target.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif;
  auto s = ProposalScales::uniform(1, 0.05);
  long accepted = 0;
  const long T = 100'000;
  long late_acc = 0;
  for (long t = 0; t < T; ++t) {
    const double rate = std::exp(-s.tau(0));
    const bool acc = unif(rng) < rate;
    accepted += acc;
    if (t >= T / 2) late_acc += acc;
    rm_update_in_place(s, 0, t, acc);
  }
  CHECK(std::abs(static_cast<double>(late_acc) / (T / 2) - 0.44) < 0.01);
  CHECK(s.tau(0) == doctest::Approx(-std::log(0.44)).epsilon(0.05));
  CHECK(accepted > 0);
}

}
