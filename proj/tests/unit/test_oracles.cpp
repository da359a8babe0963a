#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace bmab;

namespace {

ArmModel bern(double r, double c) { return {Distribution::bernoulli(r), Distribution::bernoulli(c)}; }

}  // namespace

TEST_CASE("constant-arm value, Bernoulli") {
  BanditInstance inst({bern(0.5, 0.5), bern(0.5, 0.5)});
  const auto est = oracle::mc_policy_value(inst, 0, 50, Mode::bernoulli, 20000, 1);
  CHECK(est.samples == 20000);
  CHECK(est.standard_error > 0.0);
  CHECK(std::abs(est.value - 50.0) <= 3.0 * est.standard_error);
}

TEST_CASE("constant-arm value, deterministic") {
  BanditInstance inst({{Distribution::fixed(0.5), Distribution::fixed(1.0)}, bern(0.5, 0.5)});
  const auto est = oracle::mc_policy_value(inst, 0, 10, Mode::general, 10000, 2);
  CHECK(est.value == 5.0);
  CHECK(est.standard_error == 0.0);
}

TEST_CASE("constant-arm value, general arm stays above the lower bound") {
  const auto reward = Distribution::multinomial({0, 1.0 / 3, 2.0 / 3, 1}, {0.1, 0.2, 0.3, 0.4});
  const auto cost = Distribution::multinomial({0.2, 0.7}, {0.5, 0.5});
  BanditInstance inst({{reward, cost}, bern(0.5, 0.5)});
  for (std::uint64_t b : {1, 3, 20, 80}) {
    const auto est = oracle::mc_policy_value(inst, 0, b, Mode::general, 10000, b);
    CHECK(est.value >= (double(b) - 1.0) * inst.ratio(0) - 3.0 * est.standard_error);
  }
}

TEST_CASE("oracle preconditions") {
  BanditInstance inst({bern(0.5, 0.5), bern(0.5, 0.5)});
  CHECK_THROWS_AS(oracle::mc_policy_value(inst, 0, 50, Mode::bernoulli, 9999, 1), std::invalid_argument);
  CHECK_THROWS_AS(oracle::exhaustive_small_bandit_regret(inst, PolicyKind::bts(), 6, 10), std::invalid_argument);
  BanditInstance three({bern(0.5, 0.5), bern(0.5, 0.5), bern(0.2, 0.5)});
  CHECK_THROWS_AS(oracle::exhaustive_small_bandit_regret(three, PolicyKind::bts(), 5, 10), std::invalid_argument);
  BanditInstance general({{Distribution::fixed(0.5), Distribution::fixed(1.0)}, bern(0.5, 0.5)});
  CHECK_THROWS_AS(oracle::exhaustive_small_bandit_regret(general, PolicyKind::bts(), 5, 10), std::invalid_argument);
}

TEST_CASE("small-bandit cross-check") {
  SUBCASE("identical arms give a zero diagnostic") {
    BanditInstance inst({bern(0.4, 0.6), bern(0.4, 0.6)});
    const auto s = oracle::exhaustive_small_bandit_regret(inst, PolicyKind::bts(), 5, 2000);
    CHECK(s.mean_diagnostic == 0.0);
    CHECK(s.se_diagnostic == 0.0);
  }
  SUBCASE("regret and diagnostic agree in mean") {
    BanditInstance inst({bern(0.7, 0.4), bern(0.3, 0.6)});
    for (const auto& p : {PolicyKind::bts(), PolicyKind::kube_variant(), PolicyKind::epsilon_first(0.3)}) {
      const auto s = oracle::exhaustive_small_bandit_regret(inst, p, 5, 20000, 9);
      CAPTURE(p.label());
      CHECK(s.discrepancy() <= 4.0);
    }
  }
  SUBCASE("seed-deterministic") {
    BanditInstance inst({bern(0.7, 0.4), bern(0.3, 0.6)});
    const auto a = oracle::exhaustive_small_bandit_regret(inst, PolicyKind::bts(), 4, 500, 3);
    const auto b = oracle::exhaustive_small_bandit_regret(inst, PolicyKind::bts(), 4, 500, 3);
    CHECK(a.mean_regret == b.mean_regret);
    CHECK(a.mean_diagnostic == b.mean_diagnostic);
  }
}

TEST_CASE("one-step recursion gives b times the best ratio") {
  BanditInstance inst({bern(0.8, 0.4), bern(0.25, 0.5), bern(0.9, 0.9)});
  const auto v = oracle::optimal_value_recursion(inst, 50);
  CHECK(v[0] == 0.0);
  for (std::size_t b = 1; b <= 50; ++b) CHECK(v[b] == doctest::Approx(2.0 * double(b)).epsilon(1e-13));
}

TEST_CASE("quadrature Beta CDF") {
  CHECK(oracle::beta_cdf_quadrature(1, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(oracle::beta_cdf_quadrature(2, 3, 0.5) == doctest::Approx(0.6875).epsilon(1e-14));
  CHECK(oracle::beta_cdf_quadrature(4, 7, 0.0) == 0.0);
  CHECK(oracle::beta_cdf_quadrature(4, 7, 1.0) == 1.0);
}

TEST_CASE("summary statistics") {
  const auto s = oracle::summarize({1.0, 3.0});
  CHECK(s.value == 2.0);
  CHECK(s.standard_error == doctest::Approx(1.0));
  CHECK(oracle::summarize({}).samples == 0);
}
