// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bmab/harness.hpp"
#include "bmab/theory.hpp"
#include "oracles.hpp"

using namespace bmab;

namespace {

// Tolerances and limits.
constexpr double kCdfTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kWorkedExampleTolerance = 1e-9;
constexpr double kMonteCarloSigmas = 3.0;
constexpr double kConsistencySigmas = 4.0;
constexpr double kSymmetryTolerance = 0.01;
constexpr double kTrialTolerance = 0.002;

constexpr std::uint64_t kDeskInstanceSeed = 20240601;
constexpr std::uint64_t kDeskBaseSeed = 1;
constexpr std::uint64_t kDeskRuns = 100;
constexpr unsigned kDeskThreads = 4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> check;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

ArmModel bern(double r, double c) { return {Distribution::bernoulli(r), Distribution::bernoulli(c)}; }

BanditInstance random_instance(RngStream& rng) {
  const std::size_t k = 2 + rng.next_word() % 9;
  std::vector<ArmModel> arms;
  for (std::size_t i = 0; i < k; ++i) arms.push_back(bern(0.05 + 0.9 * rng.next_unit(), 0.05 + 0.9 * rng.next_unit()));
  return BanditInstance(std::move(arms));
}

Outcome beta_binomial_identity() {
  double worst = 0.0;
  for (std::uint64_t a = 1; a <= 10; ++a)
    for (std::uint64_t b = 1; b <= 10; ++b)
      for (int j = 1; j <= 19; ++j) {
        const double y = 0.05 * j;
        worst = std::max(worst, std::abs(beta_binomial_cdf(a, b, y) -
                                         oracle::beta_cdf_quadrature(double(a), double(b), y)));
      }
  return {worst <= kCdfTolerance, fmt("max |binomial - quadrature| = %.3g over 1900 points (limit %.0e)", worst,
                                      kCdfTolerance)};
}

Outcome ratio_gap_identity() {
  RngStream rng(101);
  double worst = 0.0;
  std::size_t checked = 0;
  for (int n = 0; n < 10000; ++n) {
    const BanditInstance inst = random_instance(rng);
    for (int g = 1; g <= 9; ++g) {
      for (const ArmGaps& a : gaps(inst, g / 10.0, 1000).arms) {
        worst = std::max(worst, ratio_gap_identity_residual(inst, a.arm, g / 10.0));
        ++checked;
      }
    }
  }
  return {worst <= kIdentityTolerance,
          fmt("max residual %.3g over %zu (instance, arm, gamma) triples (limit %.0e)", worst, checked,
              kIdentityTolerance)};
}

Outcome constants_ordering() {
  const double gamma = 1.0 / std::numbers::sqrt2;
  const BanditInstance worked({bern(0.5, 0.5), bern(0.25, 0.5)});
  const double bts = bts_lnB_constant(worked, gamma).value;
  const double ucb = ucbbv1_lnB_constant(worked).value;
  const bool worked_ok = std::abs(bts - 64.0) <= kWorkedExampleTolerance && std::abs(ucb - 682.5) <= kWorkedExampleTolerance;

  RngStream rng(202);
  int violations = 0;
  double min_ratio = INFINITY;
  for (int n = 0; n < 10000; ++n) {
    const BanditInstance inst = random_instance(rng);
    const double b = bts_lnB_constant(inst, gamma).value;
    const double u = ucbbv1_lnB_constant(inst).value;
    violations += b < u ? 0 : 1;
    min_ratio = std::min(min_ratio, u / b);
  }
  return {worked_ok && violations == 0,
          fmt("worked example %.12g vs %.12g; %d of 10000 random instances violate bts < ucb_bv1 "
              "(smallest ucb/bts ratio %.3g)",
              bts, ucb, violations, min_ratio)};
}

Outcome constant_arm_value() {
  const BanditInstance inst({bern(0.5, 0.5), bern(0.5, 0.5)});
  const auto est = oracle::mc_policy_value(inst, 0, 50, Mode::bernoulli, 100000, 303);
  const double z = std::abs(est.value - 50.0) / est.standard_error;
  const BanditInstance det({{Distribution::fixed(0.5), Distribution::fixed(1.0)},
                            {Distribution::fixed(0.5), Distribution::fixed(1.0)}});
  const auto exact = oracle::mc_policy_value(det, 0, 10, Mode::general, 100000, 304);
  const bool det_ok = exact.value == 5.0 && exact.standard_error == 0.0;
  return {z <= kMonteCarloSigmas && det_ok,
          fmt("estimate %.4f (SE %.4f, %.2f SE from 50); deterministic arm %.17g with SE %g", est.value,
              est.standard_error, z, exact.value, exact.standard_error)};
}

Outcome regret_forms_agree() {
  const BanditInstance inst({bern(0.5, 0.5), bern(0.25, 0.5)});
  const auto s = oracle::exhaustive_small_bandit_regret(inst, PolicyKind::bts(), 5, 100000, 405);
  return {s.discrepancy() <= kConsistencySigmas,
          fmt("mean regret %.5f vs gap-weighted pulls %.5f, %.2f combined SE apart (limit %.0f)", s.mean_regret,
              s.mean_diagnostic, s.discrepancy(), kConsistencySigmas)};
}

Outcome prior_symmetry() {
  BtsState state(3);
  RngStream rng(506);
  const int n = 30000;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) counts[bts_select(state, rng)]++;
  double worst = 0.0;
  for (int c : counts) worst = std::max(worst, std::abs(c / double(n) - 1.0 / 3.0));
  return {worst <= kSymmetryTolerance,
          fmt("frequencies %.4f %.4f %.4f (max deviation %.4f, limit %.2f)", counts[0] / double(n),
              counts[1] / double(n), counts[2] / double(n), worst, kSymmetryTolerance)};
}

Outcome bernoulli_trial_mean() {
  RngStream rng(607);
  const int n = 1000000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += bernoulli_trial(0.37, rng);
  const double dev = std::abs(s / n - 0.37);
  return {dev <= kTrialTolerance, fmt("mean %.5f (deviation %.5f, limit %.3f)", s / n, dev, kTrialTolerance)};
}

ExperimentConfig desk_config() {
  ExperimentConfig cfg;
  cfg.instance = GeneratorSpec{kDeskInstanceSeed, 10, InstanceFamily::bernoulli};
  cfg.policies = {PolicyKind::bts(), PolicyKind::epsilon_first(0.1), PolicyKind::pd_bwk(), PolicyKind::ucb_bv1(),
                  PolicyKind::kube_variant()};
  cfg.budgets = {1000, 2000, 5000, 10000};
  cfg.checkpoint_budgets = cfg.budgets;
  cfg.runs = kDeskRuns;
  cfg.base_seed = kDeskBaseSeed;
  cfg.mode = Mode::bernoulli;
  return cfg;
}

// Shared between criteria 8 to 10 so the desk experiment runs once per thread count.
struct DeskRun {
  std::vector<ResultRow> rows;
  std::map<std::pair<std::string, std::uint64_t>, AggregateRow> by_key;
  bool ran = false;
};

DeskRun& desk() {
  static DeskRun run;
  if (!run.ran) {
    run.rows = run_experiment(desk_config(), kDeskThreads);
    for (const AggregateRow& a : aggregate(run.rows)) run.by_key[{a.policy, a.budget}] = a;
    run.ran = true;
  }
  return run;
}

Outcome desk_ordering() {
  const DeskRun& d = desk();
  const double bts = d.by_key.at({"bts", 10000}).mean_regret;
  bool pass = true;
  std::ostringstream detail;
  detail << "B=10000 mean regret: bts " << fmt("%.1f", bts);
  for (const char* p : {"epsilon_first(0.1)", "pd_bwk", "ucb_bv1", "kube_variant"}) {
    const AggregateRow& a = d.by_key.at({p, 10000});
    pass = pass && bts < a.mean_regret;
    detail << ", " << p << ' ' << fmt("%.1f", a.mean_regret) << (bts < a.mean_regret ? "" : " (not above bts)");
  }
  detail << fmt(" [instance seed %llu, %llu runs]", static_cast<unsigned long long>(kDeskInstanceSeed),
                static_cast<unsigned long long>(kDeskRuns));
  return {pass, detail.str()};
}

Outcome logarithmic_growth() {
  const DeskRun& d = desk();
  const std::vector<std::uint64_t> budgets{1000, 2000, 5000, 10000};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(budgets.size());
  for (std::uint64_t b : budgets) {
    const double x = std::log(double(b));
    const double y = d.by_key.at({"bts", b}).mean_regret;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double constant = bts_lnB_constant(desk_config().build_instance(), 1.0 / std::numbers::sqrt2).value;
  return {slope <= constant, fmt("slope %.2f per unit ln B (%s), coefficient bound %.1f", slope,
                                 slope > 0 ? "positive" : "not positive", constant)};
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_rows_csv(out, rows);
  return out.str();
}

Outcome determinism() {
  const std::string four = to_csv(desk().rows);
  const std::string one = to_csv(run_experiment(desk_config(), 1));
  const std::string again = to_csv(run_experiment(desk_config(), 3));
  return {four == one && one == again,
          fmt("raw CSV of %zu bytes identical at 1, 3 and 4 threads: %s", one.size(),
              four == one && one == again ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "beta-binomial CDF identity", 5, beta_binomial_identity},
      {2, "ratio-gap identity", 5, ratio_gap_identity},
      {3, "ln B coefficients: bts below ucb_bv1", 5, constants_ordering},
      {4, "constant-arm value oracle", 10, constant_arm_value},
      {5, "regret equals gap-weighted pulls in mean", 30, regret_forms_agree},
      {6, "bts prior symmetry", 5, prior_symmetry},
      {7, "bernoulli trial unbiasedness", 2, bernoulli_trial_mean},
      {8, "desk-scale ordering at B=10000", 180, desk_ordering},
      {9, "bts regret grows at most like the ln B coefficient", 180, logarithmic_growth},
      {10, "byte-identical output across thread counts", 180, determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.time_limit_s;
    const bool pass = out.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("criterion %2d %s  %s: %s [%.2f s of %.0f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                out.detail.c_str(), secs, c.time_limit_s, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
