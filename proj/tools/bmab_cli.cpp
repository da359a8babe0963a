// bmab: run budgeted bandit experiments, aggregate results, print bound constants.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 runtime error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bmab/csv.hpp"
#include "bmab/harness.hpp"
#include "bmab/theory.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string arm_list(const std::vector<std::size_t>& arms) {
  std::string s;
  for (std::size_t a : arms) s += (s.empty() ? "" : " ") + std::to_string(a + 1);
  return s;
}

int cmd_run(const std::string& config_path, const std::string& out_path, unsigned threads,
            std::optional<std::uint64_t> seed) {
  bmab::ExperimentConfig cfg = bmab::load_config(config_path);
  if (seed) cfg.base_seed = *seed;
  const auto rows = bmab::run_experiment(cfg, threads);
  auto out = open_output(out_path);
  bmab::write_rows_csv(out, rows);
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.failed ? 1 : 0;
  std::cerr << "wrote " << rows.size() << " rows to " << out_path;
  if (failed) std::cerr << " (" << failed << " runs hit the round cap)";
  if (cfg.mode == bmab::Mode::general) std::cerr << "; regret is measured against an upper bound on the optimum";
  std::cerr << '\n';
  return 0;
}

int cmd_aggregate(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw bmab::ConfigError("cannot open '" + in_path + "'");
  const auto rows = bmab::read_rows_csv(in);
  const auto agg = bmab::aggregate(rows);
  auto out = open_output(out_path);
  bmab::write_aggregate_csv(out, agg);
  for (const auto& a : agg) {
    if (a.single_run)
      std::cerr << "note: " << a.policy << " at budget " << a.budget << " has a single run; std reported as 0\n";
    if (a.failed_runs)
      std::cerr << "note: " << a.policy << " at budget " << a.budget << " excludes " << a.failed_runs
                << " failed runs\n";
  }
  return 0;
}

int cmd_bounds(const std::string& config_path, double gamma, std::optional<std::uint64_t> budget,
               const std::string& format) {
  const bmab::ExperimentConfig cfg = bmab::load_config(config_path);
  const bmab::BanditInstance inst = cfg.build_instance();
  const std::uint64_t b = budget.value_or(std::max(cfg.budgets.back(),
                                                   cfg.checkpoint_budgets.empty() ? 0 : cfg.checkpoint_budgets.back()));
  const auto report = bmab::gaps(inst, gamma, b);
  const auto bts = bmab::bts_lnB_constant(inst, gamma);
  const auto bts_ref = bmab::bts_lnB_constant(inst, 1.0 / std::numbers::sqrt2);
  const auto ucb = bmab::ucbbv1_lnB_constant(inst);
  using bmab::format_number;

  if (format == "csv") {
    std::cout << "arm,ratio_gap,delta_gap,epsilon_gap,pull_threshold,regime,regime_order\n";
    for (const auto& g : report.arms)
      std::cout << g.arm + 1 << ',' << format_number(g.ratio_gap) << ',' << format_number(g.delta_gap) << ','
                << format_number(g.epsilon_gap) << ',' << format_number(g.pull_threshold) << ','
                << (g.regime == bmab::TailRegime::quartic ? "quartic" : "sextic") << ','
                << format_number(g.regime_order) << '\n';
    std::cout << "\nconstant,value\n"
              << "bts_lnB(gamma=" << format_number(gamma) << ")," << format_number(bts.value) << '\n'
              << "bts_lnB(gamma=1/sqrt2)," << format_number(bts_ref.value) << '\n'
              << "ucbbv1_lnB," << format_number(ucb.value) << '\n';
  } else {
    std::cout << "arms: " << inst.size() << ", optimal arm: " << report.optimal_arm + 1
              << " (ratio " << format_number(inst.optimal_ratio()) << "), gamma: " << format_number(gamma)
              << ", budget: " << b << "\n\n";
    std::cout << std::left << std::setw(6) << "arm" << std::setw(14) << "ratio_gap" << std::setw(14)
              << "delta_gap" << std::setw(14) << "epsilon_gap" << std::setw(16) << "pull_threshold"
              << "tail order\n";
    for (const auto& g : report.arms) {
      std::ostringstream row;
      row << std::left << std::setprecision(6) << std::setw(6) << g.arm + 1 << std::setw(14) << g.ratio_gap
          << std::setw(14) << g.delta_gap << std::setw(14) << g.epsilon_gap << std::setw(16)
          << g.pull_threshold << bmab::describe(g.regime) << " = " << g.regime_order;
      std::cout << row.str() << '\n';
    }
    std::cout << "\nln B coefficient, BTS (gamma=" << format_number(gamma) << "): " << format_number(bts.value)
              << "\nln B coefficient, BTS (gamma=1/sqrt2): " << format_number(bts_ref.value)
              << "\nln B coefficient, UCB-BV1:            " << format_number(ucb.value) << '\n';
  }
  if (!report.tied_arms.empty())
    std::cerr << "warning: arms " << arm_list(report.tied_arms)
              << " tie the optimal ratio; the bound is vacuous for them and they are excluded\n";
  return 0;
}

int cmd_gen_instance(std::uint64_t seed, std::size_t arms, const std::string& family, const std::string& out_path) {
  const auto inst = bmab::generate_instance(seed, arms, bmab::parse_instance_family(family));
  const std::string text = bmab::to_json(inst).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    auto out = open_output(out_path);
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted multi-armed bandit experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path, in_path, format = "text", family = "bernoulli";
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::size_t arms = 10;
  double gamma = 1.0 / std::numbers::sqrt2;
  std::uint64_t budget = 0;

  auto* run = app.add_subcommand("run", "Run an experiment and write per-run rows as CSV");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_path, "Output CSV path")->required();
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");
  auto* seed_opt = run->add_option("--seed", seed, "Override the config's base_seed");

  auto* bounds = app.add_subcommand("bounds", "Print gap quantities and ln B coefficients");
  bounds->add_option("--config", config_path, "Experiment config (JSON)")->required();
  bounds->add_option("--gamma", gamma, "Gap split parameter in (0, 1)");
  auto* budget_opt = bounds->add_option("--budget", budget, "Budget for the pull threshold (default: largest)");
  bounds->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  auto* agg = app.add_subcommand("aggregate", "Mean and standard deviation of regret per policy and budget");
  agg->add_option("--in", in_path, "Per-run CSV")->required();
  agg->add_option("--out", out_path, "Aggregated CSV")->required();

  auto* gen = app.add_subcommand("gen-instance", "Emit a random instance as JSON");
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--arms", arms, "Number of arms")->required();
  gen->add_option("--family", family, "bernoulli or multinomial")->check(CLI::IsMember({"bernoulli", "multinomial"}));
  gen->add_option("--out", out_path, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_path, threads, seed_opt->count() ? std::optional(seed) : std::nullopt);
    if (*bounds)
      return cmd_bounds(config_path, gamma, budget_opt->count() ? std::optional(budget) : std::nullopt, format);
    if (*agg) return cmd_aggregate(in_path, out_path);
    if (*gen) return cmd_gen_instance(seed, arms, family, out_path);
  } catch (const bmab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
