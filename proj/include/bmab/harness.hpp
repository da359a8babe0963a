#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bmab/evaluation.hpp"
#include "bmab/instance.hpp"
#include "bmab/policies.hpp"

namespace bmab {

/// Invalid experiment configuration; maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GeneratorSpec {
  std::uint64_t seed = 0;
  std::size_t arms = 10;
  InstanceFamily family = InstanceFamily::bernoulli;
};

struct ExperimentConfig {
  std::variant<std::vector<ArmModel>, GeneratorSpec> instance;
  std::vector<PolicyKind> policies;
  /// Budgets for budget-aware policies, and for every policy when no
  /// checkpoints are configured. Positive, strictly increasing.
  std::vector<std::uint64_t> budgets;
  /// When non-empty, anytime policies run once per seed at the last
  /// checkpoint and report a row at every checkpoint.
  std::vector<std::uint64_t> checkpoint_budgets;
  std::uint64_t runs = 1;
  std::uint64_t base_seed = 0;
  Mode mode = Mode::bernoulli;

  BanditInstance build_instance() const;
};

/// Throws ConfigError on any violated constraint.
void validate(const ExperimentConfig& config);

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const Distribution& d);
nlohmann::json to_json(const BanditInstance& instance);
Distribution distribution_from_json(const nlohmann::json& doc);
std::vector<ArmModel> arms_from_json(const nlohmann::json& doc);

/// Seed for one (policy, budget, run) cell:
///   g = 0x9E3779B97F4A7C15
///   h = mix64(base + g)
///   h = mix64((h ^ policy) + g); h = mix64((h ^ budget) + g); h = mix64((h ^ run) + g)
/// with mix64 the SplitMix64 finalizer and all arithmetic mod 2^64. Each step is a bijection, so tuples
/// differing only in the run index never collide.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t policy_id, std::uint64_t budget,
                          std::uint64_t run_index) noexcept;

struct ResultRow {
  std::string policy;
  std::uint64_t budget = 0;
  std::uint64_t run = 0;
  std::uint64_t seed = 0;
  double regret = 0.0;
  double gap_weighted_pulls = 0.0;
  double total_reward = 0.0;
  double total_cost = 0.0;
  std::uint64_t stopping_time = 0;
  std::uint64_t pulls_optimal = 0;
  std::vector<std::uint64_t> pulls;
  /// Set when the run hit the round cap; only policy/budget/run/seed are meaningful.
  bool failed = false;
};

/// Rows ordered by (policy position in config, budget, run), independent of `threads`.
/// threads == 0 uses the hardware concurrency.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, unsigned threads = 0);

/// Number of rows run_experiment produces for `config`.
std::size_t expected_row_count(const ExperimentConfig& config);

void write_rows_csv(std::ostream& out, std::span<const ResultRow> rows);
std::vector<ResultRow> read_rows_csv(std::istream& in);

struct AggregateRow {
  std::string policy;
  std::uint64_t budget = 0;
  double mean_regret = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 when only one run.
  double std_regret = 0.0;
  std::uint64_t runs = 0;
  std::uint64_t failed_runs = 0;
  bool single_run = false;
};

/// Groups by (policy, budget) in order of first appearance. Failed rows are
/// counted but excluded. Throws std::invalid_argument on empty input or on a
/// group with no successful row.
std::vector<AggregateRow> aggregate(std::span<const ResultRow> rows);

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows);

}  // namespace bmab
