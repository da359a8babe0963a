#include "bmab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

#include "bmab/csv.hpp"
#include "bmab/rng.hpp"

namespace bmab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

BanditInstance ExperimentConfig::build_instance() const {
  if (const auto* arms = std::get_if<std::vector<ArmModel>>(&instance)) return BanditInstance(*arms);
  const auto& gen = std::get<GeneratorSpec>(instance);
  return generate_instance(gen.seed, gen.arms, gen.family);
}

namespace {

void check_budget_list(const std::vector<std::uint64_t>& list, const char* what) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == 0) throw ConfigError(std::string(what) + ": budgets must be positive");
    if (i > 0 && list[i] <= list[i - 1])
      throw ConfigError(std::string(what) + ": budgets must be strictly increasing");
  }
}

template <class T>
T required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

PolicyKind policy_from_json(const json& doc) {
  const auto kind = required<std::string>(doc, "kind");
  if (kind == "bts") return PolicyKind::bts();
  if (kind == "epsilon_first") return PolicyKind::epsilon_first(doc.value("epsilon", 0.1));
  if (kind == "pd_bwk") return PolicyKind::pd_bwk();
  if (kind == "ucb_bv1") {
    if (doc.contains("lambda")) return PolicyKind::ucb_bv1(required<double>(doc, "lambda"));
    return PolicyKind::ucb_bv1();
  }
  if (kind == "kube_variant") return PolicyKind::kube_variant();
  throw ConfigError("unknown policy kind '" + kind + "'");
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.runs < 1) throw ConfigError("runs must be at least 1");
  if (config.budgets.empty()) throw ConfigError("budgets must not be empty");
  if (config.policies.empty()) throw ConfigError("policies must not be empty");
  check_budget_list(config.budgets, "budgets");
  check_budget_list(config.checkpoint_budgets, "checkpoint_budgets");

  std::optional<BanditInstance> instance;
  try {
    instance.emplace(config.build_instance());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("instance: ") + e.what());
  }
  if (config.mode == Mode::bernoulli && !instance->all_bernoulli())
    throw ConfigError("bernoulli mode requires Bernoulli reward and cost distributions");

  std::set<std::string> labels;
  for (const PolicyKind& p : config.policies) {
    try {
      validate(p, *instance);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (!labels.insert(p.label()).second) throw ConfigError("duplicate policy '" + p.label() + "'");
  }
}

Distribution distribution_from_json(const json& doc) {
  const auto kind = required<std::string>(doc, "kind");
  try {
    if (kind == "bernoulli") return Distribution::bernoulli(required<double>(doc, "p"));
    if (kind == "fixed") return Distribution::fixed(required<double>(doc, "value"));
    if (kind == "multinomial")
      return Distribution::multinomial(required<std::vector<double>>(doc, "support"),
                                       required<std::vector<double>>(doc, "probs"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown distribution kind '" + kind + "'");
}

std::vector<ArmModel> arms_from_json(const json& doc) {
  if (!doc.is_array()) throw ConfigError("'arms' must be a list");
  std::vector<ArmModel> arms;
  for (const json& a : doc) {
    if (!a.contains("reward") || !a.contains("cost"))
      throw ConfigError("each arm needs 'reward' and 'cost'");
    arms.push_back({distribution_from_json(a.at("reward")), distribution_from_json(a.at("cost"))});
  }
  return arms;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;

  const json inst = required<json>(doc, "instance");
  if (inst.contains("arms")) {
    cfg.instance = arms_from_json(inst.at("arms"));
  } else if (inst.contains("generator")) {
    const json& g = inst.at("generator");
    GeneratorSpec spec;
    spec.seed = required<std::uint64_t>(g, "seed");
    spec.arms = required<std::size_t>(g, "arms");
    try {
      spec.family = parse_instance_family(g.value("family", std::string("bernoulli")));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    cfg.instance = spec;
  } else {
    throw ConfigError("instance needs either 'arms' or 'generator'");
  }

  for (const json& p : required<json>(doc, "policies")) cfg.policies.push_back(policy_from_json(p));
  cfg.budgets = required<std::vector<std::uint64_t>>(doc, "budgets");
  if (doc.contains("checkpoint_budgets"))
    cfg.checkpoint_budgets = required<std::vector<std::uint64_t>>(doc, "checkpoint_budgets");
  cfg.runs = required<std::uint64_t>(doc, "runs");
  cfg.base_seed = doc.contains("base_seed") ? required<std::uint64_t>(doc, "base_seed") : 0;
  try {
    cfg.mode = parse_mode(doc.value("mode", std::string("bernoulli")));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return parse_config(doc);
}

json to_json(const Distribution& d) {
  switch (d.kind()) {
    case DistributionKind::bernoulli: return {{"kind", "bernoulli"}, {"p", d.parameter()}};
    case DistributionKind::fixed: return {{"kind", "fixed"}, {"value", d.parameter()}};
    case DistributionKind::multinomial: {
      const auto s = d.support();
      const auto p = d.probs();
      return {{"kind", "multinomial"},
              {"support", std::vector<double>(s.begin(), s.end())},
              {"probs", std::vector<double>(p.begin(), p.end())}};
    }
  }
  return {};
}

json to_json(const BanditInstance& instance) {
  json arms = json::array();
  for (const ArmModel& a : instance.arms()) arms.push_back({{"reward", to_json(a.reward)}, {"cost", to_json(a.cost)}});
  return {{"arms", arms}};
}

// ---------------------------------------------------------------------------
// Execution

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t policy_id, std::uint64_t budget,
                          std::uint64_t run_index) noexcept {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t h = mix64(base_seed + kGolden);
  h = mix64((h ^ policy_id) + kGolden);
  h = mix64((h ^ budget) + kGolden);
  h = mix64((h ^ run_index) + kGolden);
  return h;
}

namespace {

// One unit of work: a single seeded run that fills one or more output slots.
struct Task {
  std::size_t policy = 0;
  std::vector<std::uint64_t> budgets;
  std::uint64_t run = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> slots;
};

bool checkpointed(const ExperimentConfig& config, const PolicyKind& p) {
  return p.anytime() && !config.checkpoint_budgets.empty();
}

std::vector<Task> plan(const ExperimentConfig& config) {
  std::vector<Task> tasks;
  std::size_t slot = 0;
  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    if (checkpointed(config, config.policies[p])) {
      const auto& cps = config.checkpoint_budgets;
      for (std::uint64_t r = 0; r < config.runs; ++r) {
        Task t{p, cps, r, derive_seed(config.base_seed, p, cps.back(), r), {}};
        for (std::size_t j = 0; j < cps.size(); ++j) t.slots.push_back(slot + j * config.runs + r);
        tasks.push_back(std::move(t));
      }
      slot += cps.size() * config.runs;
    } else {
      for (std::uint64_t b : config.budgets) {
        for (std::uint64_t r = 0; r < config.runs; ++r)
          tasks.push_back({p, {b}, r, derive_seed(config.base_seed, p, b, r), {slot++}});
      }
    }
  }
  return tasks;
}

ResultRow make_row(const BanditInstance& instance, const std::string& label, const Task& task,
                   const Trajectory& traj, Mode mode) {
  ResultRow row;
  row.policy = label;
  row.budget = traj.budget;
  row.run = task.run;
  row.seed = task.seed;
  const RegretReport rep = pseudo_regret(instance, traj, traj.budget, mode);
  row.regret = rep.regret;
  row.gap_weighted_pulls = rep.gap_weighted_pulls;
  row.total_reward = traj.total_reward;
  row.total_cost = traj.total_cost;
  row.stopping_time = traj.stopping_time;
  row.pulls_optimal = traj.pulls[instance.optimal_arm()];
  row.pulls = traj.pulls;
  return row;
}

}  // namespace

std::size_t expected_row_count(const ExperimentConfig& config) {
  std::size_t n = 0;
  for (const PolicyKind& p : config.policies)
    n += (checkpointed(config, p) ? config.checkpoint_budgets.size() : config.budgets.size()) * config.runs;
  return n;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, unsigned threads) {
  validate(config);
  const BanditInstance instance = config.build_instance();
  const std::vector<Task> tasks = plan(config);
  std::vector<std::string> labels;
  for (const PolicyKind& p : config.policies) labels.push_back(p.label());

  std::vector<ResultRow> rows(expected_row_count(config));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      try {
        RngStream rng(task.seed);
        const PolicyKind& kind = config.policies[task.policy];
        try {
          const auto trajs = run_checkpointed(instance, kind, task.budgets, config.mode, rng);
          for (std::size_t j = 0; j < trajs.size(); ++j)
            rows[task.slots[j]] = make_row(instance, labels[task.policy], task, trajs[j], config.mode);
        } catch (const RunawayError&) {
          for (std::size_t j = 0; j < task.slots.size(); ++j) {
            ResultRow& row = rows[task.slots[j]];
            row.policy = labels[task.policy];
            row.budget = task.budgets[j];
            row.run = task.run;
            row.seed = task.seed;
            row.failed = true;
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(tasks.size());
        return;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

// ---------------------------------------------------------------------------
// Persistence and aggregation

void write_rows_csv(std::ostream& out, std::span<const ResultRow> rows) {
  const std::size_t k = rows.empty() ? 0 : std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
                                             return a.pulls.size() < b.pulls.size();
                                           })->pulls.size();
  out << "policy,budget,run,seed,regret,total_reward,total_cost,stopping_time,pulls_optimal";
  for (std::size_t i = 1; i <= k; ++i) out << ",pulls_arm_" << i;
  out << '\n';
  for (const ResultRow& r : rows) {
    out << r.policy << ',' << r.budget << ',' << r.run << ',' << r.seed << ',';
    if (r.failed) {
      out << "error,,,,";
      for (std::size_t i = 0; i < k; ++i) out << ',';
    } else {
      out << format_number(r.regret) << ',' << format_number(r.total_reward) << ','
          << format_number(r.total_cost) << ',' << r.stopping_time << ',' << r.pulls_optimal;
      for (std::uint64_t n : r.pulls) out << ',' << n;
    }
    out << '\n';
  }
}

std::vector<ResultRow> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("read_rows_csv: missing header");
  const auto header = split_csv_line(line);
  constexpr std::size_t fixed_columns = 9;
  if (header.size() < fixed_columns || header[0] != "policy" || header[4] != "regret")
    throw std::invalid_argument("read_rows_csv: unexpected header");
  const std::size_t k = header.size() - fixed_columns;

  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size())
      throw std::invalid_argument("read_rows_csv: line " + std::to_string(line_no) + " has " +
                                  std::to_string(f.size()) + " fields");
    ResultRow r;
    r.policy = f[0];
    r.budget = parse_uint(f[1]);
    r.run = parse_uint(f[2]);
    r.seed = parse_uint(f[3]);
    if (f[4] == "error") {
      r.failed = true;
    } else {
      r.regret = parse_double(f[4]);
      r.total_reward = parse_double(f[5]);
      r.total_cost = parse_double(f[6]);
      r.stopping_time = parse_uint(f[7]);
      r.pulls_optimal = parse_uint(f[8]);
      for (std::size_t i = 0; i < k; ++i) r.pulls.push_back(parse_uint(f[fixed_columns + i]));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<AggregateRow> aggregate(std::span<const ResultRow> rows) {
  if (rows.empty()) throw std::invalid_argument("aggregate: no rows");

  struct Group {
    AggregateRow out;
    std::vector<double> regrets;
  };
  std::vector<Group> groups;
  for (const ResultRow& r : rows) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.out.policy == r.policy && g.out.budget == r.budget;
    });
    if (it == groups.end()) {
      groups.push_back({});
      it = std::prev(groups.end());
      it->out.policy = r.policy;
      it->out.budget = r.budget;
    }
    if (r.failed)
      it->out.failed_runs += 1;
    else
      it->regrets.push_back(r.regret);
  }

  std::vector<AggregateRow> result;
  result.reserve(groups.size());
  for (Group& g : groups) {
    const std::size_t n = g.regrets.size();
    if (n == 0)
      throw std::invalid_argument("aggregate: no successful runs for " + g.out.policy + " at budget " +
                                  std::to_string(g.out.budget));
    double sum = 0.0;
    for (double x : g.regrets) sum += x;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : g.regrets) ss += (x - mean) * (x - mean);
    g.out.mean_regret = mean;
    g.out.runs = n;
    g.out.single_run = n == 1;
    g.out.std_regret = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    result.push_back(g.out);
  }
  return result;
}

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows) {
  out << "policy,budget,mean_regret,std_regret,runs\n";
  for (const AggregateRow& r : rows)
    out << r.policy << ',' << r.budget << ',' << format_number(r.mean_regret) << ','
        << format_number(r.std_regret) << ',' << r.runs << '\n';
}

}  // namespace bmab
