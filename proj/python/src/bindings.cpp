#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "bmab/harness.hpp"
#include "bmab/theory.hpp"

namespace py = pybind11;
using namespace bmab;

namespace {

BanditInstance instance_from_pairs(const std::vector<std::pair<Distribution, Distribution>>& arms) {
  std::vector<ArmModel> models;
  for (const auto& [r, c] : arms) models.push_back({r, c});
  return BanditInstance(std::move(models));
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_rows_csv(out, rows);
  return out.str();
}

std::string aggregate_to_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  write_aggregate_csv(out, rows);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Budgeted multi-armed bandits: Budgeted Thompson Sampling, baselines and an experiment harness.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<RunawayError>(m, "RunawayError", PyExc_RuntimeError);
  py::register_exception<DegenerateDenominator>(m, "DegenerateDenominator", PyExc_ArithmeticError);

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_property_readonly("seed", &RngStream::seed)
      .def("next_word", &RngStream::next_word)
      .def("next_unit", &RngStream::next_unit);

  m.def("sample_beta", &sample_beta, py::arg("alpha"), py::arg("beta"), py::arg("rng"));
  m.def("bernoulli_trial", &bernoulli_trial, py::arg("x"), py::arg("rng"));
  m.def("derive_seed", &derive_seed, py::arg("base_seed"), py::arg("policy_id"), py::arg("budget"),
        py::arg("run_index"));

  py::enum_<DistributionKind>(m, "DistributionKind")
      .value("bernoulli", DistributionKind::bernoulli)
      .value("multinomial", DistributionKind::multinomial)
      .value("fixed", DistributionKind::fixed);

  py::class_<Distribution>(m, "Distribution")
      .def_static("bernoulli", &Distribution::bernoulli, py::arg("p"))
      .def_static("multinomial", &Distribution::multinomial, py::arg("support"), py::arg("probs"))
      .def_static("fixed", &Distribution::fixed, py::arg("value"))
      .def_property_readonly("kind", &Distribution::kind)
      .def_property_readonly("mean", &Distribution::mean)
      .def_property_readonly("variance", &Distribution::variance)
      .def("sample", &Distribution::sample, py::arg("rng"))
      .def("__repr__", [](const Distribution& d) { return "Distribution(" + to_json(d).dump() + ")"; });

  py::class_<BanditInstance>(m, "BanditInstance")
      .def(py::init(&instance_from_pairs), py::arg("arms"),
           "Build from a list of (reward, cost) distribution pairs.")
      .def("__len__", &BanditInstance::size)
      .def("reward_mean", &BanditInstance::reward_mean)
      .def("cost_mean", &BanditInstance::cost_mean)
      .def("ratio", &BanditInstance::ratio)
      .def("gap", &BanditInstance::gap)
      .def_property_readonly("optimal_arm", &BanditInstance::optimal_arm)
      .def_property_readonly("optimal_ratio", &BanditInstance::optimal_ratio)
      .def_property_readonly("min_cost_mean", &BanditInstance::min_cost_mean)
      .def("to_json", [](const BanditInstance& inst) { return to_json(inst).dump(); });

  m.def("generate_instance", [](std::uint64_t seed, std::size_t arms, const std::string& family) {
    return generate_instance(seed, arms, parse_instance_family(family));
  }, py::arg("seed"), py::arg("arms"), py::arg("family") = "bernoulli");

  py::enum_<Mode>(m, "Mode").value("bernoulli", Mode::bernoulli).value("general", Mode::general);

  py::class_<PolicyKind>(m, "PolicyKind")
      .def_static("bts", &PolicyKind::bts)
      .def_static("epsilon_first", &PolicyKind::epsilon_first, py::arg("epsilon") = 0.1)
      .def_static("pd_bwk", &PolicyKind::pd_bwk)
      .def_static("ucb_bv1", &PolicyKind::ucb_bv1, py::arg("lambda_") = std::nullopt)
      .def_static("kube_variant", &PolicyKind::kube_variant)
      .def_property_readonly("anytime", &PolicyKind::anytime)
      .def_property_readonly("label", &PolicyKind::label)
      .def("__repr__", [](const PolicyKind& p) { return "PolicyKind(" + p.label() + ")"; });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("budget", &Trajectory::budget)
      .def_readonly("stopping_time", &Trajectory::stopping_time)
      .def_readonly("pulls", &Trajectory::pulls)
      .def_readonly("total_reward", &Trajectory::total_reward)
      .def_readonly("total_cost", &Trajectory::total_cost);

  m.def("run_trajectory", &run_trajectory, py::arg("instance"), py::arg("policy"), py::arg("budget"),
        py::arg("mode"), py::arg("rng"));
  m.def("run_checkpointed", [](const BanditInstance& inst, const PolicyKind& p, std::vector<std::uint64_t> cps,
                               Mode mode, RngStream& rng) { return run_checkpointed(inst, p, cps, mode, rng); },
        py::arg("instance"), py::arg("policy"), py::arg("checkpoints"), py::arg("mode"), py::arg("rng"));

  py::class_<OptimalValue>(m, "OptimalValue")
      .def_readonly("value", &OptimalValue::value)
      .def_readonly("upper_bound", &OptimalValue::upper_bound);
  py::class_<RegretReport>(m, "RegretReport")
      .def_readonly("regret", &RegretReport::regret)
      .def_readonly("gap_weighted_pulls", &RegretReport::gap_weighted_pulls)
      .def_readonly("upper_bound", &RegretReport::upper_bound);
  m.def("optimal_value", &optimal_value, py::arg("instance"), py::arg("budget"), py::arg("mode"));
  m.def("pseudo_regret", &pseudo_regret, py::arg("instance"), py::arg("trajectory"), py::arg("budget"),
        py::arg("mode"));

  py::enum_<TailRegime>(m, "TailRegime").value("quartic", TailRegime::quartic).value("sextic", TailRegime::sextic);
  py::class_<ArmGaps>(m, "ArmGaps")
      .def_readonly("arm", &ArmGaps::arm)
      .def_readonly("ratio_gap", &ArmGaps::ratio_gap)
      .def_readonly("delta_gap", &ArmGaps::delta_gap)
      .def_readonly("epsilon_gap", &ArmGaps::epsilon_gap)
      .def_readonly("pull_threshold", &ArmGaps::pull_threshold)
      .def_readonly("regime", &ArmGaps::regime)
      .def_readonly("regime_order", &ArmGaps::regime_order);
  py::class_<GapReport>(m, "GapReport")
      .def_readonly("gamma", &GapReport::gamma)
      .def_readonly("budget", &GapReport::budget)
      .def_readonly("optimal_arm", &GapReport::optimal_arm)
      .def_readonly("arms", &GapReport::arms)
      .def_readonly("tied_arms", &GapReport::tied_arms);
  py::class_<LnBCoefficient>(m, "LnBCoefficient")
      .def_readonly("value", &LnBCoefficient::value)
      .def_readonly("excluded_arms", &LnBCoefficient::excluded_arms);
  m.def("gaps", &gaps, py::arg("instance"), py::arg("gamma"), py::arg("budget"));
  m.def("ratio_gap_identity_residual", &ratio_gap_identity_residual, py::arg("instance"), py::arg("arm"),
        py::arg("gamma"));
  m.def("bts_lnB_constant", &bts_lnB_constant, py::arg("instance"), py::arg("gamma"));
  m.def("ucbbv1_lnB_constant", &ucbbv1_lnB_constant, py::arg("instance"));
  m.def("beta_binomial_cdf", &beta_binomial_cdf, py::arg("alpha"), py::arg("beta"), py::arg("y"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readonly("policies", &ExperimentConfig::policies)
      .def_readonly("budgets", &ExperimentConfig::budgets)
      .def_readonly("checkpoint_budgets", &ExperimentConfig::checkpoint_budgets)
      .def_readwrite("runs", &ExperimentConfig::runs)
      .def_readwrite("base_seed", &ExperimentConfig::base_seed)
      .def_readonly("mode", &ExperimentConfig::mode)
      .def("build_instance", &ExperimentConfig::build_instance)
      .def("expected_row_count", [](const ExperimentConfig& c) { return expected_row_count(c); });
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", [](const std::string& text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(e.what());
    }
    return parse_config(doc);
  }, py::arg("text"), "Parse a JSON config from a string.");

  py::class_<ResultRow>(m, "ResultRow")
      .def_readonly("policy", &ResultRow::policy)
      .def_readonly("budget", &ResultRow::budget)
      .def_readonly("run", &ResultRow::run)
      .def_readonly("seed", &ResultRow::seed)
      .def_readonly("regret", &ResultRow::regret)
      .def_readonly("gap_weighted_pulls", &ResultRow::gap_weighted_pulls)
      .def_readonly("total_reward", &ResultRow::total_reward)
      .def_readonly("total_cost", &ResultRow::total_cost)
      .def_readonly("stopping_time", &ResultRow::stopping_time)
      .def_readonly("pulls_optimal", &ResultRow::pulls_optimal)
      .def_readonly("pulls", &ResultRow::pulls)
      .def_readonly("failed", &ResultRow::failed);
  py::class_<AggregateRow>(m, "AggregateRow")
      .def_readonly("policy", &AggregateRow::policy)
      .def_readonly("budget", &AggregateRow::budget)
      .def_readonly("mean_regret", &AggregateRow::mean_regret)
      .def_readonly("std_regret", &AggregateRow::std_regret)
      .def_readonly("runs", &AggregateRow::runs)
      .def_readonly("failed_runs", &AggregateRow::failed_runs)
      .def_readonly("single_run", &AggregateRow::single_run);

  m.def("run_experiment", &run_experiment, py::arg("config"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("aggregate", [](const std::vector<ResultRow>& rows) { return aggregate(rows); }, py::arg("rows"));
  m.def("rows_to_csv", &rows_to_csv, py::arg("rows"));
  m.def("aggregate_to_csv", &aggregate_to_csv, py::arg("rows"));
}
