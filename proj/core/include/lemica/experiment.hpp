#ifndef LEMICA_EXPERIMENT_HPP
#define LEMICA_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lemica/error_oracle.hpp"
#include "lemica/greedy.hpp"
#include "lemica/io.hpp"
#include "lemica/planner.hpp"

namespace lemica {

struct ExperimentConfig {
    ModelFamily family;
    int num_steps = 30;
    int max_skip = 8;
    std::vector<uint64_t> build_seeds;
    std::vector<uint64_t> eval_seeds;
    std::vector<int> budgets;  // defaults to {7, 9, 12, 19} when T == 30
    std::vector<std::string> strategies = {"lexmin", "shortest", "greedy"};
    std::string out_dir = "out";

    static ExperimentConfig defaults();
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    // checks seed disjointness, budget feasibility and strategy names
    void validate() const;
};

struct ReplayReport {
    std::string strategy;
    int budget = 0;
    std::vector<double> per_seed_l1;  // final mean-abs error vs. the full run
    double mean_l1 = 0.0;
    double std_l1 = 0.0;
    int denoiser_calls = 0;
    double wall_ms = 0.0;
};

struct BuildGraphResult {
    ErrorMatrix matrix;
    LocalErrorProfile profile;
};

// Measures the error matrix and local profile over the build seeds.
BuildGraphResult run_build_graph(const ExperimentConfig& config);

// Plans one schedule. Greedy needs the local profile and calibrates its
// threshold to the requested budget.
ScheduleFile run_plan(const ErrorMatrix& matrix, const LocalErrorProfile* profile,
                      int budget, const std::string& strategy);

// Replays a schedule over the eval seeds against the uncached run.
ReplayReport run_replay(const ScheduleFile& schedule, const ExperimentConfig& config);

// One replay row per (strategy, budget) pair.
std::vector<ReplayReport> run_sweep(const ExperimentConfig& config,
                                    const BuildGraphResult& build);

// header "strategy,budget,mean_l1,std_l1,calls,wall_ms"
std::string sweep_to_csv(const std::vector<ReplayReport>& rows);

struct OracleCheckResult {
    int trials = 0;
    int failures = 0;
    std::string first_failure_fixture;  // JSON text of the failing graph, empty if none
};

// Random-trial equivalence of plan_lexmin against the enumeration oracle,
// over every feasible budget of every generated graph. inject_bug swaps in
// the additive planner as a negative control; the suite must then fail and
// emit the counterexample.
OracleCheckResult run_oracle_check(int trials, int max_num_steps, int max_skip,
                                   uint64_t seed = 20240601, bool inject_bug = false);

}  // namespace lemica

#endif
