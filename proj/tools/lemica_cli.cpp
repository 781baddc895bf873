// Command-line front end: offline error-matrix construction, schedule
// planning under the three strategies, schedule replay on the toy sampler,
// budget sweeps, and the planner-vs-enumeration oracle check.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lemica/experiment.hpp"

namespace fs = std::filesystem;
using namespace lemica;

namespace {

ExperimentConfig load_config(const std::string& path) {
    if (path.empty()) return ExperimentConfig::defaults();
    return ExperimentConfig::from_json(nlohmann::json::parse(read_text_file(path)));
}

std::vector<uint64_t> parse_seed_list(const std::string& csv) {
    std::vector<uint64_t> seeds;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        seeds.push_back(std::stoull(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return seeds;
}

int cmd_build_graph(const std::string& config_path, const std::string& out_dir) {
    const ExperimentConfig cfg = load_config(config_path);
    const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    fs::create_directories(dir);

    const auto t0 = std::chrono::steady_clock::now();
    const BuildGraphResult build = run_build_graph(cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const double total_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    write_text_file(dir + "/error_matrix.csv", error_matrix_to_csv(build.matrix));
    write_text_file(dir + "/error_matrix.json", error_matrix_to_json(build.matrix).dump(2) + "\n");
    write_text_file(dir + "/local_profile.json", local_profile_to_json(build.profile).dump(2) + "\n");

    std::printf("built error matrix: T=%d L=%d seeds=%zu entries=%zu\n", cfg.num_steps,
                cfg.max_skip, cfg.build_seeds.size(),
                build.matrix.values.size() - static_cast<size_t>(cfg.num_steps));
    std::printf("offline cost: %.1f ms total, %.2f ms per seed\n", total_ms,
                total_ms / cfg.build_seeds.size());
    std::printf("wrote %s/error_matrix.{csv,json}, %s/local_profile.json\n", dir.c_str(),
                dir.c_str());
    return 0;
}

int cmd_plan(const std::string& matrix_path, const std::string& profile_path, int budget,
             const std::string& strategy, const std::string& out_dir) {
    ErrorMatrix matrix;
    if (matrix_path.ends_with(".csv")) {
        matrix = error_matrix_from_csv(read_text_file(matrix_path));
    } else {
        matrix = error_matrix_from_json(nlohmann::json::parse(read_text_file(matrix_path)));
    }
    LocalErrorProfile profile;
    const bool have_profile = !profile_path.empty();
    if (have_profile) {
        profile = local_profile_from_json(nlohmann::json::parse(read_text_file(profile_path)));
    }

    const ScheduleFile schedule =
        run_plan(matrix, have_profile ? &profile : nullptr, budget, strategy);

    fs::create_directories(out_dir);
    const std::string path =
        out_dir + "/schedule_" + strategy + "_b" + std::to_string(budget) + ".json";
    write_text_file(path, schedule_to_json(schedule).dump(2) + "\n");

    double sum = 0.0, max_w = 0.0;
    for (double w : schedule.signature) {
        sum += w;
        max_w = std::max(max_w, w);
    }
    std::printf("strategy=%s budget=%d edges=%zu cache_edges=%zu\n", strategy.c_str(), budget,
                schedule.nodes.size() - 1, schedule.signature.size());
    std::printf("signature: max=%s sum=%s\n", format_double(max_w).c_str(),
                format_double(sum).c_str());
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_replay(const std::string& schedule_path, const std::string& config_path,
               const std::string& seeds_csv) {
    ExperimentConfig cfg = load_config(config_path);
    if (!seeds_csv.empty()) {
        cfg.eval_seeds = parse_seed_list(seeds_csv);
        cfg.validate();
    }
    const ScheduleFile schedule =
        schedule_from_json(nlohmann::json::parse(read_text_file(schedule_path)));
    const ReplayReport report = run_replay(schedule, cfg);

    std::printf("strategy=%s budget=%d denoiser_calls=%d\n", report.strategy.c_str(),
                report.budget, report.denoiser_calls);
    std::printf("final L1 vs full run over %zu eval seeds: mean=%s std=%s\n",
                report.per_seed_l1.size(), format_double(report.mean_l1).c_str(),
                format_double(report.std_l1).c_str());
    std::printf("wall time per run: %.3f ms\n", report.wall_ms);
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    const ExperimentConfig cfg = load_config(config_path);
    const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    fs::create_directories(dir);

    const BuildGraphResult build = run_build_graph(cfg);
    const std::vector<ReplayReport> rows = run_sweep(cfg, build);
    const std::string csv = sweep_to_csv(rows);
    write_text_file(dir + "/sweep.csv", csv);
    std::fputs(csv.c_str(), stdout);
    std::printf("wrote %s/sweep.csv\n", dir.c_str());
    return 0;
}

int cmd_oracle_check(int trials, int max_t, int max_l, uint64_t seed, bool inject_bug) {
    if (trials == 0) {
        std::printf("warning: 0 trials requested, vacuous pass\n");
        return 0;
    }
    const OracleCheckResult result = run_oracle_check(trials, max_t, max_l, seed, inject_bug);
    std::printf("oracle check: %d (graph, budget) cases, %d mismatches\n", result.trials,
                result.failures);
    if (result.failures > 0) {
        std::printf("first counterexample fixture:\n%s\n", result.first_failure_fixture.c_str());
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cache-schedule planner for a closed-form diffusion sampler"};
    app.require_subcommand(1);

    std::string config_path, matrix_path, profile_path, schedule_path, out_dir, seeds_csv;
    std::string strategy = "lexmin";
    int budget = 0;
    int trials = 200, max_t = 14, max_l = 5;
    uint64_t seed = 20240601;
    bool inject_bug = false;

    auto* build = app.add_subcommand("build-graph", "measure the error matrix over build seeds");
    build->add_option("--config", config_path, "experiment config JSON");
    build->add_option("--out", out_dir, "output directory");

    auto* plan = app.add_subcommand("plan", "plan a schedule from an error matrix");
    plan->add_option("--matrix", matrix_path, "error matrix file (.csv or .json)")->required();
    plan->add_option("--profile", profile_path, "local error profile JSON (needed for greedy)");
    plan->add_option("--budget", budget, "exact number of full forward computations")->required();
    plan->add_option("--strategy", strategy, "lexmin | shortest | greedy");
    plan->add_option("--out", out_dir, "output directory")->required();

    auto* replay = app.add_subcommand("replay", "replay a schedule against the full run");
    replay->add_option("--schedule", schedule_path, "schedule JSON")->required();
    replay->add_option("--config", config_path, "experiment config JSON");
    replay->add_option("--seeds", seeds_csv, "comma-separated eval seeds (overrides config)");

    auto* sweep = app.add_subcommand("sweep", "replay every (strategy, budget) pair");
    sweep->add_option("--config", config_path, "experiment config JSON");
    sweep->add_option("--out", out_dir, "output directory");

    auto* oracle = app.add_subcommand("oracle-check", "planner vs. enumeration oracle");
    oracle->add_option("--trials", trials, "number of random graphs");
    oracle->add_option("--max-t", max_t, "maximum trajectory length");
    oracle->add_option("--max-l", max_l, "maximum skip length");
    oracle->add_option("--seed", seed, "trial generator seed");
    oracle->add_flag("--inject-bug", inject_bug, "negative control: plan with the additive DP");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build_graph(config_path, out_dir);
        if (plan->parsed()) return cmd_plan(matrix_path, profile_path, budget, strategy, out_dir);
        if (replay->parsed()) return cmd_replay(schedule_path, config_path, seeds_csv);
        if (sweep->parsed()) return cmd_sweep(config_path, out_dir);
        if (oracle->parsed()) return cmd_oracle_check(trials, max_t, max_l, seed, inject_bug);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
