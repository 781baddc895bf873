#include "lemica/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lemica/rng.hpp"

namespace lemica {

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig cfg;
    for (uint64_t s = 1; s <= 20; ++s) cfg.build_seeds.push_back(s);
    for (uint64_t s = 101; s <= 110; ++s) cfg.eval_seeds.push_back(s);
    cfg.budgets = {7, 9, 12, 19};
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg = defaults();
    if (j.contains("dim")) cfg.family.dim = j.at("dim").get<int>();
    if (j.contains("num_components")) cfg.family.num_components = j.at("num_components").get<int>();
    if (j.contains("component_std")) cfg.family.component_std = j.at("component_std").get<double>();
    if (j.contains("mean_range")) cfg.family.mean_range = j.at("mean_range").get<double>();
    if (j.contains("num_steps")) cfg.num_steps = j.at("num_steps").get<int>();
    if (j.contains("max_skip")) cfg.max_skip = j.at("max_skip").get<int>();
    if (j.contains("build_seeds")) cfg.build_seeds = j.at("build_seeds").get<std::vector<uint64_t>>();
    if (j.contains("eval_seeds")) cfg.eval_seeds = j.at("eval_seeds").get<std::vector<uint64_t>>();
    if (j.contains("budgets")) {
        cfg.budgets = j.at("budgets").get<std::vector<int>>();
    } else if (cfg.num_steps != 30) {
        cfg.budgets.clear();  // the {7,9,12,19} default is tied to T = 30
    }
    if (j.contains("strategies")) cfg.strategies = j.at("strategies").get<std::vector<std::string>>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    cfg.validate();
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    return {{"dim", family.dim},
            {"num_components", family.num_components},
            {"component_std", family.component_std},
            {"mean_range", family.mean_range},
            {"num_steps", num_steps},
            {"max_skip", max_skip},
            {"build_seeds", build_seeds},
            {"eval_seeds", eval_seeds},
            {"budgets", budgets},
            {"strategies", strategies},
            {"out_dir", out_dir}};
}

void ExperimentConfig::validate() const {
    if (num_steps <= 0) throw std::invalid_argument("config: num_steps must be positive");
    if (max_skip < 1 || max_skip > num_steps) {
        throw std::invalid_argument("config: max_skip must lie in [1, num_steps]");
    }
    if (build_seeds.empty()) throw std::invalid_argument("config: build_seeds must be non-empty");
    if (eval_seeds.empty()) throw std::invalid_argument("config: eval_seeds must be non-empty");

    std::set<uint64_t> build(build_seeds.begin(), build_seeds.end());
    for (uint64_t s : eval_seeds) {
        if (build.count(s)) {
            throw std::invalid_argument("config: build and eval seed sets overlap at seed " +
                                        std::to_string(s));
        }
    }
    const int min_b = (num_steps + max_skip - 1) / max_skip;
    for (int b : budgets) {
        if (b < min_b || b > num_steps) {
            throw std::invalid_argument("config: budget " + std::to_string(b) +
                                        " outside feasible range [" + std::to_string(min_b) +
                                        ", " + std::to_string(num_steps) + "]");
        }
    }
    for (const auto& s : strategies) {
        if (s != "lexmin" && s != "shortest" && s != "greedy") {
            throw std::invalid_argument("config: unknown strategy '" + s + "'");
        }
    }
}

BuildGraphResult run_build_graph(const ExperimentConfig& config) {
    config.validate();
    const NoiseSchedule schedule = NoiseSchedule::cosine(config.num_steps);
    BuildGraphResult result;
    result.matrix = build_error_matrix(config.family, schedule, config.build_seeds, config.max_skip);
    result.profile = build_local_profile(config.family, schedule, config.build_seeds);
    return result;
}

ScheduleFile run_plan(const ErrorMatrix& matrix, const LocalErrorProfile* profile,
                      int budget, const std::string& strategy) {
    const ScheduleGraph graph = build_graph(matrix);
    ScheduleFile file;
    file.num_steps = graph.num_steps;
    file.strategy = strategy;

    if (strategy == "lexmin" || strategy == "shortest") {
        const SchedulePath path =
            strategy == "lexmin" ? plan_lexmin(graph, budget) : plan_shortest(graph, budget);
        file.budget = budget;
        file.nodes = path.nodes;
        file.signature = path.signature.weights;
    } else if (strategy == "greedy") {
        if (profile == nullptr) {
            throw std::invalid_argument("run_plan: greedy strategy needs a local error profile");
        }
        const Calibration cal = calibrate_threshold(*profile, budget);
        file.budget = budget;
        file.nodes = cal.nodes;
        file.threshold = cal.threshold;
        file.realized_budget = cal.realized_budget;
        // signature only when every edge fits the graph band
        bool in_band = true;
        for (size_t k = 0; k + 1 < cal.nodes.size(); ++k) {
            if (cal.nodes[k + 1] - cal.nodes[k] > graph.max_skip) in_band = false;
        }
        if (in_band) {
            file.signature =
                validate_path(graph, cal.nodes, cal.realized_budget).signature.weights;
        }
    } else {
        throw std::invalid_argument("run_plan: unknown strategy '" + strategy + "'");
    }
    return file;
}

ReplayReport run_replay(const ScheduleFile& schedule, const ExperimentConfig& config) {
    if (schedule.num_steps != config.num_steps) {
        throw std::invalid_argument("run_replay: schedule is for T=" +
                                    std::to_string(schedule.num_steps) + ", config has T=" +
                                    std::to_string(config.num_steps));
    }
    const NoiseSchedule noise = NoiseSchedule::cosine(config.num_steps);
    ReplayReport report;
    report.strategy = schedule.strategy;
    report.budget = schedule.budget;
    report.denoiser_calls = static_cast<int>(schedule.nodes.size()) - 1;

    const auto t0 = std::chrono::steady_clock::now();
    report.per_seed_l1.resize(config.eval_seeds.size());
    for (size_t s = 0; s < config.eval_seeds.size(); ++s) {
        const ModelFamily::Draw draw = config.family.sample(config.eval_seeds[s]);
        const Trajectory full = run_full(draw.model, noise, draw.x_init);
        const Vec cached = run_cached(draw.model, noise, draw.x_init, schedule.nodes);
        double acc = 0.0;
        for (int d = 0; d < draw.model.dim; ++d) {
            acc += std::abs(cached[d] - full.states[config.num_steps][d]);
        }
        report.per_seed_l1[s] = acc / draw.model.dim;
    }
    const auto t1 = std::chrono::steady_clock::now();
    report.wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count() / config.eval_seeds.size();

    double mean = 0.0;
    for (double v : report.per_seed_l1) mean += v;
    mean /= report.per_seed_l1.size();
    double var = 0.0;
    for (double v : report.per_seed_l1) var += (v - mean) * (v - mean);
    report.mean_l1 = mean;
    report.std_l1 = report.per_seed_l1.size() > 1
                        ? std::sqrt(var / (report.per_seed_l1.size() - 1))
                        : 0.0;
    return report;
}

std::vector<ReplayReport> run_sweep(const ExperimentConfig& config,
                                    const BuildGraphResult& build) {
    config.validate();
    std::vector<ReplayReport> rows;
    for (const auto& strategy : config.strategies) {
        for (int b : config.budgets) {
            const ScheduleFile schedule = run_plan(build.matrix, &build.profile, b, strategy);
            rows.push_back(run_replay(schedule, config));
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<ReplayReport>& rows) {
    std::string out = "strategy,budget,mean_l1,std_l1,calls,wall_ms\n";
    for (const auto& r : rows) {
        out += r.strategy + "," + std::to_string(r.budget) + "," + format_double(r.mean_l1) +
               "," + format_double(r.std_l1) + "," + std::to_string(r.denoiser_calls) + "," +
               format_double(r.wall_ms) + "\n";
    }
    return out;
}

OracleCheckResult run_oracle_check(int trials, int max_num_steps, int max_skip,
                                   uint64_t seed, bool inject_bug) {
    if (trials < 0) throw std::invalid_argument("run_oracle_check: trials must be >= 0");
    if (trials > 0 && (max_num_steps < 2 || max_skip < 1)) {
        throw std::invalid_argument("run_oracle_check: need max_num_steps >= 2 and max_skip >= 1");
    }
    OracleCheckResult result;
    SplitMix64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const int T = 2 + static_cast<int>(rng.next_u64() % (max_num_steps - 1));
        const int L = 1 + static_cast<int>(rng.next_u64() % std::min(max_skip, T));
        ErrorMatrix m = ErrorMatrix::zeros(T, L, 1);
        for (int len = 2; len <= L; ++len) {
            for (int i = 0; i + len <= T; ++i) m.set(i, i + len, rng.next_uniform());
        }
        const ScheduleGraph graph = build_graph(m);
        const auto [min_b, max_b] = feasible_budgets(graph);
        for (int b = min_b; b <= max_b; ++b) {
            ++result.trials;
            const SchedulePath planned =
                inject_bug ? plan_shortest(graph, b) : plan_lexmin(graph, b);
            const auto [oracle_sig, oracle_path] = enumerate_optimal(graph, b);
            if (compare_lex(planned.signature, oracle_sig) != 0 ||
                planned.nodes != oracle_path.nodes) {
                ++result.failures;
                if (result.first_failure_fixture.empty()) {
                    nlohmann::json fixture = error_matrix_to_json(m);
                    fixture["budget"] = b;
                    fixture["planned_nodes"] = planned.nodes;
                    fixture["planned_signature"] = planned.signature.weights;
                    fixture["oracle_nodes"] = oracle_path.nodes;
                    fixture["oracle_signature"] = oracle_sig.weights;
                    result.first_failure_fixture = fixture.dump(2);
                }
            }
        }
    }
    return result;
}

}  // namespace lemica
