#include "doctest.h"

#include <stdexcept>

#include "lemica/experiment.hpp"

using namespace lemica;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.num_steps = 10;
    cfg.max_skip = 4;
    cfg.build_seeds = {1, 2, 3};
    cfg.eval_seeds = {11, 12};
    cfg.budgets = {4, 10};
    return cfg;
}

}  // namespace

TEST_CASE("schedule file round-trips through JSON") {
    ScheduleFile s;
    s.num_steps = 10;
    s.budget = 4;
    s.nodes = {0, 3, 5, 8, 10};
    s.signature = {0.4, 0.3, 0.2, 0.1};
    s.strategy = "lexmin";
    const ScheduleFile r = schedule_from_json(schedule_to_json(s));
    CHECK(r.nodes == s.nodes);
    CHECK(r.signature == s.signature);
    CHECK(r.strategy == "lexmin");
    CHECK_FALSE(r.threshold.has_value());

    s.strategy = "greedy";
    s.threshold = 0.25;
    s.realized_budget = 3;
    const ScheduleFile rg = schedule_from_json(schedule_to_json(s));
    CHECK(rg.threshold == 0.25);
    CHECK(rg.realized_budget == 3);
}

TEST_CASE("model config round-trips through the documented JSON schema") {
    ModelFamily family;
    const auto draw = family.sample(42);
    const auto schedule = NoiseSchedule::cosine(30);
    const nlohmann::json j = model_config_to_json(draw.model, schedule);
    CHECK(j.at("dim") == 8);
    CHECK(j.at("alpha_bar") == "cosine");
    const auto [model, sched] = model_config_from_json(j);
    CHECK(model.components.size() == draw.model.components.size());
    CHECK(model.components[2].mean == draw.model.components[2].mean);
    CHECK(sched.alpha_bar == schedule.alpha_bar);
}

TEST_CASE("explicit alpha_bar arrays are accepted and validated") {
    nlohmann::json j = model_config_to_json(ModelFamily{}.sample(1).model,
                                            NoiseSchedule::cosine(4));
    j["num_steps"] = 2;
    j["alpha_bar"] = {1.0, 0.5, 0.01};
    const auto [model, sched] = model_config_from_json(j);
    CHECK(sched.num_steps == 2);

    j["alpha_bar"] = {1.0, 0.5, 0.5};  // not strictly decreasing
    CHECK_THROWS_AS(model_config_from_json(j), std::invalid_argument);
    j["alpha_bar"] = "linear";
    CHECK_THROWS_AS(model_config_from_json(j), std::runtime_error);
}

TEST_CASE("experiment config rejects overlapping seed sets") {
    ExperimentConfig cfg = small_config();
    cfg.eval_seeds.push_back(2);
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("overlap"), std::invalid_argument);
}

TEST_CASE("experiment config reports infeasible budgets by name") {
    ExperimentConfig cfg = small_config();
    cfg.budgets = {1};  // min feasible is ceil(10/4) = 3
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("budget 1"), std::invalid_argument);
}

TEST_CASE("experiment config JSON round trip") {
    const ExperimentConfig cfg = small_config();
    const ExperimentConfig r = ExperimentConfig::from_json(cfg.to_json());
    CHECK(r.num_steps == 10);
    CHECK(r.build_seeds == cfg.build_seeds);
    CHECK(r.budgets == cfg.budgets);
}

TEST_CASE("build-graph outputs are deterministic byte for byte") {
    const ExperimentConfig cfg = small_config();
    const BuildGraphResult a = run_build_graph(cfg);
    const BuildGraphResult b = run_build_graph(cfg);
    CHECK(error_matrix_to_csv(a.matrix) == error_matrix_to_csv(b.matrix));
    CHECK(error_matrix_to_json(a.matrix).dump() == error_matrix_to_json(b.matrix).dump());
    CHECK(local_profile_to_json(a.profile).dump() == local_profile_to_json(b.profile).dump());
}

TEST_CASE("matrix file entries reproduce direct segment_error calls") {
    const ExperimentConfig cfg = small_config();
    const BuildGraphResult built = run_build_graph(cfg);
    const ErrorMatrix parsed = error_matrix_from_csv(error_matrix_to_csv(built.matrix));
    const auto schedule = NoiseSchedule::cosine(cfg.num_steps);
    // spot-check one cell against the mean of per-seed direct calls
    double acc = 0.0;
    for (uint64_t s : cfg.build_seeds) {
        const auto draw = cfg.family.sample(s);
        acc += segment_error(draw.model, schedule, draw.x_init, 2, 5);
    }
    CHECK(std::abs(parsed.at(2, 5) - acc / cfg.build_seeds.size()) <= 1e-12);
}

TEST_CASE("replay of the all-unit schedule is exact with T calls") {
    const ExperimentConfig cfg = small_config();
    const BuildGraphResult built = run_build_graph(cfg);
    const ScheduleFile s = run_plan(built.matrix, &built.profile, cfg.num_steps, "lexmin");
    const ReplayReport r = run_replay(s, cfg);
    CHECK(r.denoiser_calls == cfg.num_steps);
    CHECK(r.mean_l1 == 0.0);
    for (double v : r.per_seed_l1) CHECK(v == 0.0);
}

TEST_CASE("replay call-count accounting matches the planned budget") {
    const ExperimentConfig cfg = small_config();
    const BuildGraphResult built = run_build_graph(cfg);
    for (const char* strategy : {"lexmin", "shortest"}) {
        for (int b : {4, 6, 10}) {
            const ScheduleFile s = run_plan(built.matrix, &built.profile, b, strategy);
            const ReplayReport r = run_replay(s, cfg);
            CHECK(r.denoiser_calls == b);
        }
    }
}

TEST_CASE("greedy plan carries threshold and realized budget") {
    const ExperimentConfig cfg = small_config();
    const BuildGraphResult built = run_build_graph(cfg);
    const ScheduleFile s = run_plan(built.matrix, &built.profile, 5, "greedy");
    CHECK(s.strategy == "greedy");
    CHECK(s.threshold.has_value());
    CHECK(s.realized_budget.has_value());
    CHECK(*s.realized_budget <= 5);
    const ReplayReport r = run_replay(s, cfg);
    CHECK(r.denoiser_calls == static_cast<int>(s.nodes.size()) - 1);
}

TEST_CASE("greedy without a profile is rejected") {
    const ExperimentConfig cfg = small_config();
    const BuildGraphResult built = run_build_graph(cfg);
    CHECK_THROWS_AS(run_plan(built.matrix, nullptr, 5, "greedy"), std::invalid_argument);
}

TEST_CASE("sweep CSV follows the fixed schema") {
    ExperimentConfig cfg = small_config();
    cfg.budgets = {10};
    cfg.strategies = {"lexmin"};
    const BuildGraphResult built = run_build_graph(cfg);
    const auto rows = run_sweep(cfg, built);
    REQUIRE(rows.size() == 1);
    const std::string csv = sweep_to_csv(rows);
    CHECK(csv.rfind("strategy,budget,mean_l1,std_l1,calls,wall_ms\n", 0) == 0);
    CHECK(csv.find("lexmin,10,0,0,10,") != std::string::npos);
}

TEST_CASE("oracle check passes clean and fails under the injected bug") {
    const OracleCheckResult clean = run_oracle_check(25, 10, 4, 77);
    CHECK(clean.failures == 0);
    CHECK(clean.trials > 0);

    const OracleCheckResult broken = run_oracle_check(25, 10, 4, 77, true);
    CHECK(broken.failures > 0);
    CHECK_FALSE(broken.first_failure_fixture.empty());
    // the fixture is a loadable matrix
    const nlohmann::json fixture = nlohmann::json::parse(broken.first_failure_fixture);
    CHECK_NOTHROW(error_matrix_from_json(fixture));
}

TEST_CASE("zero-trial oracle check is a vacuous pass") {
    const OracleCheckResult r = run_oracle_check(0, 10, 4, 1);
    CHECK(r.trials == 0);
    CHECK(r.failures == 0);
}
