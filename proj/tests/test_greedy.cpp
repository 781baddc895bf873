#include "doctest.h"

#include <stdexcept>

#include "lemica/greedy.hpp"

using namespace lemica;

namespace {

LocalErrorProfile make_profile(std::vector<double> entries) {
    LocalErrorProfile p;
    p.num_steps = static_cast<int>(entries.size()) + 1;
    p.rel_l1 = std::move(entries);
    return p;
}

}  // namespace

TEST_CASE("huge threshold caches everything into a single jump") {
    const auto p = make_profile({0.3, 0.1, 0.2, 0.4});
    const auto nodes = greedy_schedule(p, {1e9, 5});
    CHECK(nodes == std::vector<int>{0, 5});
}

TEST_CASE("tiny threshold computes every node") {
    const auto p = make_profile({0.3, 0.1, 0.2, 0.4});
    const auto nodes = greedy_schedule(p, {0.05, 5});
    CHECK(nodes == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("hand-traced accumulation") {
    // acc: 0.3, 0.6 -> compute node 2, 0.3, 0.6 -> compute node 4
    const auto p = make_profile({0.3, 0.3, 0.3, 0.3});
    const auto nodes = greedy_schedule(p, {0.5, 5});
    CHECK(nodes == std::vector<int>{0, 2, 4, 5});
}

TEST_CASE("greedy schedule rejects bad arguments") {
    const auto p = make_profile({0.1, 0.2});
    CHECK_THROWS_AS(greedy_schedule(p, {0.0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(greedy_schedule(p, {0.5, 4}), std::invalid_argument);
}

TEST_CASE("calibrating to the full budget") {
    const auto p = make_profile({0.3, 0.1, 0.2, 0.4});
    const Calibration c = calibrate_threshold(p, 5);
    CHECK(c.realized_budget == 5);
    CHECK(c.nodes == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("calibrating a constant profile to the hand-traced budget") {
    const auto p = make_profile({0.2, 0.2, 0.2, 0.2});
    const Calibration c = calibrate_threshold(p, 3);
    CHECK(c.realized_budget == 3);
    CHECK(c.nodes == std::vector<int>{0, 2, 4, 5});
    CHECK(c.threshold > 0.2);
    CHECK(c.threshold <= 0.4 + 1e-9);
}

TEST_CASE("unreachable budgets fall back to the closest one from below") {
    // only budgets 1, 3, 5 are realizable for this profile
    const auto p = make_profile({0.2, 0.2, 0.2, 0.2});
    const Calibration c = calibrate_threshold(p, 4);
    CHECK(c.realized_budget == 3);
}

TEST_CASE("realized budget is non-increasing in the threshold") {
    const auto p = make_profile({0.13, 0.31, 0.07, 0.22, 0.18, 0.25, 0.09, 0.16});
    int prev = 1 << 20;
    for (double delta = 0.01; delta < 2.0; delta += 0.01) {
        const int b = static_cast<int>(greedy_schedule(p, {delta, 9}).size()) - 1;
        CHECK(b <= prev);
        prev = b;
    }
}
