#ifndef LEMICA_PLANNER_HPP
#define LEMICA_PLANNER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "lemica/schedule_graph.hpp"

namespace lemica {

struct BudgetInfeasible : std::runtime_error {
    int budget, min_budget, max_budget;
    BudgetInfeasible(int b, int lo, int hi)
        : std::runtime_error("budget " + std::to_string(b) + " infeasible, valid range [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          budget(b), min_budget(lo), max_budget(hi) {}
};

struct OracleTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact-budget path whose descending-sorted cache-error vector is
// lexicographically minimal; ties broken by the lexicographically smallest
// node sequence.
SchedulePath plan_lexmin(const ScheduleGraph& graph, int budget);

// Exact-budget path minimizing the sum of cache-edge weights (additive
// relaxation baseline), same tie-break.
SchedulePath plan_shortest(const ScheduleGraph& graph, int budget);

// Brute-force enumeration of every budget-edge path. Testing oracle only;
// throws OracleTooLarge when the path count exceeds max_paths.
std::pair<LexSignature, SchedulePath> enumerate_optimal(const ScheduleGraph& graph, int budget,
                                                        uint64_t max_paths = 10'000'000);

// number of source-to-sink paths with exactly budget edges
uint64_t count_paths(const ScheduleGraph& graph, int budget);

}  // namespace lemica

#endif
