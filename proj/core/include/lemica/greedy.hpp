#ifndef LEMICA_GREEDY_HPP
#define LEMICA_GREEDY_HPP

#include <vector>

#include "lemica/error_oracle.hpp"

namespace lemica {

struct GreedyConfig {
    double threshold = 0.0;  // delta, must be > 0
    int num_steps = 0;
};

// Local-greedy threshold policy: accumulate the relative-L1 profile since
// the last full computation and recompute when the sum crosses the
// threshold (accumulator resets to 0). Returns the computed-node sequence
// [0, ..., T]; edge lengths may exceed any graph's max_skip.
std::vector<int> greedy_schedule(const LocalErrorProfile& profile, const GreedyConfig& config);

struct Calibration {
    double threshold = 0.0;
    int realized_budget = 0;
    std::vector<int> nodes;
};

// Binary-search the threshold so the greedy schedule spends exactly
// target_budget edges; when no threshold lands exactly on the target, the
// closest realizable budget from below is returned.
Calibration calibrate_threshold(const LocalErrorProfile& profile, int target_budget);

}  // namespace lemica

#endif
