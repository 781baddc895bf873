#include "lemica/greedy.hpp"

#include <algorithm>
#include <stdexcept>

namespace lemica {

std::vector<int> greedy_schedule(const LocalErrorProfile& profile, const GreedyConfig& config) {
    if (!(config.threshold > 0.0)) {
        throw std::invalid_argument("greedy_schedule: threshold must be positive");
    }
    if (config.num_steps != profile.num_steps ||
        static_cast<int>(profile.rel_l1.size()) != profile.num_steps - 1) {
        throw std::invalid_argument("greedy_schedule: profile length must be num_steps - 1");
    }
    const int T = config.num_steps;
    std::vector<int> nodes = {0};
    double acc = 0.0;
    for (int n = 1; n < T; ++n) {
        acc += profile.rel_l1[n - 1];
        if (acc >= config.threshold) {
            nodes.push_back(n);
            acc = 0.0;
        }
    }
    nodes.push_back(T);
    return nodes;
}

Calibration calibrate_threshold(const LocalErrorProfile& profile, int target_budget) {
    const int T = profile.num_steps;
    if (target_budget < 1 || target_budget > T) {
        throw std::invalid_argument("calibrate_threshold: target budget outside [1, T]");
    }
    const auto realized = [&](double delta) {
        GreedyConfig cfg{delta, T};
        return static_cast<int>(greedy_schedule(profile, cfg).size()) - 1;
    };

    double total = 0.0, smallest = 0.0;
    for (double v : profile.rel_l1) total += v;
    for (double v : profile.rel_l1) {
        if (v > 0.0 && (smallest == 0.0 || v < smallest)) smallest = v;
    }
    double lo = smallest > 0.0 ? smallest * 0.5 : 1e-12;  // realizes the max budget
    double hi = total + 1.0;                              // nothing crosses: budget 1

    if (realized(lo) <= target_budget) {
        // already at or below target with the most permissive threshold
        const int b = realized(lo);
        return {lo, b, greedy_schedule(profile, {lo, T})};
    }
    // invariant: realized(lo) > target >= realized(hi)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (realized(mid) > target_budget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const int b = realized(hi);
    return {hi, b, greedy_schedule(profile, {hi, T})};
}

}  // namespace lemica
