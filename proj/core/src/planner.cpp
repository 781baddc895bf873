#include "lemica/planner.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace lemica {

namespace {

struct Candidate {
    bool feasible = false;
    std::vector<double> sig;  // descending
    std::vector<int> nodes;
};

// true if (sig_a, nodes_a) should replace (sig_b, nodes_b)
bool better(const std::vector<double>& sig_a, const std::vector<int>& nodes_a,
            const std::vector<double>& sig_b, const std::vector<int>& nodes_b) {
    const size_t n = std::min(sig_a.size(), sig_b.size());
    for (size_t k = 0; k < n; ++k) {
        if (sig_a[k] != sig_b[k]) return sig_a[k] < sig_b[k];
    }
    if (sig_a.size() != sig_b.size()) return sig_a.size() < sig_b.size();
    return nodes_a < nodes_b;
}

void insert_descending(std::vector<double>& sig, double w) {
    auto pos = std::upper_bound(sig.begin(), sig.end(), w, std::greater<double>());
    sig.insert(pos, w);
}

void check_budget(const ScheduleGraph& graph, int budget) {
    const auto [lo, hi] = feasible_budgets(graph);
    if (budget < lo || budget > hi) throw BudgetInfeasible(budget, lo, hi);
}

// DP over (node, edges-used) layers. Inserting the same weight into two
// weight multisets preserves their lexicographic order, so a single best
// candidate per state is exact; this is the tightest form of dominance
// pruning and is cross-checked against enumerate_optimal in the tests.
// value_of extracts the per-edge contribution (signature insert for lexmin,
// running sum for shortest).
template <typename Extend, typename Better>
SchedulePath plan_dp(const ScheduleGraph& graph, int budget, Extend&& extend, Better&& is_better) {
    check_budget(graph, budget);
    const int T = graph.num_steps;
    const int L = graph.max_skip;

    std::vector<Candidate> cur(T + 1), next(T + 1);
    cur[0].feasible = true;
    cur[0].nodes = {0};

    for (int k = 0; k < budget; ++k) {
        for (auto& c : next) c = Candidate{};
        for (int v = 0; v <= T; ++v) {
            if (!cur[v].feasible) continue;
            // enough progress left, and not overshooting the sink
            const int steps_left = budget - k;
            for (int len = 1; len <= L && v + len <= T; ++len) {
                const int u = v + len;
                if (T - u > (steps_left - 1) * L) continue;  // cannot reach sink anymore
                if (T - u < steps_left - 1) continue;        // would overshoot
                std::vector<double> sig = cur[v].sig;
                extend(sig, v, u);
                std::vector<int> nodes = cur[v].nodes;
                nodes.push_back(u);
                if (!next[u].feasible || is_better(sig, nodes, next[u])) {
                    next[u].feasible = true;
                    next[u].sig = std::move(sig);
                    next[u].nodes = std::move(nodes);
                }
            }
        }
        std::swap(cur, next);
    }
    // feasible_budgets guarantees this state is populated
    return validate_path(graph, cur[T].nodes, budget);
}

}  // namespace

SchedulePath plan_lexmin(const ScheduleGraph& graph, int budget) {
    return plan_dp(
        graph, budget,
        [&](std::vector<double>& sig, int v, int u) {
            if (u - v >= 2) insert_descending(sig, graph.weight(v, u));
        },
        [](const std::vector<double>& sig, const std::vector<int>& nodes, const Candidate& inc) {
            return better(sig, nodes, inc.sig, inc.nodes);
        });
}

SchedulePath plan_shortest(const ScheduleGraph& graph, int budget) {
    // sig holds a single running sum here
    return plan_dp(
        graph, budget,
        [&](std::vector<double>& sig, int v, int u) {
            if (sig.empty()) sig.push_back(0.0);
            if (u - v >= 2) sig[0] += graph.weight(v, u);
        },
        [](const std::vector<double>& sig, const std::vector<int>& nodes, const Candidate& inc) {
            const double a = sig.empty() ? 0.0 : sig[0];
            const double b = inc.sig.empty() ? 0.0 : inc.sig[0];
            if (a != b) return a < b;
            return nodes < inc.nodes;
        });
}

uint64_t count_paths(const ScheduleGraph& graph, int budget) {
    const int T = graph.num_steps;
    const int L = graph.max_skip;
    // saturating DP count
    const uint64_t cap = UINT64_MAX / 2;
    std::vector<uint64_t> cur(T + 1, 0), next(T + 1, 0);
    cur[0] = 1;
    for (int k = 0; k < budget; ++k) {
        std::fill(next.begin(), next.end(), 0);
        for (int v = 0; v <= T; ++v) {
            if (cur[v] == 0) continue;
            for (int len = 1; len <= L && v + len <= T; ++len) {
                uint64_t& slot = next[v + len];
                slot = (slot > cap - cur[v]) ? cap : slot + cur[v];
            }
        }
        std::swap(cur, next);
    }
    return cur[T];
}

std::pair<LexSignature, SchedulePath> enumerate_optimal(const ScheduleGraph& graph, int budget,
                                                        uint64_t max_paths) {
    check_budget(graph, budget);
    const uint64_t n_paths = count_paths(graph, budget);
    if (n_paths > max_paths) {
        throw OracleTooLarge("enumerate_optimal: " + std::to_string(n_paths) +
                             " paths exceed the guard of " + std::to_string(max_paths));
    }

    const int T = graph.num_steps;
    const int L = graph.max_skip;
    std::vector<int> nodes = {0};
    std::vector<double> best_sig;
    std::vector<int> best_nodes;
    bool found = false;

    std::function<void(int, int)> dfs = [&](int v, int edges_left) {
        if (edges_left == 0) {
            if (v != T) return;
            std::vector<double> sig;
            for (size_t k = 0; k + 1 < nodes.size(); ++k) {
                if (nodes[k + 1] - nodes[k] >= 2) sig.push_back(graph.weight(nodes[k], nodes[k + 1]));
            }
            std::sort(sig.begin(), sig.end(), std::greater<double>());
            if (!found || better(sig, nodes, best_sig, best_nodes)) {
                found = true;
                best_sig = std::move(sig);
                best_nodes = nodes;
            }
            return;
        }
        for (int len = 1; len <= L && v + len <= T; ++len) {
            if (T - (v + len) > (edges_left - 1) * L) continue;
            if (T - (v + len) < edges_left - 1) continue;
            nodes.push_back(v + len);
            dfs(v + len, edges_left - 1);
            nodes.pop_back();
        }
    };
    dfs(0, budget);

    SchedulePath path = validate_path(graph, best_nodes, budget);
    return {path.signature, path};
}

}  // namespace lemica
