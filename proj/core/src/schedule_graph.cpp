#include "lemica/schedule_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lemica {

int compare_lex(const LexSignature& a, const LexSignature& b) {
    if (!a.sorted_descending() || !b.sorted_descending()) {
        throw std::invalid_argument("compare_lex: signatures must be sorted descending");
    }
    const size_t n = std::min(a.weights.size(), b.weights.size());
    for (size_t k = 0; k < n; ++k) {
        if (a.weights[k] < b.weights[k]) return -1;
        if (a.weights[k] > b.weights[k]) return 1;
    }
    if (a.weights.size() < b.weights.size()) return -1;
    if (a.weights.size() > b.weights.size()) return 1;
    return 0;
}

double ScheduleGraph::weight(int from, int to) const {
    if (!has_edge(from, to)) {
        throw std::out_of_range("ScheduleGraph: no edge (" + std::to_string(from) + "," +
                                std::to_string(to) + ")");
    }
    int offset = 0;
    for (int m = 1; m < to - from; ++m) offset += num_steps + 1 - m;
    return weights[offset + from];
}

ScheduleGraph build_graph(const ErrorMatrix& matrix) {
    matrix.validate();
    ScheduleGraph g;
    g.num_steps = matrix.num_steps;
    g.max_skip = matrix.max_skip;
    g.weights = matrix.values;
    return g;
}

std::pair<int, int> feasible_budgets(const ScheduleGraph& graph) {
    const int min_b = (graph.num_steps + graph.max_skip - 1) / graph.max_skip;
    return {min_b, graph.num_steps};
}

SchedulePath validate_path(const ScheduleGraph& graph, const std::vector<int>& nodes,
                           int budget) {
    if (nodes.empty() || nodes.front() != 0 || nodes.back() != graph.num_steps) {
        throw std::invalid_argument("validate_path: path must start at node 0 and end at node " +
                                    std::to_string(graph.num_steps));
    }
    for (size_t k = 0; k + 1 < nodes.size(); ++k) {
        if (nodes[k] >= nodes[k + 1]) {
            throw std::invalid_argument("validate_path: node sequence is not strictly increasing");
        }
    }
    if (static_cast<int>(nodes.size()) - 1 != budget) {
        throw std::invalid_argument("validate_path: expected " + std::to_string(budget) +
                                    " edges, got " + std::to_string(nodes.size() - 1));
    }
    SchedulePath path;
    path.nodes = nodes;
    for (size_t k = 0; k + 1 < nodes.size(); ++k) {
        if (!graph.has_edge(nodes[k], nodes[k + 1])) {
            throw std::invalid_argument("validate_path: missing edge (" +
                                        std::to_string(nodes[k]) + "," +
                                        std::to_string(nodes[k + 1]) + ")");
        }
        if (nodes[k + 1] - nodes[k] >= 2) {
            path.cache_edges.emplace_back(nodes[k], nodes[k + 1]);
            path.signature.weights.push_back(graph.weight(nodes[k], nodes[k + 1]));
        }
    }
    std::sort(path.signature.weights.begin(), path.signature.weights.end(),
              std::greater<double>());
    return path;
}

}  // namespace lemica
