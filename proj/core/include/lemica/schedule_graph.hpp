#ifndef LEMICA_SCHEDULE_GRAPH_HPP
#define LEMICA_SCHEDULE_GRAPH_HPP

#include <utility>
#include <vector>

#include "lemica/error_oracle.hpp"
#include "lemica/lex.hpp"

namespace lemica {

// Static DAG over trajectory nodes 0..T. Edges run strictly forward with
// length at most max_skip; unit edges carry weight exactly 0, longer edges
// carry the measured mean cache error. Immutable after build_graph.
struct ScheduleGraph {
    int num_steps = 0;  // T; source is node 0, sink is node T
    int max_skip = 0;   // L
    std::vector<double> weights;  // same band layout as ErrorMatrix

    bool has_edge(int from, int to) const {
        return from >= 0 && to <= num_steps && to - from >= 1 && to - from <= max_skip;
    }
    double weight(int from, int to) const;
    int edge_count() const { return ErrorMatrix::band_size(num_steps, max_skip); }
};

// A source-to-sink node sequence with exactly budget() edges. Only cache
// edges (length >= 2) contribute to the signature.
struct SchedulePath {
    std::vector<int> nodes;  // strictly increasing, 0 .. T
    std::vector<std::pair<int, int>> cache_edges;
    LexSignature signature;

    int budget() const { return static_cast<int>(nodes.size()) - 1; }
};

ScheduleGraph build_graph(const ErrorMatrix& matrix);

// (min_B, max_B): the budgets for which at least one path exists
std::pair<int, int> feasible_budgets(const ScheduleGraph& graph);

// Checks endpoints, monotonicity, edge count and edge membership; each
// violation is reported with its own message. Signature comes from the
// graph weights.
SchedulePath validate_path(const ScheduleGraph& graph, const std::vector<int>& nodes,
                           int budget);

}  // namespace lemica

#endif
