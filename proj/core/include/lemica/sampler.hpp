#ifndef LEMICA_SAMPLER_HPP
#define LEMICA_SAMPLER_HPP

#include <vector>

#include "lemica/model.hpp"

namespace lemica {

// Full record of one sampling run. states[n] is the state at node n
// (node 0 = initial noise, node T = final sample); outputs[n] is the
// denoiser output consumed when leaving node n.
struct Trajectory {
    std::vector<Vec> states;
    std::vector<Vec> outputs;
};

// Exact log-density of the noised mixture marginal at the given node,
// log q_t(x) with t = T - node. Defined for 0 <= node <= T.
double log_density(const MixtureModel& model, const NoiseSchedule& schedule,
                   const Vec& x, int node);

// Noise-prediction output of the closed-form denoiser at a node,
// O = (x - sqrt(ab) * E[x0|x]) / sqrt(1 - ab), with the exact mixture
// posterior mean. Requires 0 <= node < T.
Vec denoiser_output(const MixtureModel& model, const NoiseSchedule& schedule,
                    const Vec& x, int node);

// Deterministic DDIM update from from_node to to_node (multi-step jumps
// allowed) reusing the given output.
Vec reverse_step(const NoiseSchedule& schedule, const Vec& x, const Vec& output,
                 int from_node, int to_node);

// Uncached reference run: one denoiser call per node.
Trajectory run_full(const MixtureModel& model, const NoiseSchedule& schedule,
                    const Vec& x_init);

// Replay a schedule: one denoiser call per path edge, each cached segment
// realized as a single multi-step jump with the frozen output. Returns the
// final state. path_nodes must be strictly increasing from 0 to T.
Vec run_cached(const MixtureModel& model, const NoiseSchedule& schedule,
               const Vec& x_init, const std::vector<int>& path_nodes);

}  // namespace lemica

#endif
