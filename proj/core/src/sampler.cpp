#include "lemica/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lemica {

namespace {

constexpr double kAlphaBarFloor = 1e-8;
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_vector(const Vec& x, int dim, const char* what) {
    if (static_cast<int>(x.size()) != dim) {
        throw std::invalid_argument(std::string(what) + ": wrong dimension");
    }
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

double sq_dist(const Vec& x, const Vec& m, double scale) {
    double acc = 0.0;
    for (size_t j = 0; j < x.size(); ++j) {
        double d = x[j] - scale * m[j];
        acc += d * d;
    }
    return acc;
}

}  // namespace

double log_density(const MixtureModel& model, const NoiseSchedule& schedule,
                   const Vec& x, int node) {
    if (node < 0 || node > schedule.num_steps) {
        throw std::invalid_argument("log_density: node out of range");
    }
    check_vector(x, model.dim, "log_density");

    const double ab = schedule.alpha_bar_at_node(node);
    const double s = std::sqrt(ab);
    const double sigma2 = model.component_std * model.component_std;
    const double var = ab * sigma2 + (1.0 - ab);

    // log sum exp over components of log w_k + log N(x; s*mu_k, var*I)
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(model.components.size());
    for (size_t k = 0; k < model.components.size(); ++k) {
        const auto& c = model.components[k];
        terms[k] = std::log(c.weight) - 0.5 * sq_dist(x, c.mean, s) / var;
        max_term = std::max(max_term, terms[k]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - max_term);
    const double norm = -0.5 * model.dim * std::log(kTwoPi * var);
    return max_term + std::log(acc) + norm;
}

Vec denoiser_output(const MixtureModel& model, const NoiseSchedule& schedule,
                    const Vec& x, int node) {
    if (node < 0 || node >= schedule.num_steps) {
        throw std::invalid_argument("denoiser_output: node out of range");
    }
    check_vector(x, model.dim, "denoiser_output");

    const double ab = schedule.alpha_bar_at_node(node);
    const double s = std::sqrt(ab);
    const double sigma2 = model.component_std * model.component_std;
    const double var = ab * sigma2 + (1.0 - ab);

    // responsibilities with log-sum-exp stabilization
    const size_t K = model.components.size();
    std::vector<double> logits(K);
    double max_logit = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < K; ++k) {
        logits[k] = std::log(model.components[k].weight) -
                    0.5 * sq_dist(x, model.components[k].mean, s) / var;
        max_logit = std::max(max_logit, logits[k]);
    }
    double denom = 0.0;
    for (size_t k = 0; k < K; ++k) {
        logits[k] = std::exp(logits[k] - max_logit);
        denom += logits[k];
    }

    // posterior mean: per-component shrinkage toward s*mu_k
    const double shrink = s * sigma2 / var;
    Vec post_mean(model.dim, 0.0);
    for (size_t k = 0; k < K; ++k) {
        const double gamma = logits[k] / denom;
        const auto& mu = model.components[k].mean;
        for (int j = 0; j < model.dim; ++j) {
            post_mean[j] += gamma * (mu[j] + shrink * (x[j] - s * mu[j]));
        }
    }

    const double inv_root = 1.0 / std::sqrt(1.0 - ab);
    Vec out(model.dim);
    for (int j = 0; j < model.dim; ++j) {
        out[j] = (x[j] - s * post_mean[j]) * inv_root;
    }
    return out;
}

Vec reverse_step(const NoiseSchedule& schedule, const Vec& x, const Vec& output,
                 int from_node, int to_node) {
    if (from_node < 0 || to_node > schedule.num_steps || from_node >= to_node) {
        throw std::invalid_argument("reverse_step: need 0 <= from_node < to_node <= T");
    }
    if (x.size() != output.size()) {
        throw std::invalid_argument("reverse_step: state/output dimension mismatch");
    }
    const double ab_from = schedule.alpha_bar_at_node(from_node);
    const double ab_to = schedule.alpha_bar_at_node(to_node);
    if (ab_from < 1e-12) {
        throw std::invalid_argument("reverse_step: alpha_bar at from_node below 1e-12");
    }
    const double s_from = std::sqrt(std::max(ab_from, kAlphaBarFloor));
    const double s_to = std::sqrt(ab_to);
    const double n_from = std::sqrt(1.0 - ab_from);
    const double n_to = std::sqrt(1.0 - ab_to);

    Vec next(x.size());
    for (size_t j = 0; j < x.size(); ++j) {
        const double x0_hat = (x[j] - n_from * output[j]) / s_from;
        next[j] = s_to * x0_hat + n_to * output[j];
    }
    return next;
}

Trajectory run_full(const MixtureModel& model, const NoiseSchedule& schedule,
                    const Vec& x_init) {
    check_vector(x_init, model.dim, "run_full");
    const int T = schedule.num_steps;
    Trajectory traj;
    traj.states.reserve(T + 1);
    traj.outputs.reserve(T);
    traj.states.push_back(x_init);
    for (int n = 0; n < T; ++n) {
        traj.outputs.push_back(denoiser_output(model, schedule, traj.states[n], n));
        traj.states.push_back(reverse_step(schedule, traj.states[n], traj.outputs[n], n, n + 1));
    }
    return traj;
}

Vec run_cached(const MixtureModel& model, const NoiseSchedule& schedule,
               const Vec& x_init, const std::vector<int>& path_nodes) {
    const int T = schedule.num_steps;
    if (path_nodes.size() < 2 || path_nodes.front() != 0 || path_nodes.back() != T) {
        throw std::invalid_argument("run_cached: path must run from node 0 to node T");
    }
    for (size_t k = 0; k + 1 < path_nodes.size(); ++k) {
        if (path_nodes[k] >= path_nodes[k + 1]) {
            throw std::invalid_argument("run_cached: path nodes must be strictly increasing");
        }
    }
    Vec x = x_init;
    for (size_t k = 0; k + 1 < path_nodes.size(); ++k) {
        const Vec out = denoiser_output(model, schedule, x, path_nodes[k]);
        x = reverse_step(schedule, x, out, path_nodes[k], path_nodes[k + 1]);
    }
    return x;
}

}  // namespace lemica
