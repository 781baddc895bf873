#include "lemica/error_oracle.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace lemica {

ErrorMatrix ErrorMatrix::zeros(int num_steps, int max_skip, int sample_count) {
    if (num_steps <= 0 || max_skip < 1 || sample_count <= 0) {
        throw std::invalid_argument("ErrorMatrix: need T > 0, L >= 1, samples > 0");
    }
    ErrorMatrix m;
    m.num_steps = num_steps;
    m.max_skip = std::min(max_skip, num_steps);
    m.sample_count = sample_count;
    m.values.assign(band_size(m.num_steps, m.max_skip), 0.0);
    return m;
}

int ErrorMatrix::band_size(int num_steps, int max_skip) {
    int total = 0;
    for (int len = 1; len <= max_skip; ++len) total += num_steps + 1 - len;
    return total;
}

int ErrorMatrix::index(int i, int j) const {
    const int len = j - i;
    if (i < 0 || j > num_steps || len < 1 || len > max_skip) {
        throw std::out_of_range("ErrorMatrix: segment (" + std::to_string(i) + "," +
                                std::to_string(j) + ") outside band");
    }
    int offset = 0;
    for (int m = 1; m < len; ++m) offset += num_steps + 1 - m;
    return offset + i;
}

void ErrorMatrix::validate() const {
    if (num_steps <= 0 || max_skip < 1 || max_skip > num_steps || sample_count <= 0) {
        throw std::invalid_argument("ErrorMatrix: bad shape fields");
    }
    if (static_cast<int>(values.size()) != band_size(num_steps, max_skip)) {
        throw std::invalid_argument("ErrorMatrix: value count does not match band");
    }
    for (int i = 0; i + 1 <= num_steps; ++i) {
        if (at(i, i + 1) != 0.0) {
            throw std::invalid_argument("ErrorMatrix: unit segment must carry error 0");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("ErrorMatrix: entries must be finite and >= 0");
        }
    }
}

double local_rel_l1(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("local_rel_l1: dimension mismatch");
    }
    double num = 0.0, den = 0.0;
    for (size_t j = 0; j < a.size(); ++j) {
        num += std::abs(a[j] - b[j]);
        den += std::abs(b[j]);
    }
    if (den <= 1e-12) {
        throw std::domain_error("local_rel_l1: degenerate reference (||b||_1 <= 1e-12)");
    }
    return num / den;
}

double segment_error(const MixtureModel& model, const NoiseSchedule& schedule,
                     const Vec& x_init, int i, int j) {
    const int T = schedule.num_steps;
    if (i < 0 || j > T || i >= j) {
        throw std::invalid_argument("segment_error: need 0 <= i < j <= T");
    }
    const Trajectory full = run_full(model, schedule, x_init);

    std::vector<int> nodes;
    nodes.reserve(T + 1);
    for (int n = 0; n <= i; ++n) nodes.push_back(n);
    for (int n = j; n <= T; ++n) nodes.push_back(n);
    const Vec cached = run_cached(model, schedule, x_init, nodes);

    double acc = 0.0;
    for (int d = 0; d < model.dim; ++d) {
        acc += std::abs(cached[d] - full.states[T][d]);
    }
    return acc / model.dim;
}

int thread_budget() {
    if (const char* env = std::getenv("LEMICA_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// run fn(seed_index) over all seeds on up to thread_budget() workers;
// results land in preallocated slots so the later reduction is ordered
template <typename Fn>
void parallel_over_seeds(size_t count, Fn&& fn) {
    const int workers = std::min<int>(thread_budget(), static_cast<int>(count));
    if (workers <= 1) {
        for (size_t s = 0; s < count; ++s) fn(s);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (size_t s = next.fetch_add(1); s < count; s = next.fetch_add(1)) fn(s);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

ErrorMatrix build_error_matrix(const ModelFamily& family, const NoiseSchedule& schedule,
                               const std::vector<uint64_t>& seeds, int max_skip) {
    if (seeds.empty()) {
        throw std::invalid_argument("build_error_matrix: at least one seed required");
    }
    if (max_skip < 1) {
        throw std::invalid_argument("build_error_matrix: max_skip must be >= 1");
    }
    const int T = schedule.num_steps;
    const int L = std::min(max_skip, T);

    std::vector<ErrorMatrix> per_seed(seeds.size());
    parallel_over_seeds(seeds.size(), [&](size_t s) {
        ErrorMatrix m = ErrorMatrix::zeros(T, L, 1);
        const ModelFamily::Draw draw = family.sample(seeds[s]);
        for (int len = 2; len <= L; ++len) {
            for (int i = 0; i + len <= T; ++i) {
                m.set(i, i + len, segment_error(draw.model, schedule, draw.x_init, i, i + len));
            }
        }
        per_seed[s] = std::move(m);
    });

    // mean across seeds in seed order (fixed reduction order)
    ErrorMatrix out = ErrorMatrix::zeros(T, L, static_cast<int>(seeds.size()));
    for (size_t cell = 0; cell < out.values.size(); ++cell) {
        double acc = 0.0;
        for (size_t s = 0; s < seeds.size(); ++s) acc += per_seed[s].values[cell];
        out.values[cell] = acc / static_cast<double>(seeds.size());
    }
    // unit band stays exactly zero regardless of rounding
    for (int i = 0; i + 1 <= T; ++i) out.set(i, i + 1, 0.0);
    out.validate();
    return out;
}

LocalErrorProfile build_local_profile(const ModelFamily& family, const NoiseSchedule& schedule,
                                      const std::vector<uint64_t>& seeds) {
    if (seeds.empty()) {
        throw std::invalid_argument("build_local_profile: at least one seed required");
    }
    const int T = schedule.num_steps;
    std::vector<std::vector<double>> per_seed(seeds.size());
    parallel_over_seeds(seeds.size(), [&](size_t s) {
        const ModelFamily::Draw draw = family.sample(seeds[s]);
        const Trajectory traj = run_full(draw.model, schedule, draw.x_init);
        std::vector<double> prof(T - 1);
        for (int k = 0; k + 1 < T; ++k) {
            prof[k] = local_rel_l1(traj.outputs[k], traj.outputs[k + 1]);
        }
        per_seed[s] = std::move(prof);
    });

    LocalErrorProfile out;
    out.num_steps = T;
    out.rel_l1.assign(T - 1, 0.0);
    for (int k = 0; k + 1 < T; ++k) {
        double acc = 0.0;
        for (size_t s = 0; s < seeds.size(); ++s) acc += per_seed[s][k];
        out.rel_l1[k] = acc / static_cast<double>(seeds.size());
    }
    return out;
}

}  // namespace lemica
