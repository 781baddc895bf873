#ifndef LEMICA_ERROR_ORACLE_HPP
#define LEMICA_ERROR_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "lemica/model.hpp"
#include "lemica/sampler.hpp"

namespace lemica {

// Upper-triangular band of measured global cache errors: one entry per
// candidate segment (i, j) with 1 <= j - i <= max_skip. Unit segments are
// stored as exact zeros. Values are means over sample_count seeds.
struct ErrorMatrix {
    int num_steps = 0;   // T
    int max_skip = 0;    // L
    int sample_count = 0;
    std::vector<double> values;  // band layout, see index()

    static ErrorMatrix zeros(int num_steps, int max_skip, int sample_count);

    // number of stored entries for a (T, L) band
    static int band_size(int num_steps, int max_skip);

    int index(int i, int j) const;
    double at(int i, int j) const { return values[index(i, j)]; }
    void set(int i, int j, double v) { values[index(i, j)] = v; }

    void validate() const;
};

// Mean relative L1 between adjacent full-run outputs; entry k compares the
// outputs at nodes k and k+1.
struct LocalErrorProfile {
    int num_steps = 0;
    std::vector<double> rel_l1;  // length T-1
};

// ||a - b||_1 / ||b||_1. Throws if the reference norm is degenerate.
double local_rel_l1(const Vec& a, const Vec& b);

// Global outcome-aware error of caching the single segment (i, j):
// mean absolute difference (per element) between the final states of the
// cached and uncached runs sharing x_init.
double segment_error(const MixtureModel& model, const NoiseSchedule& schedule,
                     const Vec& x_init, int i, int j);

ErrorMatrix build_error_matrix(const ModelFamily& family, const NoiseSchedule& schedule,
                               const std::vector<uint64_t>& seeds, int max_skip);

LocalErrorProfile build_local_profile(const ModelFamily& family, const NoiseSchedule& schedule,
                                      const std::vector<uint64_t>& seeds);

// parallelism cap from LEMICA_THREADS (>= 1)
int thread_budget();

}  // namespace lemica

#endif
