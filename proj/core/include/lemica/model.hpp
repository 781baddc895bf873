#ifndef LEMICA_MODEL_HPP
#define LEMICA_MODEL_HPP

#include <cstdint>
#include <vector>

namespace lemica {

using Vec = std::vector<double>;

struct MixtureComponent {
    Vec mean;
    double weight = 0.0;
};

// Isotropic Gaussian mixture used as the data distribution. The posterior
// mean under the noising kernel has a closed form, which is what makes the
// sampler analytically checkable.
struct MixtureModel {
    int dim = 0;
    double component_std = 0.0;  // shared isotropic std dev
    std::vector<MixtureComponent> components;

    // throws std::invalid_argument on any violated invariant
    void validate() const;
};

// Variance-preserving noise schedule. alpha_bar is indexed by diffusion
// time k (0 = clean data, num_steps = pure noise). Sampling node indices
// run the other way: node n corresponds to k = num_steps - n.
struct NoiseSchedule {
    int num_steps = 0;  // T
    std::vector<double> alpha_bar;  // length T+1, alpha_bar[0] == 1

    static NoiseSchedule cosine(int num_steps);

    double alpha_bar_at_node(int node) const { return alpha_bar[num_steps - node]; }

    void validate() const;
};

// Seeded generator of (mixture, initial noise) pairs. One seed stands in
// for one "prompt + noise seed" combination.
struct ModelFamily {
    int dim = 8;
    int num_components = 4;
    double component_std = 0.1;
    double mean_range = 1.0;  // means drawn uniformly in [-mean_range, mean_range]^dim

    struct Draw {
        MixtureModel model;
        Vec x_init;
    };

    Draw sample(uint64_t seed) const;
};

}  // namespace lemica

#endif
