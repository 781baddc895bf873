#include "lemica/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lemica/rng.hpp"

namespace lemica {

void MixtureModel::validate() const {
    if (dim <= 0) {
        throw std::invalid_argument("MixtureModel: dim must be positive");
    }
    if (!(component_std > 0.0)) {
        throw std::invalid_argument("MixtureModel: component_std must be positive");
    }
    if (components.empty()) {
        throw std::invalid_argument("MixtureModel: at least one component required");
    }
    double weight_sum = 0.0;
    for (const auto& c : components) {
        if (static_cast<int>(c.mean.size()) != dim) {
            throw std::invalid_argument("MixtureModel: component mean has wrong dimension");
        }
        if (!(c.weight > 0.0)) {
            throw std::invalid_argument("MixtureModel: component weights must be positive");
        }
        weight_sum += c.weight;
    }
    if (std::abs(weight_sum - 1.0) > 1e-12) {
        throw std::invalid_argument("MixtureModel: weights must sum to 1, got " +
                                    std::to_string(weight_sum));
    }
}

NoiseSchedule NoiseSchedule::cosine(int num_steps) {
    if (num_steps <= 0) {
        throw std::invalid_argument("NoiseSchedule: num_steps must be positive");
    }
    NoiseSchedule s;
    s.num_steps = num_steps;
    s.alpha_bar.resize(num_steps + 1);
    auto f = [](double u) {
        double a = std::cos(1.5707963267948966 * (u + 0.008) / 1.008);
        return a * a;
    };
    const double f0 = f(0.0);
    s.alpha_bar[0] = 1.0;
    for (int k = 1; k <= num_steps; ++k) {
        double v = f(static_cast<double>(k) / num_steps) / f0;
        // keep the endpoint strictly positive (f(1) = 0)
        s.alpha_bar[k] = std::max(v, 1e-8);
    }
    s.validate();
    return s;
}

void NoiseSchedule::validate() const {
    if (num_steps <= 0) {
        throw std::invalid_argument("NoiseSchedule: num_steps must be positive");
    }
    if (static_cast<int>(alpha_bar.size()) != num_steps + 1) {
        throw std::invalid_argument("NoiseSchedule: alpha_bar must have num_steps+1 entries");
    }
    if (alpha_bar[0] != 1.0) {
        throw std::invalid_argument("NoiseSchedule: alpha_bar[0] must be exactly 1");
    }
    for (int k = 0; k < num_steps; ++k) {
        if (!(alpha_bar[k + 1] < alpha_bar[k])) {
            throw std::invalid_argument("NoiseSchedule: alpha_bar must be strictly decreasing");
        }
        if (!(alpha_bar[k + 1] > 0.0)) {
            throw std::invalid_argument("NoiseSchedule: alpha_bar must stay positive");
        }
    }
    if (!(alpha_bar[num_steps] < 0.05)) {
        throw std::invalid_argument("NoiseSchedule: final alpha_bar must be below 0.05");
    }
}

ModelFamily::Draw ModelFamily::sample(uint64_t seed) const {
    Draw draw;
    draw.model.dim = dim;
    draw.model.component_std = component_std;
    draw.model.components.resize(num_components);

    SplitMix64 rng(seed);
    const double w = 1.0 / num_components;
    for (int k = 0; k < num_components; ++k) {
        auto& c = draw.model.components[k];
        c.weight = w;
        c.mean.resize(dim);
        for (int j = 0; j < dim; ++j) {
            c.mean[j] = rng.next_uniform(-mean_range, mean_range);
        }
    }
    // fix the rounding residue so validate()'s 1e-12 weight-sum check holds
    // for any num_components
    double acc = 0.0;
    for (int k = 0; k + 1 < num_components; ++k) acc += draw.model.components[k].weight;
    draw.model.components[num_components - 1].weight = 1.0 - acc;

    draw.x_init.resize(dim);
    for (int j = 0; j < dim; ++j) {
        draw.x_init[j] = rng.next_normal();
    }
    draw.model.validate();
    return draw;
}

}  // namespace lemica
