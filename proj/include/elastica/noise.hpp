#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "elastica/grid.hpp"

namespace elastica {

// Seeded zero-mean Gaussian noise in intensity units. The output is not
// clamped; clamping happens only when an image is saved.
struct NoiseSpec {
    double std;
    uint64_t seed;

    NoiseSpec(double s, uint64_t sd) : std(s), seed(sd) {
        if (std < 0.0) throw std::invalid_argument("NoiseSpec: std must be nonnegative");
    }
};

inline ScalarField add_noise(const ScalarField& f, const NoiseSpec& spec) {
    ScalarField out = f;
    if (spec.std == 0.0) return out;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> dist(0.0, spec.std);
    for (double& v : out.data()) v += dist(rng);
    return out;
}

} // namespace elastica
