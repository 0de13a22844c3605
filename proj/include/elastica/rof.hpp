#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elastica/grid.hpp"
#include "elastica/grid_ops.hpp"

// Independent total-variation solver (dual projection iteration) used to
// cross-check the splitting solver at b = 0. It shares the periodic forward
// gradient of grid_ops so the minimized objectives are comparable:
//   weight * TV(u) + 1/2 ||u - f||^2.
// The reported TV uses the bullet-node averaged gradient magnitude, the
// same discretization the smoothing energy uses, so the two solvers'
// objective values can be compared directly.

namespace elastica {

struct RofConfig {
    double weight;          // the TV weight, equal to the elastica a
    double step = 0.125;    // dual projection step, stability requires <= 0.25
    double tol = 1e-6;
    int max_iter = 10000;

    explicit RofConfig(double w) : weight(w) { validate(); }
    RofConfig(double w, double s, double t, int m) : weight(w), step(s), tol(t), max_iter(m) {
        validate();
    }

    void validate() const {
        if (weight <= 0.0 || step <= 0.0 || tol <= 0.0 || max_iter < 1)
            throw std::invalid_argument("RofConfig: all parameters must be positive");
        if (step > 0.25)
            throw std::invalid_argument("RofConfig: step must be <= 0.25");
    }
};

struct RofResult {
    ScalarField u;
    int iterations;
    bool converged;
};

// TV(u) with the bullet-node averaged magnitude of grad+ u, h^2 cell
// measure; identical to the smoothing energy at b = 0 with p = grad+ u.
inline double tv_energy(const ScalarField& u, double h = 1.0) {
    StaggeredVectorField g = grad_plus(u, h);
    ScalarField mag = magnitude_at_bullet(g);
    double s = 0.0;
    for (double v : mag.data()) s += v;
    return s * h * h;
}

inline double rof_energy(const ScalarField& u, const ScalarField& f, double weight,
                         double h = 1.0) {
    double fid = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
        double d = u.data()[k] - f.data()[k];
        fid += d * d;
    }
    return weight * tv_energy(u, h) + 0.5 * fid * h * h;
}

// Dual projection iteration: u = f - weight * div- q with the dual variable
// q kept in the pointwise unit ball. Stops when the dual update stalls
// below tol (max norm) or the iteration cap is hit.
inline RofResult solve_rof(const ScalarField& f, const RofConfig& cfg) {
    cfg.validate();
    int m = f.width(), n = f.height();
    const double h = 1.0;
    StaggeredVectorField q(m, n);
    ScalarField u = f;

    bool converged = false;
    int it = 0;
    for (; it < cfg.max_iter; ++it) {
        // grad of (div q - f/weight)
        ScalarField r = div_minus(q, h);
        for (size_t k = 0; k < r.size(); ++k) r.data()[k] -= f.data()[k] / cfg.weight;
        StaggeredVectorField g = grad_plus(r, h);

        double max_delta = 0.0;
        for (size_t k = 0; k < q.c1.size(); ++k) {
            double q1 = q.c1.data()[k] + cfg.step * g.c1.data()[k];
            double q2 = q.c2.data()[k] + cfg.step * g.c2.data()[k];
            double denom = 1.0 + cfg.step * std::hypot(g.c1.data()[k], g.c2.data()[k]);
            q1 /= denom;
            q2 /= denom;
            max_delta = std::max({max_delta, std::abs(q1 - q.c1.data()[k]),
                                  std::abs(q2 - q.c2.data()[k])});
            q.c1.data()[k] = q1;
            q.c2.data()[k] = q2;
        }
        if (max_delta <= cfg.tol) {
            converged = true;
            ++it;
            break;
        }
    }

    ScalarField div = div_minus(q, h);
    for (size_t k = 0; k < u.size(); ++k) u.data()[k] = f.data()[k] - cfg.weight * div.data()[k];
    return {std::move(u), it, converged};
}

} // namespace elastica
