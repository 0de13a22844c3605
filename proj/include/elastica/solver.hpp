#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "elastica/grid.hpp"
#include "elastica/grid_ops.hpp"
#include "elastica/subproblems.hpp"

// Outer loop of the splitting solver: initialization, the fractional-step
// sequence shrink -> gamma -> diffusion -> projection -> u-update, the
// relative-error stopping rule and per-iteration energy bookkeeping.

namespace elastica {

struct SolverConfig {
    ModelParams params;
    double tol = 1e-5;
    int max_iter = 30000;
    FixedPointConfig fp{};
    int gamma_exponent = 2; // 1 or 2; see compute_gamma
    int trace_every = 1;

    explicit SolverConfig(ModelParams p) : params(p) {}

    void validate() const {
        if (tol <= 0.0) throw std::invalid_argument("SolverConfig: tol must be positive");
        if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
        if (trace_every < 1) throw std::invalid_argument("SolverConfig: trace_every must be >= 1");
        if (gamma_exponent != 1 && gamma_exponent != 2)
            throw std::invalid_argument("SolverConfig: gamma_exponent must be 1 or 2");
    }
};

struct SolverState {
    ScalarField u;
    StaggeredVectorField p;
    StaggeredVectorField lambda;
    int iter = 0;
    double last_rel_err = std::numeric_limits<double>::infinity();
};

struct EnergyRecord {
    int iter;
    double e_total;
    double e_elastica;
    double e_fidelity;
    double e_p13;
    double e_lam13;
    double e_proj23;
    double e_u;
    double rel_err;
};

using EnergyTrace = std::vector<EnergyRecord>;

struct RunResult {
    ScalarField u;
    EnergyTrace trace;
    int iterations;
    bool converged;
};

inline double rel_err(const ScalarField& u_new, const ScalarField& u_old) {
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < u_new.size(); ++k) {
        double d = u_new.data()[k] - u_old.data()[k];
        num += d * d;
        den += u_new.data()[k] * u_new.data()[k];
    }
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

// u0 = f, p0 = grad+ f, lambda0 = p0/|p0| nodewise (0 where p0 vanishes),
// so (p0, lambda0) starts inside the constraint set.
inline SolverState init_state(const ScalarField& f, const SolverConfig& cfg) {
    cfg.validate();
    StaggeredVectorField p = grad_plus(f, cfg.params.h);
    StaggeredVectorField lambda(f.width(), f.height());
    for (int j = 0; j < f.height(); ++j) {
        for (int i = 0; i < f.width(); ++i) {
            double mag = std::hypot(p.c1(i, j), p.c2(i, j));
            if (mag > 0.0) {
                lambda.c1(i, j) = p.c1(i, j) / mag;
                lambda.c2(i, j) = p.c2(i, j) / mag;
            }
        }
    }
    return {f, std::move(p), std::move(lambda)};
}

inline double fidelity_energy(const ScalarField& u, const ScalarField& f, double h) {
    double s = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
        double d = u.data()[k] - f.data()[k];
        s += d * d;
    }
    return 0.5 * s * h * h;
}

// Discrete elastica term assembled at the bullet-nodes with the same |A|
// and div operators the lambda step uses, h^2 cell measure.
inline double elastica_energy(const StaggeredVectorField& p, const StaggeredVectorField& lambda,
                              const ModelParams& params) {
    double s = 0.0;
    for (int j = 0; j < p.height(); ++j) {
        for (int i = 0; i < p.width(); ++i) {
            double div = divergence_at_bullet_node(lambda, i, j, params.h);
            s += (params.a + params.b * div * div) * magnitude_at_bullet_node(p, i, j);
        }
    }
    return s * params.h * params.h;
}

inline double total_energy(const ScalarField& u, const StaggeredVectorField& p,
                           const StaggeredVectorField& lambda, const ScalarField& f,
                           const ModelParams& params) {
    return elastica_energy(p, lambda, params) + fidelity_energy(u, f, params.h);
}

namespace detail {

inline double sq_dist(const StaggeredVectorField& a, const StaggeredVectorField& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.c1.size(); ++k) {
        double d1 = a.c1.data()[k] - b.c1.data()[k];
        double d2 = a.c2.data()[k] - b.c2.data()[k];
        s += d1 * d1 + d2 * d2;
    }
    return s;
}

} // namespace detail

struct StepDiagnostics {
    double e_p13 = 0.0;
    double e_lam13 = 0.0;
    double e_proj23 = 0.0;
    double e_u = 0.0;
};

// One full outer iteration. When diag is non-null the objective of each
// fractional subproblem is evaluated at its iterate and recorded.
inline SolverState step(const SolverState& state, const ScalarField& f, const SolverConfig& cfg,
                        StepDiagnostics* diag = nullptr) {
    const ModelParams& mp = cfg.params;
    double h2 = mp.h * mp.h;

    StaggeredVectorField p13 = shrink_p(state.p, state.lambda, mp);
    GammaField gamma = compute_gamma(p13, mp.tau, cfg.gamma_exponent);
    StaggeredVectorField l13 = solve_lambda_diffusion(state.lambda, p13, gamma.gamma_fft, mp);
    auto [p23, l23] = project_constraint(p13, l13, gamma, cfg.fp);
    auto [u_next, p_next] = update_u(p23, f, mp);

    if (diag) {
        diag->e_p13 = 0.5 * h2 * detail::sq_dist(p13, state.p) +
                      mp.tau * elastica_energy(p13, state.lambda, mp);
        diag->e_lam13 = (gamma.gamma_fft / (2.0 * mp.tau)) * h2 * detail::sq_dist(l13, state.lambda) +
                        elastica_energy(p13, l13, mp);
        double proj = 0.0;
        for (int j = 0; j < f.height(); ++j) {
            for (int i = 0; i < f.width(); ++i) {
                double dq1 = p23.c1(i, j) - p13.c1(i, j), dq2 = p23.c2(i, j) - p13.c2(i, j);
                double dm1 = l23.c1(i, j) - l13.c1(i, j), dm2 = l23.c2(i, j) - l13.c2(i, j);
                proj += dq1 * dq1 + dq2 * dq2 + gamma.values(i, j) * (dm1 * dm1 + dm2 * dm2);
            }
        }
        diag->e_proj23 = proj * h2;
        diag->e_u = 0.5 * h2 * detail::sq_dist(p_next, p23) +
                    mp.tau * fidelity_energy(u_next, f, mp.h);
    }

    SolverState next{std::move(u_next), std::move(p_next), std::move(l23),
                     state.iter + 1, 0.0};
    next.last_rel_err = rel_err(next.u, state.u);
    return next;
}

inline RunResult run(const ScalarField& f, const SolverConfig& cfg) {
    cfg.validate();
    SolverState state = init_state(f, cfg);

    EnergyTrace trace;
    trace.push_back({0,
                     total_energy(state.u, state.p, state.lambda, f, cfg.params),
                     elastica_energy(state.p, state.lambda, cfg.params),
                     fidelity_energy(state.u, f, cfg.params.h),
                     0.0, 0.0, 0.0, 0.0,
                     std::numeric_limits<double>::infinity()});

    bool converged = false;
    while (state.iter < cfg.max_iter) {
        bool record = ((state.iter + 1) % cfg.trace_every) == 0;
        StepDiagnostics diag;
        state = step(state, f, cfg, record ? &diag : nullptr);
        if (record) {
            trace.push_back({state.iter,
                             total_energy(state.u, state.p, state.lambda, f, cfg.params),
                             elastica_energy(state.p, state.lambda, cfg.params),
                             fidelity_energy(state.u, f, cfg.params.h),
                             diag.e_p13, diag.e_lam13, diag.e_proj23, diag.e_u,
                             state.last_rel_err});
        }
        if (state.last_rel_err < cfg.tol) {
            converged = true;
            break;
        }
    }
    return {std::move(state.u), std::move(trace), state.iter, converged};
}

} // namespace elastica
