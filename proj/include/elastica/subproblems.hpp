#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elastica/grid.hpp"
#include "elastica/grid_ops.hpp"
#include "elastica/spectral.hpp"

// The three fractional-step kernels of the splitting scheme: shrinkage for
// p^{n+1/3}, frozen-coefficient diffusion for lambda^{n+1/3}, the pointwise
// projection onto sigma = sigma0 U sigma1 for the (n+2/3) pair, and the
// Helmholtz u-update closing the iteration.

namespace elastica {

struct ModelParams {
    double a;    // length weight
    double b;    // curvature weight
    double tau;  // time step
    double h;    // mesh size

    ModelParams(double a_, double b_, double tau_, double h_ = 1.0)
        : a(a_), b(b_), tau(tau_), h(h_) {
        if (a < 0.0 || b < 0.0) throw std::invalid_argument("ModelParams: a, b must be nonnegative");
        if (a == 0.0 && b == 0.0) throw std::invalid_argument("ModelParams: a = b = 0 is degenerate");
        if (tau <= 0.0) throw std::invalid_argument("ModelParams: tau must be positive");
        if (h <= 0.0) throw std::invalid_argument("ModelParams: h must be positive");
    }
};

// Pointwise gamma = max(|p|^e, sqrt(tau)) shared by both node families
// (evaluated from the index-paired components), plus the single scalar used
// in the FFT lambda solve.
struct GammaField {
    ScalarField values;
    double gamma_fft;
};

struct FixedPointConfig {
    double fp_tol = 1e-3;
    int fp_max_iter = 100;

    FixedPointConfig() = default;
    FixedPointConfig(double tol, int max_iter) : fp_tol(tol), fp_max_iter(max_iter) {
        if (fp_tol <= 0.0) throw std::invalid_argument("FixedPointConfig: fp_tol must be positive");
        if (fp_max_iter < 1) throw std::invalid_argument("FixedPointConfig: fp_max_iter must be >= 1");
    }
};

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    double norm() const { return std::hypot(x1, x2); }
    double dot(const Vec2& o) const { return x1 * o.x1 + x2 * o.x2; }
    Vec2 operator+(const Vec2& o) const { return {x1 + o.x1, x2 + o.x2}; }
    Vec2 operator-(const Vec2& o) const { return {x1 - o.x1, x2 - o.x2}; }
    Vec2 operator*(double s) const { return {x1 * s, x2 * s}; }
};

// Nodewise shrinkage producing p^{n+1/3}. At each node family the own
// component is taken verbatim and the other is brought over by the
// four-point average; the weight c collocates div(lambda) with the
// centered/mixed stencils of the staggered layout.
inline StaggeredVectorField shrink_p(const StaggeredVectorField& p,
                                     const StaggeredVectorField& lambda,
                                     const ModelParams& params) {
    int m = p.width(), n = p.height();
    double h2 = 2.0 * params.h;
    ScalarField p2_at_circle = avg_to_circle(p.c2);
    ScalarField p1_at_square = avg_to_square(p.c1);
    StaggeredVectorField out(m, n);

    const ScalarField& l1 = lambda.c1;
    const ScalarField& l2 = lambda.c2;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            // o-node: collocated p = (p1, A(p2)), centered d1 l1, mixed d2 l2
            double div_o = (l1(i + 1, j) - l1(i - 1, j)) / h2 +
                           (l2(i + 1, j) + l2(i, j) - l2(i, j - 1) - l2(i + 1, j - 1)) / h2;
            double c_o = params.tau * (params.a + params.b * div_o * div_o);
            double mag_o = std::hypot(p.c1(i, j), p2_at_circle(i, j));
            double f_o = mag_o > 0.0 ? std::max(0.0, 1.0 - c_o / mag_o) : 0.0;
            out.c1(i, j) = f_o * p.c1(i, j);

            // square-node: collocated p = (A(p1), p2), mixed d1 l1, centered d2 l2
            double div_s = (l1(i, j) + l1(i, j + 1) - l1(i - 1, j) - l1(i - 1, j + 1)) / h2 +
                           (l2(i, j + 1) - l2(i, j - 1)) / h2;
            double c_s = params.tau * (params.a + params.b * div_s * div_s);
            double mag_s = std::hypot(p1_at_square(i, j), p.c2(i, j));
            double f_s = mag_s > 0.0 ? std::max(0.0, 1.0 - c_s / mag_s) : 0.0;
            out.c2(i, j) = f_s * p.c2(i, j);
        }
    }
    return out;
}

inline GammaField compute_gamma(const StaggeredVectorField& p_third, double tau,
                                int exponent = 2) {
    if (tau <= 0.0) throw std::invalid_argument("compute_gamma: tau must be positive");
    if (exponent != 1 && exponent != 2)
        throw std::invalid_argument("compute_gamma: exponent must be 1 or 2");

    double floor = std::sqrt(tau);
    GammaField g{ScalarField(p_third.width(), p_third.height()), floor};
    for (int j = 0; j < p_third.height(); ++j) {
        for (int i = 0; i < p_third.width(); ++i) {
            double mag = std::hypot(p_third.c1(i, j), p_third.c2(i, j));
            double v = std::max(exponent == 2 ? mag * mag : mag, floor);
            g.values(i, j) = v;
            g.gamma_fft = std::max(g.gamma_fft, v);
        }
    }
    return g;
}

// Frozen-coefficient diffusion step producing lambda^{n+1/3}. The varying
// coefficient 2 tau b |p| is replaced on the left-hand side by its maximum
// c* over the bullet-nodes; the difference moves to the right-hand side.
inline StaggeredVectorField solve_lambda_diffusion(const StaggeredVectorField& lambda,
                                                   const StaggeredVectorField& p_third,
                                                   double gamma_fft,
                                                   const ModelParams& params) {
    int m = lambda.width(), n = lambda.height();
    double h = params.h;
    double gh2 = gamma_fft * h * h;

    ScalarField mag = magnitude_at_bullet(p_third);
    double c_star = 0.0;
    for (double v : mag.data()) c_star = std::max(c_star, 2.0 * params.tau * params.b * v);

    ScalarField divl = divergence_at_bullet(lambda, h);
    ScalarField flux(m, n); // (c* h - 2 tau b h |A|(p)) div(lambda) at bullet-nodes
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            flux(i, j) = (c_star * h - 2.0 * params.tau * params.b * h * mag(i, j)) * divl(i, j);

    ScalarField g1(m, n), g2(m, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            g1(i, j) = gh2 * lambda.c1(i, j) - (flux(i + 1, j) - flux(i, j));
            g2(i, j) = gh2 * lambda.c2(i, j) - (flux(i, j + 1) - flux(i, j));
        }
    }
    return solve_lambda_system(g1, g2, gamma_fft, c_star, h);
}

// Fixed-point iteration for the scalar reduction of the sigma1 projection,
// min over theta >= 0 of E(theta) = theta^2/2 - |theta x + gamma y|.
// When x.y < 0 the objective can have two local minima, theta = 0 and one
// interior point; the iteration finds one of them, so the global choice is
// made by comparing their objective values at the end. A vanishing iterate
// denominator stops the iteration early.
inline double fixed_point_theta(const Vec2& x, const Vec2& y, double gamma,
                                const FixedPointConfig& cfg = {}) {
    if (gamma <= 0.0) throw std::invalid_argument("fixed_point_theta: gamma must be positive");
    double theta = x.norm();
    for (int k = 0; k < cfg.fp_max_iter; ++k) {
        Vec2 d = x * theta + y * gamma;
        double dn = d.norm();
        if (dn == 0.0) break;
        double next = std::max(0.0, x.dot(d) / dn);
        double delta = std::abs(next - theta);
        theta = next;
        if (delta <= cfg.fp_tol) break;
    }
    double e_theta = 0.5 * theta * theta - (x * theta + y * gamma).norm();
    double e_zero = -gamma * y.norm();
    return e_theta < e_zero ? theta : 0.0;
}

// Pointwise projection of (p^{n+1/3}, lambda^{n+1/3}) onto the constraint
// set sigma. Both branches are evaluated at every node and the one with the
// smaller objective j(q, mu) = |q - x|^2 + gamma |mu - y|^2 wins; sigma0
// wins ties.
inline std::pair<StaggeredVectorField, StaggeredVectorField>
project_constraint(const StaggeredVectorField& p_third, const StaggeredVectorField& lambda_third,
                   const GammaField& gamma, const FixedPointConfig& cfg = {}) {
    int m = p_third.width(), n = p_third.height();
    StaggeredVectorField p_out(m, n), l_out(m, n);

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            Vec2 x{p_third.c1(i, j), p_third.c2(i, j)};
            Vec2 y{lambda_third.c1(i, j), lambda_third.c2(i, j)};
            double g = gamma.values(i, j);

            // sigma0: q = 0, mu = projection of y onto the unit ball
            Vec2 mu0 = y * (1.0 / std::max(1.0, y.norm()));
            Vec2 q_best{0.0, 0.0}, mu_best = mu0;
            double j_best = x.dot(x) + g * (mu0 - y).dot(mu0 - y);

            // sigma1: q = theta* mu*, |mu*| = 1
            double theta = fixed_point_theta(x, y, g, cfg);
            Vec2 d = x * theta + y * g;
            double dn = d.norm();
            if (dn > 0.0) {
                Vec2 mu1 = d * (1.0 / dn);
                Vec2 q1 = mu1 * theta;
                double j1 = (q1 - x).dot(q1 - x) + g * (mu1 - y).dot(mu1 - y);
                if (j1 < j_best) {
                    j_best = j1;
                    q_best = q1;
                    mu_best = mu1;
                }
            }

            p_out.c1(i, j) = q_best.x1;
            p_out.c2(i, j) = q_best.x2;
            l_out.c1(i, j) = mu_best.x1;
            l_out.c2(i, j) = mu_best.x2;
        }
    }
    return {std::move(p_out), std::move(l_out)};
}

// Fidelity step: solve the periodic Helmholtz problem for u^{n+1} and
// restore p^{n+1} = grad+ u^{n+1}. Conserves the grid mean of f exactly
// through the zero-frequency component.
inline std::pair<ScalarField, StaggeredVectorField>
update_u(const StaggeredVectorField& p_twothirds, const ScalarField& f,
         const ModelParams& params) {
    double h = params.h, tau = params.tau;
    ScalarField div = div_minus(p_twothirds, h);
    ScalarField g(f.width(), f.height());
    for (int j = 0; j < f.height(); ++j)
        for (int i = 0; i < f.width(); ++i)
            g(i, j) = h * div(i, j) - tau * h * h * f(i, j);
    ScalarField u = solve_helmholtz(g, tau, h);
    StaggeredVectorField p = grad_plus(u, h);
    return {std::move(u), std::move(p)};
}

} // namespace elastica
