#pragma once

#include <cmath>

#include "elastica/grid.hpp"

// Discrete differential, averaging and shift machinery on the periodic
// staggered grid. The formulas below are the 0-based translations of the
// 1-based wrap rules of the continuous-to-discrete setup: e.g. the paper's
// backward difference at i=1 wrapping to M1 is simply (i - 1) mod M1 here.

namespace elastica {

inline ScalarField diff_backward_1(const ScalarField& v, double h) {
    ScalarField out(v.width(), v.height());
    for (int j = 0; j < v.height(); ++j)
        for (int i = 0; i < v.width(); ++i)
            out(i, j) = (v(i, j) - v(i - 1, j)) / h;
    return out;
}

inline ScalarField diff_backward_2(const ScalarField& v, double h) {
    ScalarField out(v.width(), v.height());
    for (int j = 0; j < v.height(); ++j)
        for (int i = 0; i < v.width(); ++i)
            out(i, j) = (v(i, j) - v(i, j - 1)) / h;
    return out;
}

inline ScalarField diff_forward_1(const ScalarField& v, double h) {
    ScalarField out(v.width(), v.height());
    for (int j = 0; j < v.height(); ++j)
        for (int i = 0; i < v.width(); ++i)
            out(i, j) = (v(i + 1, j) - v(i, j)) / h;
    return out;
}

inline ScalarField diff_forward_2(const ScalarField& v, double h) {
    ScalarField out(v.width(), v.height());
    for (int j = 0; j < v.height(); ++j)
        for (int i = 0; i < v.width(); ++i)
            out(i, j) = (v(i, j + 1) - v(i, j)) / h;
    return out;
}

// Forward gradient: component 1 at o-nodes, component 2 at square-nodes.
inline StaggeredVectorField grad_plus(const ScalarField& v, double h) {
    return {diff_forward_1(v, h), diff_forward_2(v, h)};
}

// Backward divergence, adjoint (up to sign) of grad_plus under periodicity.
inline ScalarField div_minus(const StaggeredVectorField& q, double h) {
    ScalarField out(q.width(), q.height());
    for (int j = 0; j < q.height(); ++j)
        for (int i = 0; i < q.width(); ++i)
            out(i, j) = (q.c1(i, j) - q.c1(i - 1, j) + q.c2(i, j) - q.c2(i, j - 1)) / h;
    return out;
}

// Four-point mean taking an o-node field to the square-nodes.
inline ScalarField avg_to_square(const ScalarField& mu1) {
    ScalarField out(mu1.width(), mu1.height());
    for (int j = 0; j < mu1.height(); ++j)
        for (int i = 0; i < mu1.width(); ++i)
            out(i, j) = 0.25 * (mu1(i, j + 1) + mu1(i - 1, j + 1) + mu1(i, j) + mu1(i - 1, j));
    return out;
}

// Four-point mean taking a square-node field to the o-nodes.
inline ScalarField avg_to_circle(const ScalarField& mu2) {
    ScalarField out(mu2.width(), mu2.height());
    for (int j = 0; j < mu2.height(); ++j)
        for (int i = 0; i < mu2.width(); ++i)
            out(i, j) = 0.25 * (mu2(i + 1, j) + mu2(i, j) + mu2(i + 1, j - 1) + mu2(i, j - 1));
    return out;
}

inline double magnitude_at_bullet_node(const StaggeredVectorField& q, int i, int j) {
    double a = 0.5 * (q.c1(i, j) + q.c1(i - 1, j));
    double b = 0.5 * (q.c2(i, j) + q.c2(i, j - 1));
    return std::sqrt(a * a + b * b);
}

// |A| averaging: magnitude of a staggered vector field at the bullet-nodes.
inline ScalarField magnitude_at_bullet(const StaggeredVectorField& q) {
    ScalarField out(q.width(), q.height());
    for (int j = 0; j < q.height(); ++j)
        for (int i = 0; i < q.width(); ++i)
            out(i, j) = magnitude_at_bullet_node(q, i, j);
    return out;
}

inline double divergence_at_bullet_node(const StaggeredVectorField& mu, int i, int j, double h) {
    return (mu.c1(i, j) - mu.c1(i - 1, j) + mu.c2(i, j) - mu.c2(i, j - 1)) / h;
}

// div at the bullet-nodes; same stencil as div_minus, kept as the nodewise
// form the lambda right-hand sides are written in.
inline ScalarField divergence_at_bullet(const StaggeredVectorField& mu, double h) {
    ScalarField out(mu.width(), mu.height());
    for (int j = 0; j < mu.height(); ++j)
        for (int i = 0; i < mu.width(); ++i)
            out(i, j) = divergence_at_bullet_node(mu, i, j, h);
    return out;
}

} // namespace elastica
