#pragma once

#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "elastica/grid.hpp"

// 2D DFT plumbing (backed by FFTW, any grid size) and the two periodic
// direct solvers: the 2x2 coupled lambda system and the Helmholtz-type
// u equation. Convention: unnormalized forward transform, inverse divides
// by M1*N1, so idft2(dft2(f)) == f.

namespace elastica {

class ComplexField {
public:
    ComplexField(int width, int height)
        : m_(width), n_(height), v_(static_cast<size_t>(width) * height) {}

    int width() const { return m_; }
    int height() const { return n_; }

    // Frequency index (yi, yj), 0-based; zi = 2*pi*yi/M1, zj = 2*pi*yj/N1.
    std::complex<double> operator()(int yi, int yj) const {
        return v_[static_cast<size_t>(yj) * m_ + yi];
    }
    std::complex<double>& operator()(int yi, int yj) {
        return v_[static_cast<size_t>(yj) * m_ + yi];
    }

    const std::vector<std::complex<double>>& data() const { return v_; }
    std::vector<std::complex<double>>& data() { return v_; }

private:
    int m_, n_;
    std::vector<std::complex<double>> v_;
};

namespace detail {

// FFTW's planner mutates global state; planning is serialized. Executing a
// fresh ESTIMATE plan per call keeps concurrent solves on distinct inputs safe.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

inline void dft2_inplace(std::vector<std::complex<double>>& buf, int m, int n, int sign) {
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        // FFTW is row-major with n0 slowest; our i index (size m) is fastest.
        plan = fftw_plan_dft_2d(n, m, p, p, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
}

} // namespace detail

inline ComplexField dft2(const ScalarField& f) {
    ComplexField out(f.width(), f.height());
    for (size_t k = 0; k < f.size(); ++k) out.data()[k] = f.data()[k];
    detail::dft2_inplace(out.data(), f.width(), f.height(), FFTW_FORWARD);
    return out;
}

inline ScalarField idft2(const ComplexField& F) {
    std::vector<std::complex<double>> buf = F.data();
    detail::dft2_inplace(buf, F.width(), F.height(), FFTW_BACKWARD);
    ScalarField out(F.width(), F.height());
    double scale = 1.0 / (static_cast<double>(F.width()) * F.height());
    for (size_t k = 0; k < buf.size(); ++k) out.data()[k] = buf[k].real() * scale;
    return out;
}

// Per-frequency symbols of the coupled lambda system. a11, a22 are real and
// a21 = conj(a12); the determinant D = g^2 h^4 + 2 g h^2 c*(2 - cos zi - cos zj)
// is strictly positive whenever gamma > 0 and c* >= 0.
struct LambdaSystemSymbols {
    std::complex<double> a11, a12, a21, a22;
    double det;

    static LambdaSystemSymbols at(double zi, double zj, double gamma, double c_star, double h) {
        using namespace std::complex_literals;
        double h2 = h * h;
        double ci = std::cos(zi) - 1.0, si = std::sin(zi);
        double cj = std::cos(zj) - 1.0, sj = std::sin(zj);
        LambdaSystemSymbols s;
        s.a11 = gamma * h2 - 2.0 * c_star * ci;
        s.a12 = c_star * (ci + 1.0i * si) * (cj - 1.0i * sj);
        s.a21 = std::conj(s.a12);
        s.a22 = gamma * h2 - 2.0 * c_star * cj;
        s.det = gamma * gamma * h2 * h2 + 2.0 * gamma * h2 * c_star * (-ci - cj);
        return s;
    }
};

// Direct FFT solve of the frozen-coefficient system
//   [g h^2 I + c*(I-S1+)(I-S1-)] l1 + c*(I-S1+)(I-S2-) l2 = g1
//   c*(I-S2+)(I-S1-) l1 + [g h^2 I + c*(I-S2+)(I-S2-)] l2 = g2.
inline StaggeredVectorField solve_lambda_system(const ScalarField& g1, const ScalarField& g2,
                                                double gamma, double c_star, double h) {
    if (gamma <= 0.0)
        throw std::invalid_argument("solve_lambda_system: gamma must be positive");
    if (c_star < 0.0)
        throw std::invalid_argument("solve_lambda_system: c* must be nonnegative");

    int m = g1.width(), n = g1.height();
    ComplexField G1 = dft2(g1);
    ComplexField G2 = dft2(g2);
    ComplexField L1(m, n), L2(m, n);
    for (int yj = 0; yj < n; ++yj) {
        double zj = 2.0 * std::numbers::pi * yj / n;
        for (int yi = 0; yi < m; ++yi) {
            double zi = 2.0 * std::numbers::pi * yi / m;
            auto s = LambdaSystemSymbols::at(zi, zj, gamma, c_star, h);
            L1(yi, yj) = (s.a22 * G1(yi, yj) - s.a12 * G2(yi, yj)) / s.det;
            L2(yi, yj) = (-s.a21 * G1(yi, yj) + s.a11 * G2(yi, yj)) / s.det;
        }
    }
    return {idft2(L1), idft2(L2)};
}

// Direct FFT solve of [(I-S1-)(S1+-I) + (I-S2-)(S2+-I) - tau h^2 I] u = g.
// The symbol w = 2(cos zi - 1) + 2(cos zj - 1) - tau h^2 is <= -tau h^2 < 0
// at every frequency, so the division needs no regularization.
inline ScalarField solve_helmholtz(const ScalarField& g, double tau, double h) {
    if (tau <= 0.0)
        throw std::invalid_argument("solve_helmholtz: tau must be positive");

    int m = g.width(), n = g.height();
    ComplexField G = dft2(g);
    for (int yj = 0; yj < n; ++yj) {
        double zj = 2.0 * std::numbers::pi * yj / n;
        for (int yi = 0; yi < m; ++yi) {
            double zi = 2.0 * std::numbers::pi * yi / m;
            double w = 2.0 * (std::cos(zi) - 1.0) + 2.0 * (std::cos(zj) - 1.0) - tau * h * h;
            G(yi, yj) /= w;
        }
    }
    return idft2(G);
}

} // namespace elastica
