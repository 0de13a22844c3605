#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace elastica {

// Periodic M1 x N1 grid of reals. Index i runs along x1 (width M1), j along
// x2 (height N1); all accesses wrap modulo (M1, N1), so any offset stencil
// is valid. Grids smaller than 2x2 are rejected: the wrap stencils of the
// difference operators degenerate there.
class ScalarField {
public:
    ScalarField(int width, int height, double value = 0.0)
        : m_(width), n_(height), v_(static_cast<size_t>(width) * height, value) {
        if (width < 2 || height < 2)
            throw std::invalid_argument("ScalarField: grid must be at least 2x2");
    }

    int width() const { return m_; }
    int height() const { return n_; }
    size_t size() const { return v_.size(); }

    // Periodic access; i, j may be any integers.
    double operator()(int i, int j) const { return v_[index(i, j)]; }
    double& operator()(int i, int j) { return v_[index(i, j)]; }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    bool same_shape(const ScalarField& o) const { return m_ == o.m_ && n_ == o.n_; }

private:
    static int wrap(int k, int n) {
        int r = k % n;
        return r < 0 ? r + n : r;
    }
    size_t index(int i, int j) const {
        return static_cast<size_t>(wrap(j, n_)) * m_ + wrap(i, m_);
    }

    int m_, n_;
    std::vector<double> v_;
};

// Vector field on the staggered grid: component 1 lives at the o-nodes,
// component 2 at the square-nodes. Both components share the same logical
// (M1, N1) index space.
struct StaggeredVectorField {
    ScalarField c1;
    ScalarField c2;

    StaggeredVectorField(int width, int height, double value = 0.0)
        : c1(width, height, value), c2(width, height, value) {}
    StaggeredVectorField(ScalarField a, ScalarField b)
        : c1(std::move(a)), c2(std::move(b)) {
        if (!c1.same_shape(c2))
            throw std::invalid_argument("StaggeredVectorField: component shape mismatch");
    }

    int width() const { return c1.width(); }
    int height() const { return c1.height(); }
    bool same_shape(const StaggeredVectorField& o) const { return c1.same_shape(o.c1); }
};

struct GridGeometry {
    int width;
    int height;
    double h = 1.0;

    GridGeometry(int w, int n, double spacing = 1.0) : width(w), height(n), h(spacing) {
        if (h <= 0.0) throw std::invalid_argument("GridGeometry: h must be positive");
    }
};

} // namespace elastica
