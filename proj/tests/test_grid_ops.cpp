#include <catch2/catch_amalgamated.hpp>

#include "elastica/grid_ops.hpp"
#include "test_util.hpp"

using namespace elastica;
using testutil::inner;
using testutil::random_field;
using testutil::random_vector_field;

TEST_CASE("fields reject degenerate grids") {
    CHECK_THROWS_AS(ScalarField(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(ScalarField(4, 1), std::invalid_argument);
    CHECK_NOTHROW(ScalarField(2, 2));
}

TEST_CASE("periodic indexing wraps in both directions") {
    ScalarField f(3, 4);
    f(0, 0) = 7.0;
    CHECK(f(3, 4) == 7.0);
    CHECK(f(-3, -4) == 7.0);
    CHECK(f(-6, 8) == 7.0);
}

TEST_CASE("differences of a constant field vanish") {
    ScalarField c(5, 7, 3.25);
    for (auto* op : {&diff_backward_1, &diff_backward_2, &diff_forward_1, &diff_forward_2}) {
        ScalarField d = (*op)(c, 0.5);
        for (double v : d.data()) CHECK(v == 0.0);
    }
}

TEST_CASE("backward difference wrap on a 2-row grid") {
    // v(0,j)=0, v(1,j)=1 -> d1- v(0,j) = -1, d1- v(1,j) = 1
    ScalarField v(2, 3);
    for (int j = 0; j < 3; ++j) v(1, j) = 1.0;
    ScalarField d = diff_backward_1(v, 1.0);
    for (int j = 0; j < 3; ++j) {
        CHECK(d(0, j) == -1.0);
        CHECK(d(1, j) == 1.0);
    }
}

TEST_CASE("interior values of a linear-in-i field equal slope/h") {
    double h = 0.5, slope = 0.75;
    ScalarField v(8, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 8; ++i) v(i, j) = slope * i;
    ScalarField db = diff_backward_1(v, h);
    ScalarField df = diff_forward_1(v, h);
    for (int j = 0; j < 4; ++j) {
        for (int i = 1; i < 8; ++i) CHECK(db(i, j) == Catch::Approx(slope / h));
        for (int i = 0; i < 7; ++i) CHECK(df(i, j) == Catch::Approx(slope / h));
    }
}

TEST_CASE("forward/backward differences are adjoint up to sign") {
    std::mt19937_64 rng(11);
    for (auto [w, n] : {std::pair{4, 4}, {5, 7}, {2, 9}}) {
        ScalarField u = random_field(w, n, rng);
        ScalarField v = random_field(w, n, rng);
        double h = 0.7;
        CHECK(inner(diff_forward_1(u, h), v) + inner(u, diff_backward_1(v, h)) ==
              Catch::Approx(0.0).margin(1e-12));
        CHECK(inner(diff_forward_2(u, h), v) + inner(u, diff_backward_2(v, h)) ==
              Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("forward-then-backward difference is the periodic 1D Laplacian stencil") {
    std::mt19937_64 rng(12);
    ScalarField u = random_field(6, 5, rng);
    double h = 0.5;
    ScalarField lap = diff_backward_1(diff_forward_1(u, h), h);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 6; ++i)
            CHECK(lap(i, j) ==
                  Catch::Approx((u(i + 1, j) - 2.0 * u(i, j) + u(i - 1, j)) / (h * h)));
}

TEST_CASE("grad_plus components match the axis differences") {
    std::mt19937_64 rng(13);
    ScalarField v = random_field(5, 6, rng);
    StaggeredVectorField g = grad_plus(v, 0.3);
    ScalarField d1 = diff_forward_1(v, 0.3), d2 = diff_forward_2(v, 0.3);
    for (size_t k = 0; k < v.size(); ++k) {
        CHECK(g.c1.data()[k] == d1.data()[k]);
        CHECK(g.c2.data()[k] == d2.data()[k]);
    }
}

TEST_CASE("div_minus of grad_plus is the 5-point Laplacian") {
    std::mt19937_64 rng(14);
    ScalarField v = random_field(6, 4, rng);
    double h = 1.0;
    ScalarField lap = div_minus(grad_plus(v, h), h);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 6; ++i)
            CHECK(lap(i, j) == Catch::Approx(v(i + 1, j) + v(i - 1, j) + v(i, j + 1) +
                                             v(i, j - 1) - 4.0 * v(i, j)));
}

TEST_CASE("div_minus sums to zero and the composed operator is negative semidefinite") {
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 10; ++rep) {
        StaggeredVectorField q = random_vector_field(5, 7, rng);
        double total = 0.0;
        ScalarField d = div_minus(q, 0.8);
        for (double v : d.data()) total += v;
        CHECK(total == Catch::Approx(0.0).margin(1e-12));

        ScalarField u = random_field(5, 7, rng);
        CHECK(inner(div_minus(grad_plus(u, 1.0), 1.0), u) <= 1e-12);
    }
}

TEST_CASE("averaging operators preserve constants and the grid mean") {
    ScalarField c(4, 4, 2.5);
    ScalarField csq = avg_to_square(c), cci = avg_to_circle(c);
    for (double v : csq.data()) CHECK(v == 2.5);
    for (double v : cci.data()) CHECK(v == 2.5);

    std::mt19937_64 rng(16);
    ScalarField f = random_field(6, 5, rng);
    double mean_in = 0.0, mean_sq = 0.0, mean_ci = 0.0;
    ScalarField sq = avg_to_square(f), ci = avg_to_circle(f);
    for (size_t k = 0; k < f.size(); ++k) {
        mean_in += f.data()[k];
        mean_sq += sq.data()[k];
        mean_ci += ci.data()[k];
    }
    CHECK(mean_sq == Catch::Approx(mean_in));
    CHECK(mean_ci == Catch::Approx(mean_in));
}

TEST_CASE("averaging spreads a spike to the four referencing nodes") {
    ScalarField spike(4, 4);
    spike(2, 2) = 1.0;

    ScalarField sq = avg_to_square(spike);
    // square stencil references (i,j+1),(i-1,j+1),(i,j),(i-1,j)
    int hits = 0;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            if (sq(i, j) != 0.0) {
                CHECK(sq(i, j) == 0.25);
                ++hits;
            }
    CHECK(hits == 4);
    CHECK(sq(2, 2) == 0.25);
    CHECK(sq(3, 2) == 0.25);
    CHECK(sq(2, 1) == 0.25);
    CHECK(sq(3, 1) == 0.25);

    ScalarField ci = avg_to_circle(spike);
    hits = 0;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            if (ci(i, j) != 0.0) {
                CHECK(ci(i, j) == 0.25);
                ++hits;
            }
    CHECK(hits == 4);
    CHECK(ci(2, 2) == 0.25);
    CHECK(ci(1, 2) == 0.25);
    CHECK(ci(2, 3) == 0.25);
    CHECK(ci(1, 3) == 0.25);
}

TEST_CASE("avg_to_circle matches its stencil on a random field") {
    std::mt19937_64 rng(17);
    ScalarField f = random_field(5, 6, rng);
    ScalarField ci = avg_to_circle(f);
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 5; ++i)
            CHECK(ci(i, j) ==
                  Catch::Approx(0.25 * (f(i + 1, j) + f(i, j) + f(i + 1, j - 1) + f(i, j - 1))));
}

TEST_CASE("magnitude at bullet-nodes") {
    StaggeredVectorField q(4, 4);
    for (double& v : q.c1.data()) v = 3.0;
    for (double& v : q.c2.data()) v = 4.0;
    ScalarField m345 = magnitude_at_bullet(q);
    for (double v : m345.data()) CHECK(v == 5.0);

    std::mt19937_64 rng(18);
    StaggeredVectorField r = random_vector_field(5, 4, rng);
    ScalarField mag = magnitude_at_bullet(r);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 5; ++i) {
            double a = 0.5 * (r.c1(i, j) + r.c1(i - 1, j));
            double b = 0.5 * (r.c2(i, j) + r.c2(i, j - 1));
            CHECK(mag(i, j) == Catch::Approx(std::sqrt(a * a + b * b)));
        }
}

TEST_CASE("divergence at bullet-nodes equals div_minus") {
    std::mt19937_64 rng(19);
    StaggeredVectorField mu = random_vector_field(6, 5, rng);
    ScalarField a = divergence_at_bullet(mu, 0.4);
    ScalarField b = div_minus(mu, 0.4);
    for (size_t k = 0; k < a.size(); ++k) CHECK(a.data()[k] == b.data()[k]);
}

TEST_CASE("operators are translation-equivariant under periodic shifts") {
    std::mt19937_64 rng(20);
    ScalarField u = random_field(6, 7, rng);
    int si = 2, sj = 3;
    ScalarField shifted(6, 7);
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 6; ++i) shifted(i, j) = u(i - si, j - sj);

    ScalarField d_then_shift = diff_forward_1(u, 1.0);
    ScalarField shift_then_d = diff_forward_1(shifted, 1.0);
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 6; ++i)
            CHECK(shift_then_d(i, j) == d_then_shift(i - si, j - sj));

    ScalarField a_then_shift = avg_to_square(u);
    ScalarField shift_then_a = avg_to_square(shifted);
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 6; ++i)
            CHECK(shift_then_a(i, j) == a_then_shift(i - si, j - sj));
}
