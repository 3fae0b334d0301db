#include <doctest.h>

#include <cmath>

#include "polyoracle/lp.hpp"
#include "polyoracle/rng.hpp"
#include "test_util.hpp"

using namespace polyoracle;
using test_util::vec2;

TEST_CASE("solve_lp basic verdicts") {
    // max x1 s.t. x1 <= 1, -x1 <= 1
    MatrixX<double> A(2, 1);
    A << 1, -1;
    VectorX<double> b(2);
    b << 1, 1;
    VectorX<double> c(1);
    c << 1;
    auto out = solve_lp(c, A, b);
    REQUIRE(out.status == LpStatus::OPTIMAL);
    CHECK(out.x[0] == doctest::Approx(1.0));
    CHECK(out.value == doctest::Approx(1.0));

    // max x1 s.t. -x1 <= 0 is unbounded
    MatrixX<double> A2(1, 1);
    A2 << -1;
    VectorX<double> b2(1);
    b2 << 0;
    CHECK(solve_lp(c, A2, b2).status == LpStatus::UNBOUNDED);

    // max x1 + x2 over the unit square
    const auto sq = test_util::unit_square();
    VectorX<double> c2(2);
    c2 << 1, 1;
    out = solve_lp(c2, sq.A(), sq.b());
    REQUIRE(out.status == LpStatus::OPTIMAL);
    CHECK(out.x.isApprox(vec2(1, 1)));
    CHECK(out.value == doctest::Approx(2.0));

    // x <= -1 and -x <= 0 is infeasible
    MatrixX<double> A3(2, 1);
    A3 << 1, -1;
    VectorX<double> b3(2);
    b3 << -1, 0;
    CHECK(solve_lp(c, A3, b3).status == LpStatus::INFEASIBLE);

    CHECK_THROWS_AS(solve_lp(c2, A, b), std::invalid_argument);
}

TEST_CASE("solve_lp with negative right-hand sides goes through phase 1") {
    // Feasible region x in [2, 5] expressed with a negative rhs: -x <= -2.
    MatrixX<double> A(2, 1);
    A << -1, 1;
    VectorX<double> b(2);
    b << -2, 5;
    VectorX<double> c(1);
    c << -1;  // minimize x
    const auto out = solve_lp(c, A, b);
    REQUIRE(out.status == LpStatus::OPTIMAL);
    CHECK(out.x[0] == doctest::Approx(2.0));
}

TEST_CASE("LP optimality against random active-set vertices") {
    Rng rng(2024);
    for (int rep = 0; rep < 20; ++rep) {
        const Index d = 3 + static_cast<Index>(rng.next_u64() % 3);
        const auto P = test_util::bounded_random(d, 8 * d, 5000 + rep);
        const VectorX<double> c = rng.unit_vector(d);
        const auto out = solve_lp(c, P.A(), P.b());
        REQUIRE(out.status == LpStatus::OPTIMAL);
        CHECK((P.A() * out.x - P.b()).maxCoeff() <= 1e-7 * P.scale());

        // No vertex from a random facet subset may beat the reported optimum.
        for (int v = 0; v < 50; ++v) {
            std::vector<Index> rows;
            while (static_cast<Index>(rows.size()) < d)
                rows.push_back(static_cast<Index>(rng.next_u64() % P.num_facets()));
            MatrixX<double> B(d, d);
            VectorX<double> rhs(d);
            for (Index i = 0; i < d; ++i) {
                B.row(i) = P.A().row(rows[i]);
                rhs[i] = P.b()[rows[i]];
            }
            const Eigen::FullPivLU<MatrixX<double>> lu(B);
            if (!lu.isInvertible()) continue;
            const VectorX<double> x = lu.solve(rhs);
            if ((P.A() * x - P.b()).maxCoeff() > 1e-9 * P.scale()) continue;  // infeasible vertex
            CHECK(c.dot(x) <= out.value + 1e-7 * P.scale());
        }
    }
}

TEST_CASE("chebyshev center of simple polytopes") {
    const auto sq = test_util::unit_square();
    const auto ball = chebyshev_center(sq);
    CHECK(ball.c.norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ball.rc == doctest::Approx(1.0));

    // Triangle x >= 0, y >= 0, x + y <= 1: equal distance r to all three
    // facets forces c = (r, r) with (1 - 2r)/sqrt(2) = r.
    const auto tri = test_util::triangle();
    const double r_expect = 1.0 / (2.0 + std::sqrt(2.0));
    const auto tball = chebyshev_center(tri);
    CHECK(tball.rc == doctest::Approx(r_expect).epsilon(1e-9));
    CHECK(tball.c[0] == doctest::Approx(r_expect).epsilon(1e-9));
    CHECK(tball.c[1] == doctest::Approx(r_expect).epsilon(1e-9));

    // Coarse grid search confirms no point has a larger clearance.
    double best = 0;
    for (int i = 1; i < 200; ++i)
        for (int j = 1; j < 200 - i; ++j) {
            const VectorX<double> q = vec2(i / 200.0, j / 200.0);
            const double clear = (slack(tri, q).array() / tri.row_norms().array()).minCoeff();
            best = std::max(best, clear);
        }
    CHECK(best <= tball.rc + 1e-9);
    CHECK(best >= tball.rc - 2e-2);  // grid resolution

    // Shifted square: translation equivariance.
    const auto sq2 = test_util::box_polytope(vec2(0, 0), vec2(2, 2));
    const auto ball2 = chebyshev_center(sq2);
    CHECK(ball2.c.isApprox(vec2(1, 1)));
    CHECK(ball2.rc == doctest::Approx(1.0));
}

TEST_CASE("chebyshev translation equivariance on random polytopes") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const Index d = 2 + static_cast<Index>(rng.next_u64() % 4);
        const auto P = test_util::bounded_random(d, 10 * d, 900 + rep);
        const auto ball = chebyshev_center(P);

        const VectorX<double> t = rng.gaussian_vector(d);
        const HPolytope<double> Pt(P.A(), P.b() + P.A() * t);
        const auto ball_t = chebyshev_center(Pt);
        CHECK((ball_t.c - (ball.c + t)).norm() <= 1e-8 * (1 + t.norm()) * P.scale());
        CHECK(std::abs(ball_t.rc - ball.rc) <= 1e-8 * P.scale());
    }
}

TEST_CASE("chebyshev ball containment") {
    const auto P = test_util::bounded_random(6, 60, 77);
    const auto ball = chebyshev_center(P);
    Rng rng(88);
    for (int rep = 0; rep < 10000; ++rep) {
        const VectorX<double> q = ball.c + ball.rc * rng.unit_vector(6);
        CHECK(membership_direct(P, q, 1e-7) != Membership::OUTSIDE);
    }
}

TEST_CASE("chebyshev error cases") {
    // Empty polytope: x <= -1, -x <= 0.
    MatrixX<double> A(2, 1);
    A << 1, -1;
    VectorX<double> b(2);
    b << -1, 0;
    CHECK_THROWS_AS(chebyshev_center(HPolytope<double>(A, b)), NumericError);

    // Halfspace contains arbitrarily large balls.
    MatrixX<double> A2(1, 2);
    A2 << 1, 0;
    VectorX<double> b2(1);
    b2 << 1;
    CHECK_THROWS_AS(chebyshev_center(HPolytope<double>(A2, b2)), NumericError);
}

TEST_CASE("bounding box of simple polytopes") {
    const auto sq = test_util::unit_square();
    const auto box = bounding_box(sq);
    CHECK(box.lo.isApprox(vec2(-1, -1)));
    CHECK(box.hi.isApprox(vec2(1, 1)));

    const auto tri_box = bounding_box(test_util::triangle());
    CHECK(tri_box.lo.norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tri_box.hi.isApprox(vec2(1, 1)));
}

TEST_CASE("generator output with all-nonnegative rows is unbounded below") {
    GenSpec spec;
    spec.d = 3;
    spec.n = 20;
    spec.seed = 5;
    spec.variant = GenVariant::PAPER;
    const auto P = gen_polytope(spec);
    CHECK((P.A().array() >= 0.0).all());
    CHECK_THROWS_AS(bounding_box(P), NumericError);

    // Every negative coordinate direction individually escapes to infinity.
    for (Index j = 0; j < 3; ++j) {
        VectorX<double> c = VectorX<double>::Zero(3);
        c[j] = -1;
        CHECK(solve_lp(c, P.A(), P.b()).status == LpStatus::UNBOUNDED);
    }
}
