#include <doctest.h>

#include "polyoracle/geometry.hpp"
#include "polyoracle/hpolytope.hpp"
#include "polyoracle/rng.hpp"
#include "test_util.hpp"

using namespace polyoracle;
using test_util::vec2;

TEST_CASE("slack on the unit square") {
    const auto P = test_util::unit_square();
    const VectorX<double> s0 = slack(P, vec2(0, 0));
    CHECK(s0.isApprox(VectorX<double>::Constant(4, 1.0)));
    CHECK(s0.minCoeff() > 0);

    const VectorX<double> s1 = slack(P, vec2(1, 0));
    CHECK(s1[0] == 0.0);  // facet x <= 1 is tight
    CHECK(s1.minCoeff() == 0.0);

    VectorX<double> bad(3);
    bad.setZero();
    CHECK_THROWS_AS(slack(P, bad), std::invalid_argument);
}

TEST_CASE("membership_direct classifications") {
    const auto P = test_util::unit_square();
    CHECK(membership_direct(P, vec2(0.5, 0.5), 1e-12) == Membership::INSIDE);
    CHECK(membership_direct(P, vec2(2, 0), 1e-12) == Membership::OUTSIDE);
    CHECK(membership_direct(P, vec2(1, 0.3), 1e-12) == Membership::BOUNDARY);
    CHECK_THROWS_AS(membership_direct(P, vec2(0, 0), -1.0), std::invalid_argument);
}

TEST_CASE("hyperplane projection and reflection") {
    const Hyperplane<double> Hx(vec2(1, 0), 1);
    const Hyperplane<double> Hy(vec2(0, 1), 3);
    const Hyperplane<double> Hdiag(vec2(1, 1), 4);

    CHECK(project_onto_hyperplane(vec2(0, 0), Hx).isApprox(vec2(1, 0)));
    CHECK(project_onto_hyperplane(vec2(0, 0), Hy).isApprox(vec2(0, 3)));
    CHECK(project_onto_hyperplane(vec2(1, 1), Hdiag).isApprox(vec2(2, 2)));

    CHECK(reflect_across_hyperplane(vec2(0, 0), Hx).isApprox(vec2(2, 0)));
    CHECK(reflect_across_hyperplane(vec2(0, 0), Hy).isApprox(vec2(0, 6)));
    // A point on the hyperplane is a fixed point.
    CHECK(reflect_across_hyperplane(vec2(1, 5), Hx).isApprox(vec2(1, 5)));

    VectorX<double> zero2 = VectorX<double>::Zero(2);
    CHECK_THROWS_AS(Hyperplane<double>(zero2, 1.0), std::invalid_argument);
}

TEST_CASE("projection idempotence and reflection involution") {
    Rng rng(12345);
    for (int rep = 0; rep < 200; ++rep) {
        const Index d = 2 + static_cast<Index>(rng.next_u64() % 7);
        const VectorX<double> p = 10.0 * rng.gaussian_vector(d);
        const Hyperplane<double> H(rng.unit_vector(d) * rng.uniform(0.1, 5.0),
                                   rng.uniform(-3.0, 3.0));
        const double scale = std::max(1.0, p.norm());

        const VectorX<double> pr = project_onto_hyperplane(p, H);
        CHECK((project_onto_hyperplane(pr, H) - pr).norm() <= 1e-12 * scale);
        CHECK(std::abs(H.a.dot(pr) - H.b) <= 1e-12 * (H.a.norm() * pr.norm() + std::abs(H.b)));

        const VectorX<double> rf = reflect_across_hyperplane(p, H);
        CHECK((reflect_across_hyperplane(rf, H) - p).norm() <= 1e-12 * scale);
        // Midpoint on H, equal distances.
        const VectorX<double> mid = 0.5 * (p + rf);
        CHECK(std::abs(H.a.dot(mid) - H.b) <= 1e-10 * (H.a.norm() * mid.norm() + std::abs(H.b) + 1));
    }
}

TEST_CASE("ray-hyperplane intersection") {
    const Ray<double> r1(vec2(0, 0), vec2(1, 0));
    const Hyperplane<double> H2(vec2(1, 0), 2);
    auto hit = ray_hyperplane_intersect(r1, H2);
    REQUIRE(hit.has_value());
    CHECK(hit->isApprox(vec2(2, 0)));

    const Ray<double> r_up(vec2(0, 0), vec2(0, 1));
    CHECK_FALSE(ray_hyperplane_intersect(r_up, H2).has_value());

    const Ray<double> r_skew(vec2(0, 0), vec2(2, 1));
    const Hyperplane<double> H1(vec2(1, 0), 1);
    hit = ray_hyperplane_intersect(r_skew, H1);
    REQUIRE(hit.has_value());
    CHECK(hit->isApprox(vec2(1, 0.5)));

    CHECK_THROWS_AS(Ray<double>(vec2(0, 0), vec2(0, 0)), std::invalid_argument);
}

TEST_CASE("ray-hyperplane residual on random instances") {
    Rng rng(777);
    for (int rep = 0; rep < 500; ++rep) {
        const Index d = 2 + static_cast<Index>(rng.next_u64() % 9);
        const Ray<double> r(5.0 * rng.gaussian_vector(d), rng.unit_vector(d));
        const Hyperplane<double> H(rng.gaussian_vector(d) * rng.uniform(0.2, 3.0),
                                   rng.uniform(-10.0, 10.0));
        const auto x = ray_hyperplane_intersect(r, H);
        if (!x) continue;
        CHECK(std::abs(H.a.dot(*x) - H.b) <= 1e-9 * (H.a.norm() * x->norm() + std::abs(H.b)));
    }
}

TEST_CASE("ray-box exit") {
    const Box<double> Q(vec2(-1, -1), vec2(1, 1));
    CHECK(ray_box_exit(Ray<double>(vec2(0, 0), vec2(1, 0)), Q).isApprox(vec2(1, 0)));
    CHECK(ray_box_exit(Ray<double>(vec2(0, 0), vec2(1, 1)), Q).isApprox(vec2(1, 1)));
    CHECK(ray_box_exit(Ray<double>(vec2(0, 0), vec2(2, 1)), Q).isApprox(vec2(1, 0.5)));
    CHECK_THROWS_AS(ray_box_exit(Ray<double>(vec2(3, 0), vec2(1, 0)), Q), std::invalid_argument);
    CHECK_THROWS_AS(Box<double>(vec2(1, 0), vec2(0, 1)), std::invalid_argument);
}

TEST_CASE("slack sign agrees with membership_direct on random polytopes") {
    const auto P = test_util::bounded_random(10, 100, 42);
    Rng rng(9);
    for (int rep = 0; rep < 1000; ++rep) {
        const VectorX<double> q = 2.0 * rng.gaussian_vector(10);
        const double ms = slack(P, q).minCoeff();
        const Membership m = membership_direct(P, q);
        if (ms > 1e-9 * P.scale()) CHECK(m == Membership::INSIDE);
        if (ms < -1e-9 * P.scale()) CHECK(m == Membership::OUTSIDE);
    }
}
