#include <catch2/catch_amalgamated.hpp>

#include "spinelab/geom.hpp"

using namespace spinelab;
using Catch::Approx;

TEST_CASE("axis translation moves points up the imaginary axis") {
    const Mat2 t = axis_translation(1.5);
    const Complex z = t.apply(Complex(0, 1));
    CHECK(z.real() == Approx(0.0).margin(1e-15));
    CHECK(z.imag() == Approx(std::exp(1.5)));
    CHECK(translation_length(t) == Approx(1.5));
}

TEST_CASE("hyperbolic distance on the imaginary axis is log-ratio") {
    CHECK(hyperbolic_distance(Complex(0, 1), Complex(0, std::exp(2.0))) == Approx(2.0));
    CHECK(hyperbolic_distance(Complex(3, 1), Complex(3, 1)) == Approx(0.0).margin(1e-12));
}

TEST_CASE("reflections compose to translations along common perpendiculars") {
    const double r1 = 0.5, r2 = 2.0;
    const Mat2 refl = reflection_in_circle(0.0, r1) * reflection_in_circle(0.0, r2);
    CHECK(std::abs(refl.det() - 1.0) < 1e-12);
    // distance between |z|=r1 and |z|=r2 along the imaginary axis is log(r2/r1)
    CHECK(translation_length(refl) == Approx(2 * std::log(r2 / r1)));
}

TEST_CASE("axis_of recovers fixed points") {
    const Mat2 t = axis_translation(2.0);
    const Geodesic g0 = axis_of(t);
    CHECK(g0.p == Approx(0.0).margin(1e-12));
    CHECK(std::isinf(g0.q));

    // conjugate: axis moves accordingly
    const Mat2 c{2, 1, 1, 1};  // det 1
    const Mat2 m = c * t * c.inverse();
    const Geodesic g = axis_of(m);
    const double p = c.apply_boundary(0.0), q = c.apply_boundary(kInf);
    CHECK(g.p == Approx(p).margin(1e-10));
    CHECK(g.q == Approx(q).margin(1e-10));
    CHECK(translation_length(m) == Approx(2.0));
}

TEST_CASE("normalizer sends axis and foot to canonical position") {
    const Mat2 c{1, -3, 0.25, 1};
    const Mat2 m = (c * axis_translation(1.2) * c.inverse()).unit();
    const Geodesic g = axis_of(m);
    const Complex foot = foot_of_perpendicular(g, Complex(0, 1));
    const Mat2 n = normalizer(m, foot);
    const Complex img = n.apply(foot);
    CHECK(img.real() == Approx(0.0).margin(1e-10));
    CHECK(img.imag() == Approx(1.0).margin(1e-10));
    const Mat2 canon = n * m * n.inverse();
    CHECK(canon.b == Approx(0.0).margin(1e-10));
    CHECK(canon.c == Approx(0.0).margin(1e-10));
    CHECK(canon.a > canon.d);  // attracting at infinity: upward translation
}

TEST_CASE("linking and crossing of geodesics") {
    const Geodesic g1{-1, 1};
    const Geodesic g2{0, kInf};
    CHECK(endpoints_link(g1, g2));
    const Complex z = geodesic_intersection(g1, g2);
    CHECK(z.real() == Approx(0.0).margin(1e-14));
    CHECK(z.imag() == Approx(1.0));
    CHECK(!endpoints_link(g1, Geodesic{2, 3}));

    // right angle at i between the unit semicircle and the imaginary axis
    const double ang = crossing_angle(g2, g1, z);
    CHECK(std::abs(std::cos(ang)) < 1e-12);
}

TEST_CASE("foot of perpendicular is the closest point") {
    const Geodesic g{-2, 4};
    const Complex z{0.5, 2.5};
    const Complex f = foot_of_perpendicular(g, z);
    const double d = hyperbolic_distance(z, f);
    for (double eps : {-1e-3, 1e-3}) {
        // nearby point on the semicircle
        const double theta = std::atan2(f.imag(), f.real() - g.center()) + eps;
        const Complex w{g.center() + g.radius() * std::cos(theta),
                        g.radius() * std::sin(theta)};
        CHECK(hyperbolic_distance(z, w) >= d - 1e-12);
    }
}
