#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "spinelab/bolza.hpp"
#include "spinelab/gradients.hpp"
#include "spinelab/intersections.hpp"

using namespace spinelab;
using Catch::Approx;

TEST_CASE("octagon oracle: relator and systole line") {
    const FuchsianGroup oracle = bolza_octagon_group();
    CHECK(oracle.relator_residual < 1e-12);
    const auto spec = numeric_length_spectrum(oracle, 3.2);
    REQUIRE(!spec.empty());
    CHECK(spec[0].length == Approx(2 * std::acosh(1 + std::sqrt(2.0))).epsilon(1e-12));
    CHECK(spec[0].multiplicity == 12);
}

TEST_CASE("maximum point: twelve systoles of the closed-form length") {
    const auto [p, sys] = bolza_maximum();
    const FuchsianGroup g = build_fuchsian(p);
    CHECK(g.relator_residual < 1e-8);
    const double l0 = bolza_systole_length();
    for (const auto& c : sys.curves)
        CHECK(geodesic_length(c, g).length == Approx(l0).margin(1e-12));
    const auto ss = systoles(p, 1e-7);
    CHECK(ss.curves.size() == 12);
    CHECK(ss.value == Approx(l0).margin(1e-9));
}

TEST_CASE("maximum point: spectrum agrees with the octagon oracle") {
    const auto fn = numeric_length_spectrum(build_fuchsian(bolza_maximum_point()), 4.0);
    const auto oc = numeric_length_spectrum(bolza_octagon_group(), 4.0);
    REQUIRE(fn.size() == oc.size());
    for (size_t i = 0; i < fn.size(); ++i) {
        CHECK(fn[i].length == Approx(oc[i].length).margin(1e-9));
        CHECK(fn[i].multiplicity == oc[i].multiplicity);
    }
}

TEST_CASE("preset: six equal lengths, orthogonal crossings, exact systole set") {
    const auto [q, sys] = bolza_preset();
    const FuchsianGroup g = build_fuchsian(q);
    const double target = bolza_preset_systole_length();
    for (const auto& c : sys.curves)
        CHECK(geodesic_length(c, g).length == Approx(target).margin(1e-8));

    const auto ss = systoles(q, 1e-7);
    CHECK(ss.curves.size() == 6);
    CHECK(ss.value == Approx(target).margin(1e-9));

    // pairwise crossings: hexagonal pattern, all right angles
    const MetricContext ctx = MetricContext::make(sys, q);
    int total_crossings = 0;
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = i + 1; j < 6; ++j) {
            const auto cr = axis_crossings(ctx.realized[i], i, ctx.realized[j], j, g);
            CHECK(static_cast<int>(cr.size()) == sys.intersection_matrix[i][j]);
            for (const auto& c : cr) {
                CHECK(std::abs(c.angle - M_PI / 2) < 1e-6);
                ++total_crossings;
            }
        }
    CHECK(total_crossings == 6);
}

TEST_CASE("preset: six-curve gradient span has rank 3, rank 6 off the point") {
    const auto [q, sys] = bolza_preset();
    const GradientFrame frame = gradient_frame(sys, q);
    CHECK(frame.rank == 3);

    std::mt19937_64 rng(417);
    std::uniform_real_distribution<double> d(-1e-2, 1e-2);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> v = q.coords();
        for (double& c : v) c += d(rng);
        const GradientFrame f2 = gradient_frame(sys, FNPoint::from_coords(v));
        CHECK(f2.rank == 6);
    }
}

TEST_CASE("preset systole length is below the maximum") {
    CHECK(bolza_preset_systole_length() < bolza_systole_length());
    // the twelve remain systoles only at the maximum
    const auto ss = systoles(bolza_maximum_point(), 1e-7);
    std::vector<std::string> have;
    for (const auto& c : ss.curves.curves) have.push_back(c.id);
    for (const auto& c : bolza_six_curve_words())
        CHECK(std::find(have.begin(), have.end(), c.id) != have.end());
}
