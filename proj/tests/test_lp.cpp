#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "spinelab/lp.hpp"

using namespace spinelab;
using Catch::Approx;

TEST_CASE("equality feasibility with witness") {
    Eigen::MatrixXd A(2, 3);
    A << 1, 1, 0, 0, 1, 1;
    Eigen::VectorXd b(2);
    b << 2, 3;
    const auto f = lp_equality_feasible(A, b);
    REQUIRE(f.feasible);
    CHECK((A * f.x - b).norm() < 1e-10);
    CHECK(f.x.minCoeff() >= -1e-12);
}

TEST_CASE("infeasible system yields a verified Farkas vector") {
    // x1 + x2 = 1 and x1 + x2 = 3 cannot both hold
    Eigen::MatrixXd A(2, 2);
    A << 1, 1, 1, 1;
    Eigen::VectorXd b(2);
    b << 1, 3;
    const auto f = lp_equality_feasible(A, b);
    REQUIRE(!f.feasible);
    CHECK(f.farkas.dot(b) > 0);
    CHECK((A.transpose() * f.farkas).maxCoeff() <= 1e-8);
}

TEST_CASE("negative rhs rows are handled through sign flips") {
    Eigen::MatrixXd A(2, 2);
    A << 1, 0, 0, 1;
    Eigen::VectorXd b(2);
    b << -1, 2;  // x1 = -1 impossible for x >= 0
    const auto f = lp_equality_feasible(A, b);
    REQUIRE(!f.feasible);
    CHECK(f.farkas.dot(b) > 0);
    CHECK((A.transpose() * f.farkas).maxCoeff() <= 1e-8);
}

TEST_CASE("joint lengthening feasible for a single gradient") {
    Eigen::MatrixXd G(1, 3);
    G << 0.5, -0.25, 1.0;
    const auto r = joint_lengthening_lp(G);
    REQUIRE(r.feasible);
    CHECK((G * r.direction)(0) > 0);
}

TEST_CASE("joint lengthening infeasible for opposite gradients") {
    Eigen::MatrixXd G(2, 2);
    G << 1, 0, -1, 0;
    const auto r = joint_lengthening_lp(G);
    REQUIRE(!r.feasible);
    CHECK(r.farkas_weights.minCoeff() >= 0);
    CHECK(r.farkas_weights.sum() == Approx(1.0));
    CHECK(r.residual < 1e-8);
}

TEST_CASE("opposite pair is a positive vanishing combination") {
    Eigen::MatrixXd G(2, 4);
    G << 1, 2, -1, 0, -1, -2, 1, 0;
    const auto r = positive_vanishing_combination(G);
    REQUIRE(r.exists);
    CHECK(r.weights.minCoeff() >= 1 - 1e-9);
    CHECK((G.transpose() * r.weights).norm() < 1e-6);
}

TEST_CASE("single gradient is not eutactic; the direction is itself") {
    Eigen::MatrixXd G(1, 3);
    G << 0.3, 0.4, -0.2;
    const auto r = positive_vanishing_combination(G);
    REQUIRE(!r.exists);
    const Eigen::VectorXd pair = G * r.violating_direction;
    CHECK(pair.minCoeff() >= -1e-8);
    CHECK(pair.sum() > 0);
}

TEST_CASE("duality: exactly one of lengthening and hull membership holds") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 200; ++trial) {
        const long n = 2 + static_cast<long>(rng() % 7);
        const long d = 2 + static_cast<long>(rng() % 5);
        Eigen::MatrixXd G(n, d);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < d; ++j) G(i, j) = nd(rng);
        const auto jl = joint_lengthening_lp(G);
        if (jl.feasible) {
            CHECK((G * jl.direction).minCoeff() > 0);
        } else {
            CHECK((G.transpose() * jl.farkas_weights).norm() < 1e-8);
            CHECK(jl.farkas_weights.minCoeff() >= -1e-12);
        }
        // Stiemke alternative for the strict version
        const auto pc = positive_vanishing_combination(G);
        if (pc.exists) {
            CHECK(pc.weights.minCoeff() >= 1 - 1e-9);
        } else {
            const Eigen::VectorXd pair = G * pc.violating_direction;
            CHECK(pair.minCoeff() >= -1e-8);
            CHECK(pair.sum() > 1e-10);
        }
        // eutactic (0 in interior of hull cone) implies no lengthening
        if (pc.exists) CHECK(!jl.feasible);
    }
}
