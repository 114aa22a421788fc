#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "spinelab/bolza.hpp"
#include "spinelab/locus.hpp"
#include "spinelab/minima.hpp"
#include "spinelab/minimize.hpp"

using namespace spinelab;
using Catch::Approx;

namespace {
FNPoint random_start(std::mt19937_64& rng, const FNPoint& center, double spread) {
    std::uniform_real_distribution<double> d(-spread, spread);
    std::vector<double> v = center.coords();
    for (double& c : v) c += d(rng);
    return FNPoint::from_coords(v);
}
}  // namespace

TEST_CASE("equal weights on the six-curve system minimize at the preset") {
    const auto [q, sys] = bolza_preset();
    const LengthFunctional F = LengthFunctional::equal_weights(sys);
    std::mt19937_64 rng(7);
    const MinimizeResult r = minimize_length_functional(F, random_start(rng, q, 0.3));
    REQUIRE(r.converged);
    const auto vq = q.coords(), vm = r.minimizer.coords();
    for (size_t k = 0; k < vq.size(); ++k) CHECK(vm[k] == Approx(vq[k]).margin(1e-6));
}

TEST_CASE("argmin is invariant under positive scaling of the weights") {
    const auto [q, sys] = bolza_preset();
    std::vector<double> A = {1.3, 0.8, 1.1, 0.9, 1.2, 1.0};
    std::vector<double> A2 = A;
    for (double& a : A2) a *= 3.7;
    std::mt19937_64 rng(13);
    const FNPoint x0 = random_start(rng, q, 0.2);
    const auto r1 = minimize_length_functional(LengthFunctional(sys, A), x0);
    const auto r2 = minimize_length_functional(LengthFunctional(sys, A2), x0);
    const auto v1 = r1.minimizer.coords(), v2 = r2.minimizer.coords();
    for (size_t k = 0; k < v1.size(); ++k) CHECK(v1[k] == Approx(v2[k]).margin(1e-5));
}

TEST_CASE("nonfilling systems are rejected") {
    CurveSystem sys;
    sys.genus = 2;
    sys.curves = {CurveClass::from_string("a1", 2), CurveClass::from_string("b1", 2)};
    CHECK_THROWS_AS(
        minimize_length_functional(LengthFunctional::equal_weights(sys),
                                   bolza_preset_point()),
        NotFilling);
}

TEST_CASE("multi-start consistency on the six-curve system") {
    const auto [q, sys] = bolza_preset();
    const LengthFunctional F(sys, {1.2, 1.0, 0.9, 1.1, 1.0, 1.05});
    std::mt19937_64 rng(29);
    std::vector<std::vector<double>> results;
    for (int s = 0; s < 4; ++s) {
        const auto r = minimize_length_functional(F, random_start(rng, q, 0.35));
        REQUIRE(r.converged);
        results.push_back(r.minimizer.coords());
    }
    for (size_t s = 1; s < results.size(); ++s)
        for (size_t k = 0; k < results[0].size(); ++k)
            CHECK(results[s][k] == Approx(results[0][k]).margin(1e-5));
}

TEST_CASE("joint lengthening: nonfilling feasible, preset six infeasible") {
    const auto [q, sys] = bolza_preset();
    // nonfilling subsystem at a random point: a direction exists
    const CurveSystem sub = sys.subsystem({0, 1, 2});
    const FNPoint x({1.7, 2.1, 2.6}, {0.2, -0.5, 0.9});
    const auto r1 = joint_lengthening_direction(sub, x);
    CHECK(r1.feasible);
    // the full six at the preset: infeasible with a Farkas certificate
    const auto r2 = joint_lengthening_direction(sys, q);
    REQUIRE(!r2.feasible);
    CHECK(r2.certificate_residual < 1e-8);
    CHECK(r2.farkas_weights.minCoeff() > 0);
}

TEST_CASE("single curve is never eutactic") {
    CurveSystem sys;
    sys.genus = 2;
    sys.curves = {CurveClass::from_string("a1 b2", 2)};
    const FNPoint x({1.7, 2.1, 2.6}, {0.2, -0.5, 0.9});
    const auto r = eutactic_test(sys, x);
    CHECK(!r.eutactic);
    CHECK(r.counterexample.size() == 6);
}

TEST_CASE("min membership at and off the preset") {
    const auto [q, sys] = bolza_preset();
    CHECK(min_membership(sys, q) == MinMembership::interior);
    // far away the lengthening LP is feasible
    const FNPoint far({1.1, 1.2, 1.4}, {1.3, -1.1, 0.6});
    CHECK(min_membership(sys, far) == MinMembership::outside);
}

TEST_CASE("certify_critical_point at the preset and nearby") {
    const auto [q, sys] = bolza_preset();
    const CriticalCertificate cert = certify_critical_point(q);
    CHECK(cert.eutactic);
    CHECK(cert.systole_set.curves.size() == 6);
    CHECK(cert.index == 3);
    CHECK(cert.positive_combination.minCoeff() >= 1 - 1e-9);

    std::mt19937_64 rng(53);
    const FNPoint moved = random_start(rng, q, 1e-2);
    const CriticalCertificate cert2 = certify_critical_point(moved);
    CHECK(!cert2.eutactic);
    CHECK(cert2.improving_direction.size() == 6);
}

TEST_CASE("certificate at the maximum") {
    const CriticalCertificate cert = certify_critical_point(bolza_maximum_point());
    CHECK(cert.eutactic);
    CHECK(cert.systole_set.curves.size() == 12);
    CHECK(cert.index == 6);
}

TEST_CASE("locus projection basics") {
    const auto [q, sys] = bolza_preset();
    const CurveSystem pair = sys.subsystem({0, 1});
    const FNPoint x({1.8, 2.0, 2.9}, {0.3, -0.2, 0.7});
    // offsets read off at the point: already on the locus
    const auto d = offsets_at(pair, x);
    const LocusPoint pt = locus_project(x, pair, d);
    const auto va = pt.base.coords(), vb = x.coords();
    for (size_t k = 0; k < va.size(); ++k) CHECK(va[k] == Approx(vb[k]).margin(1e-9));

    // zero offsets near the preset: lands on E(C) near q
    std::mt19937_64 rng(31);
    const FNPoint x0 = random_start(rng, q, 0.05);
    const LocusPoint on = locus_project(x0, sys.subsystem({0, 1, 2, 3}),
                                        std::vector<double>(4, 0.0));
    CHECK(on.residual < 1e-8);
}

TEST_CASE("balance classification") {
    const auto [q, sys] = bolza_preset();
    // eutactic point: balanced
    LocusPoint pt;
    pt.base = q;
    pt.curves = sys;
    pt.offsets.assign(6, 0.0);
    pt.residual = 0;
    const BalanceReport rep = classify_balance(pt);
    CHECK(rep.classification == BalanceClass::balanced);

    // two disjoint curves at a generic locus point: interior equal-rate
    // direction exists (multicurve case)
    CurveSystem pairsys;
    pairsys.genus = 2;
    pairsys.curves = {CurveClass::from_string("b1", 2), CurveClass::from_string("b2", 2)};
    const FNPoint x({1.9, 2.2, 2.7}, {0.4, -0.6, 1.0});
    const LocusPoint pt2 = locus_project(x, pairsys, offsets_at(pairsys, x));
    const BalanceReport rep2 = classify_balance(pt2);
    CHECK(rep2.classification == BalanceClass::balanced);
    CHECK(rep2.min_hull_weight > 1e-6);
}

TEST_CASE("nearest hull face: vertex and edge cases") {
    const auto [q, sys] = bolza_preset();
    const FNPoint x({1.9, 2.2, 2.7}, {0.4, -0.6, 1.0});
    const Eigen::MatrixXd G = length_gradients(sys, x);
    // v along one gradient: that vertex
    {
        const Eigen::VectorXd v = G.row(2);
        const auto face = nearest_hull_face(sys, x, v);
        REQUIRE(face.size() == 1);
        CHECK(face[0] == 2);
    }
    // v toward the midpoint of two vertices, pushed outward: that edge
    {
        Eigen::VectorXd v = 0.5 * (G.row(0) + G.row(3)).transpose();
        v *= 3.0;  // outside the hull
        const auto face = nearest_hull_face(sys, x, v);
        std::vector<size_t> expect = {0, 3};
        CHECK(face == expect);
    }
}

TEST_CASE("saturation recovers the sixth curve from a filling five-subset") {
    const auto [q, sys] = bolza_preset();
    const CurveSystem five = sys.subsystem({0, 1, 2, 3, 4});
    const CurveSystem sat = saturate_by_minima(five, q);
    CHECK(sat.size() == 6);
    std::set<Word> have;
    for (const auto& c : sat.curves) have.insert(conjugacy_canonical(c.word, 2));
    for (const auto& c : sys.curves)
        CHECK(have.count(conjugacy_canonical(c.word, 2)) == 1);
}

TEST_CASE("saturated horizons agree across filling subsets") {
    const auto [q, sys] = bolza_preset();
    const HorizonComplex h1 = horizon_subcomplex_saturated(sys.subsystem({0, 1, 2, 3, 4}), q);
    const HorizonComplex h2 = horizon_subcomplex_saturated(sys.subsystem({0, 1, 2, 3, 5}), q);
    const HorizonComplex h6 = horizon_subcomplex_saturated(sys, q);
    CHECK(h1.same_complex(h2));
    CHECK(h1.same_complex(h6));
}
