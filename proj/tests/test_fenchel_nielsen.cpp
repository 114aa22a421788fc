#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "spinelab/fenchel_nielsen.hpp"

using namespace spinelab;
using Catch::Approx;

namespace {
FNPoint sample_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> len(0.8, 3.5), tw(-2.0, 2.0);
    return FNPoint({len(rng), len(rng), len(rng)}, {tw(rng), tw(rng), tw(rng)});
}
}  // namespace

TEST_CASE("pants cuff traces follow the hexagon data") {
    const auto p = detail::build_pants(1.3, 2.1, 0.7);
    CHECK(std::abs(p.cuff[0].trace()) == Approx(2 * std::cosh(1.3 / 2)));
    CHECK(std::abs(p.cuff[1].trace()) == Approx(2 * std::cosh(2.1 / 2)));
    CHECK(std::abs(p.cuff[2].trace()) == Approx(2 * std::cosh(0.7 / 2)));
    const Mat2L prod = p.cuff[0] * p.cuff[1] * p.cuff[2];
    CHECK(distance_to_identity(prod) < 1e-15L);
}

TEST_CASE("relator residual stays below 1e-8 over a 100-point random sample") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const FNPoint x = sample_point(rng);
        const FuchsianGroup g = build_fuchsian(x);
        CHECK(g.relator_residual < 1e-8);
    }
}

TEST_CASE("pants-curve holonomies realize the FN lengths exactly") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const FNPoint x = sample_point(rng);
        const FuchsianGroup g = build_fuchsian(x);
        const auto pcs = pants_curves(2);
        for (int k = 0; k < 3; ++k) {
            const auto rep = geodesic_length(pcs[static_cast<size_t>(k)], g);
            CHECK(rep.length == Approx(x.lengths[static_cast<size_t>(k)]).epsilon(1e-9));
        }
    }
}

TEST_CASE("with zero twists the pants-curve traces are 2 cosh(l/2)") {
    const FNPoint x({1.0, 1.4, 2.2}, {0, 0, 0});
    const FuchsianGroup g = build_fuchsian(x);
    const auto pcs = pants_curves(2);
    for (int k = 0; k < 3; ++k) {
        const auto rep = geodesic_length(pcs[static_cast<size_t>(k)], g);
        CHECK(std::abs(rep.trace) ==
              Approx(2 * std::cosh(x.lengths[static_cast<size_t>(k)] / 2)).epsilon(1e-10));
    }
}

TEST_CASE("geodesic length is invariant under cyclic permutation and inversion") {
    const FNPoint x({1.1, 1.7, 2.4}, {0.3, -0.6, 1.2});
    const FuchsianGroup g = build_fuchsian(x);
    const Word w = parse_word("a1 b2 a2^-1 b1", 2);
    const double base = geodesic_length_of_word(w, g);
    Word rot(w.begin() + 1, w.end());
    rot.push_back(w.front());
    CHECK(geodesic_length_of_word(rot, g) == Approx(base).epsilon(1e-12));
    CHECK(geodesic_length_of_word(inverse_word(w), g) == Approx(base).epsilon(1e-12));
}

TEST_CASE("powers double the length") {
    const FNPoint x({1.2, 1.2, 1.8}, {0.1, 0.2, -0.4});
    const FuchsianGroup g = build_fuchsian(x);
    const Word w = parse_word("a1", 2);
    CHECK(geodesic_length_of_word(word_power(w, 2), g) ==
          Approx(2 * geodesic_length_of_word(w, g)).epsilon(1e-12));
}

TEST_CASE("full twist is a relabeling: length spectrum of test words is preserved") {
    // tau_0 -> tau_0 + l_0 is the Dehn twist along pants curve b1; curve
    // lengths are permuted by the twist.  Check on words transformed by the
    // twist: a1 -> a1 b1 (twisting along b1 changes a1 by inserting b1).
    const FNPoint x({1.3, 1.9, 2.6}, {0.25, -0.8, 0.55});
    FNPoint xt = x;
    xt.twists[0] += x.lengths[0];
    const FuchsianGroup g0 = build_fuchsian(x);
    const FuchsianGroup g1 = build_fuchsian(xt);

    // curves disjoint from b1 keep their lengths
    for (const char* s : {"b1", "b2", "a2", "a1 b1 a1^-1 b1^-1", "a2 b2^-1"}) {
        const Word w = parse_word(s, 2);
        CHECK(geodesic_length_of_word(w, g1) ==
              Approx(geodesic_length_of_word(w, g0)).epsilon(1e-9));
    }
    // a1 crosses b1 once; after a full twist its class maps to a1 b1^{+-1}
    const double la1_twisted = geodesic_length_of_word(parse_word("a1", 2), g1);
    const double cand1 = geodesic_length_of_word(parse_word("a1 b1", 2), g0);
    const double cand2 = geodesic_length_of_word(parse_word("a1 b1^-1", 2), g0);
    const bool matches = std::abs(la1_twisted - cand1) < 1e-9 * (1 + cand1) ||
                         std::abs(la1_twisted - cand2) < 1e-9 * (1 + cand2);
    CHECK(matches);
}

TEST_CASE("invalid points are rejected") {
    CHECK_THROWS_AS(FNPoint({1, 1}, {0, 0, 0}), ValidationError);
    CHECK_THROWS_AS(FNPoint({1, -1, 1}, {0, 0, 0}), ValidationError);
    FNPoint g3({1, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 0, 0}, 3);
    CHECK_THROWS_AS(build_fuchsian(g3), ValidationError);
}
