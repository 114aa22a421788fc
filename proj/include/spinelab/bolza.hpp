#pragma once

// The two frozen genus-2 reference configurations, plus the octagon oracle
// used to validate length spectra.
//
//  * bolza_maximum(): the Bolza surface, the global maximum of the systole
//    function, with its 12 systole classes of length 2 acosh(1 + sqrt 2).
//    Frozen coordinates (derived in tools/bolza_derive.cpp by systole
//    maximization, polished against the closed-form target and cross-checked
//    against the octagon spectrum):
//        lengths = (l0, l0, 2 acosh(11 + 8 sqrt 2)),
//        twists  = (l0/2, l0/2, -l3/12),  l0 = 2 acosh(1 + sqrt 2).
//
//  * bolza_preset(): the six-curve configuration of the right-angle figure:
//    the critical point of the systole function lying on the one-dimensional
//    stratum labelled by six of the twelve Bolza systoles.  At this point the
//    six curves are exactly the systoles, all of length 2 acosh(2), every
//    crossing is orthogonal, and the span of their length gradients drops to
//    three.  Frozen coordinates (derived by walking the equal-length stratum
//    from the maximum to the zero of the common-length derivative; the
//    result has all twists zero):
//        lengths = (2 acosh 2, 2 acosh 2, 2 acosh 17), twists = (0, 0, 0).
//
//  * the oracle: side-pairing translations of the regular hyperbolic octagon
//    (length 2 acosh(1 + sqrt 2) through i at angles k pi/4, relator
//    g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3); generators are not the surface
//    presentation, so only numeric (word-free) spectrum tools apply to it.

#include <utility>
#include <vector>

#include "spinelab/fenchel_nielsen.hpp"
#include "spinelab/geodesics.hpp"

namespace spinelab {

inline double bolza_systole_length() { return 2 * std::acosh(1.0 + std::sqrt(2.0)); }

inline FNPoint bolza_maximum_point() {
    const double l0 = bolza_systole_length();
    const double l3 = 2 * std::acosh(11.0 + 8.0 * std::sqrt(2.0));
    return FNPoint({l0, l0, l3}, {l0 / 2, l0 / 2, -l3 / 12});
}

// The 12 systole classes at the maximum, in canonical word order.
inline std::vector<CurveClass> bolza_maximum_systoles() {
    std::vector<CurveClass> out;
    for (const char* w :
         {"a1", "b1", "a2", "b2", "a1 b1", "b1 b2", "a2 b2", "a1 b2 b1",
          "b1 b2 a2", "a1 a2^-1 b1", "a1 a2^-1 b2^-1", "a1 b1^-1 a2^-1 b1"})
        out.push_back(CurveClass::from_string(w, 2));
    return out;
}

inline std::pair<FNPoint, CurveSystem> bolza_maximum() {
    CurveSystem sys;
    sys.genus = 2;
    sys.curves = bolza_maximum_systoles();
    sys.candidate_systole_type = true;
    return {bolza_maximum_point(), sys};
}

inline double bolza_preset_systole_length() { return 2 * std::acosh(2.0); }

inline FNPoint bolza_preset_point() {
    const double s = 2 * std::acosh(2.0);
    const double u = 2 * std::acosh(17.0);
    return FNPoint({s, s, u}, {0, 0, 0});
}

// The six curves of the figure; their crossing graph is a hexagon and every
// crossing is orthogonal at the preset point.
inline std::vector<CurveClass> bolza_six_curve_words() {
    std::vector<CurveClass> out;
    for (const char* w : {"a1", "b1", "a2", "b2", "b1 b2", "a1 b1^-1 a2^-1 b1"})
        out.push_back(CurveClass::from_string(w, 2));
    return out;
}

// The genus-2 six-curve critical configuration: the point and the system,
// with the intersection matrix of the hexagonal crossing pattern attached.
inline std::pair<FNPoint, CurveSystem> bolza_preset() {
    CurveSystem sys;
    sys.genus = 2;
    sys.curves = bolza_six_curve_words();
    sys.candidate_systole_type = true;
    // crossing pairs (hexagonal): a1-b1, a1-b1b2, b1-hook, a2-b2, a2-b1b2,
    // b2-hook, where hook = a1 b1^-1 a2^-1 b1
    sys.intersection_matrix = {
        {0, 1, 0, 0, 1, 0},
        {1, 0, 0, 0, 0, 1},
        {0, 0, 0, 1, 1, 0},
        {0, 0, 1, 0, 0, 1},
        {1, 0, 1, 0, 0, 0},
        {0, 1, 0, 1, 0, 0},
    };
    sys.check_intersection_invariants();
    return {bolza_preset_point(), sys};
}

namespace detail {
inline Mat2 rotation_about_i(double phi) {
    return {std::cos(phi / 2), std::sin(phi / 2), -std::sin(phi / 2), std::cos(phi / 2)};
}
}  // namespace detail

// Oracle group; relator residual is recorded but the generator set is the
// octagon one, so word-based conjugacy tools must not be applied to it.
inline FuchsianGroup bolza_octagon_group() {
    const double l0 = bolza_systole_length();
    std::vector<Mat2L> gens;
    for (int k = 0; k < 4; ++k) {
        const long double phi = k * static_cast<long double>(M_PI) / 4;
        const Mat2L r{std::cos(phi / 2), std::sin(phi / 2), -std::sin(phi / 2),
                      std::cos(phi / 2)};
        gens.push_back((r * axis_translation<long double>(l0) * r.inverse()).unit());
    }
    FuchsianGroup grp;
    grp.genus = 2;
    for (const auto& g : gens) grp.generators.push_back(g.cast<double>());
    grp.cache_letters(gens);
    const Mat2 rel = grp.holonomy(Word{1, -2, 3, -4, -1, 2, -3, 4});
    grp.relator_residual = distance_to_identity(rel);
    if (grp.relator_residual > 1e-12)
        throw NumericError("octagon relator failed");
    return grp;
}

struct SpectrumLine {
    double length = 0;
    int multiplicity = 0;
};

// Length spectrum with multiplicities by numeric conjugacy dedup (no word
// normal forms, so it works for any generator set).  Classes are merged when
// some ball element conjugates one holonomy to the other, up to sign and
// inverse.
inline std::vector<SpectrumLine> numeric_length_spectrum(const FuchsianGroup& grp,
                                                         double cutoff,
                                                         double axis_reach = 2.5) {
    const double radius =
        2 * std::acosh(std::cosh(cutoff / 2) * std::cosh(axis_reach)) + 0.25;
    const GroupBall ball = group_ball(grp, radius);
    if (!ball.complete) throw SearchBudgetExceeded("numeric_length_spectrum");

    struct Rep {
        Mat2 mat;
        double length;
    };
    std::vector<Rep> reps;
    auto conjugate_in_ball = [&](const Mat2& u, const Mat2& v) {
        auto matches = [&](const Mat2& x, const Mat2& y) {
            return x.frobenius_distance(y) < 1e-7 ||
                   x.scaled(-1).frobenius_distance(y) < 1e-7;
        };
        const Mat2 vi = v.inverse();
        if (matches(u, v) || matches(u, vi)) return true;
        for (const GroupElement& h : ball.elements) {
            const Mat2 c = (h.mat * u * h.mat.inverse()).unit();
            if (matches(c, v) || matches(c, vi)) return true;
        }
        return false;
    };

    for (const GroupElement& e : ball.elements) {
        const Mat2 u = e.mat.unit();
        const double t = std::abs(u.trace());
        if (t <= 2 + 1e-12) {
            if (distance_to_identity(u) < 1e-8) continue;
            throw NumericError("non-discrete oracle element");
        }
        const double len = 2 * std::acosh(t / 2);
        if (len > cutoff + 1e-12) continue;
        bool merged = false;
        for (Rep& r : reps) {
            if (std::abs(r.length - len) > 1e-7) continue;
            if (conjugate_in_ball(u, r.mat)) {
                merged = true;
                break;
            }
        }
        if (!merged) reps.push_back({u, len});
    }

    std::sort(reps.begin(), reps.end(),
              [](const Rep& x, const Rep& y) { return x.length < y.length; });
    std::vector<SpectrumLine> out;
    for (const Rep& r : reps) {
        if (!out.empty() && std::abs(out.back().length - r.length) < 1e-7)
            out.back().multiplicity++;
        else
            out.push_back({r.length, 1});
    }
    return out;
}

}  // namespace spinelab
