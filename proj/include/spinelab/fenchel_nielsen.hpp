#pragma once

// Fenchel-Nielsen coordinates -> Fuchsian group, fully realized for genus 2.
//
// Decomposition and seam conventions (frozen; everything downstream depends
// on them):
//
//   * Pants decomposition of S_2: the "dumbbell" -- two one-holed tori glued
//     along the separating curve.  Pants curves, in coordinate order:
//       k = 0  core curve of handle 1        word  b1
//       k = 1  core curve of handle 2        word  b2
//       k = 2  separating curve              word  a1 b1 a1^-1 b1^-1
//     lengths[k] > 0 and twists[k] (hyperbolic length units) are the FN
//     coordinates, 6g-6 = 6 reals.
//
//   * Each pair of pants P(l1, l2, l3) is generated by products of
//     reflections in its three seam geodesics (the common perpendiculars
//     between cuffs).  With sigma_k the seam not touching cuff k, placed as
//         sigma_2 : |z| = e^{+l1/4}     sigma_3 : |z| = e^{-l1/4}
//         sigma_1 : the circle at seam distance l2/2 from sigma_3 and l3/2
//                   from sigma_2, centered on the positive real axis,
//     the cuff holonomies are X1 = R2 R3, X2 = R3 R1, X3 = R1 R2, which gives
//     X1 X2 X3 = 1 and cuff k translation length exactly l_k.  Cuff 1 is the
//     imaginary axis with X1 = diag(e^{l1/2}, e^{-l1/2}).
//
//   * Gluing two cuffs uses the normalizing maps N taking (repelling fixed
//     point, attracting fixed point, marked seam foot) to (0, inf, i).  The
//     gluing isometry is N_target^-1 * T(twist) * F * N_source with
//     T = diag(e^{t/2}, e^{-t/2}) and F : z -> -1/z, so at twist 0 the marked
//     seam feet match.  Marked feet: the common seam sigma_3 for the
//     handle gluing (cuff 1 <- cuff 2), the seam sigma_2 for the separating
//     gluing (cuff 3 <- cuff 3).
//
//   * Handle gluing of P(l, l, L) produces the one-holed torus group
//     < a, b > with a the gluing letter (inverted) and b the cuff curve;
//     the boundary is the commutator [a, b].  Amalgamating the two tori over
//     the separating curve yields generators (a1, b1, a2, b2) satisfying
//     [a1,b1][a2,b2] = 1 exactly (as matrices, up to rounding).

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "spinelab/errors.hpp"
#include "spinelab/geom.hpp"
#include "spinelab/surface.hpp"

namespace spinelab {

struct FNPoint {
    int genus = 2;
    std::vector<double> lengths;  // 3g-3 positive reals
    std::vector<double> twists;   // 3g-3 reals

    FNPoint() = default;
    FNPoint(std::vector<double> ls, std::vector<double> ts, int g = 2)
        : genus(g), lengths(std::move(ls)), twists(std::move(ts)) {
        validate();
    }

    size_t dim() const { return lengths.size() + twists.size(); }

    void validate() const {
        if (genus < 2) throw ValidationError("FNPoint: genus must be >= 2");
        const size_t n = static_cast<size_t>(3 * genus - 3);
        if (lengths.size() != n || twists.size() != n)
            throw ValidationError("FNPoint: expected " + std::to_string(n) +
                                  " lengths and twists");
        for (double l : lengths)
            if (!(l > 0) || !std::isfinite(l))
                throw ValidationError("FNPoint: lengths must be positive and finite");
        for (double t : twists)
            if (!std::isfinite(t)) throw ValidationError("FNPoint: twists must be finite");
    }

    // Coordinates as a flat vector (lengths then twists); the chart in which
    // all gradients and flows are computed.
    std::vector<double> coords() const {
        std::vector<double> v = lengths;
        v.insert(v.end(), twists.begin(), twists.end());
        return v;
    }

    static FNPoint from_coords(const std::vector<double>& v, int genus = 2) {
        const size_t n = v.size() / 2;
        return FNPoint(std::vector<double>(v.begin(), v.begin() + static_cast<long>(n)),
                       std::vector<double>(v.begin() + static_cast<long>(n), v.end()),
                       genus);
    }

    FNPoint displaced(const std::vector<double>& delta, double scale = 1.0) const {
        std::vector<double> v = coords();
        for (size_t i = 0; i < v.size() && i < delta.size(); ++i) v[i] += scale * delta[i];
        return from_coords(v, genus);
    }
};

namespace detail {

// The assembly runs in long double; rounding in the normalizer chains would
// otherwise push relator residuals close to the 1e-8 budget.
using LD = long double;
using CV = std::complex<LD>;

struct Pants {
    std::array<Mat2L, 3> cuff;          // X1, X2, X3; X1 X2 X3 = 1
    std::array<TGeodesic<LD>, 3> axis;  // oriented (repelling, attracting)
    CV foot_sigma3_on_cuff1;            // marked feet used by the gluings
    CV foot_sigma3_on_cuff2;
    CV foot_sigma2_on_cuff3;
};

inline Pants build_pants(LD l1, LD l2, LD l3) {
    const LD ra = std::exp(l1 / 4);   // sigma_2 radius
    const LD rb = std::exp(-l1 / 4);  // sigma_3 radius
    const LD A = std::cosh(l2 / 2);   // d(sigma_1, sigma_3) = l2/2
    const LD B = std::cosh(l3 / 2);   // d(sigma_1, sigma_2) = l3/2

    // sigma_1 = circle (c1, rho1), inside sigma_2, outside sigma_3, c1 > 0.
    const LD rho1 = (ra * ra - rb * rb) / (2 * (A * rb + B * ra));
    const LD c1 = std::sqrt(rho1 * rho1 + rb * rb + 2 * rho1 * rb * A);

    const Mat2L R1 = reflection_in_circle<LD>(c1, rho1);
    const Mat2L R2 = reflection_in_circle<LD>(0, ra);
    const Mat2L R3 = reflection_in_circle<LD>(0, rb);

    Pants p;
    p.cuff[0] = (R2 * R3).unit();
    p.cuff[1] = (R3 * R1).unit();
    p.cuff[2] = (R1 * R2).unit();

    const LD expected[3] = {l1, l2, l3};
    for (int k = 0; k < 3; ++k) {
        const LD tl = translation_length(p.cuff[k]);
        if (std::abs(tl - expected[k]) > 1e-9 * (1 + expected[k]))
            throw NumericError("pants construction: cuff " + std::to_string(k) +
                               " has wrong length");
        p.axis[k] = axis_of(p.cuff[k]);
    }

    const TGeodesic<LD> sigma2{-ra, ra};
    const TGeodesic<LD> sigma3{-rb, rb};
    p.foot_sigma3_on_cuff1 = CV(0, rb);
    p.foot_sigma3_on_cuff2 = geodesic_intersection(p.axis[1], sigma3);
    p.foot_sigma2_on_cuff3 = geodesic_intersection(p.axis[2], sigma2);
    return p;
}

// N_target^-1 T(twist) F N_source; conjugates "source" to "target"^-1 and at
// twist 0 matches the marked feet.
inline Mat2L gluing_map(const Mat2L& target, CV target_foot, const Mat2L& source,
                        CV source_foot, LD twist) {
    const Mat2L Nt = normalizer(target, target_foot);
    const Mat2L Ns = normalizer(source, source_foot);
    return Nt.inverse() * axis_translation<LD>(twist) * half_turn_at_i<LD>() * Ns;
}

struct Handle {             // one-holed torus
    Mat2L gen_a;             // gluing letter inverse (published a_i)
    Mat2L gen_b;             // cuff curve (published b_i)
    Mat2L boundary;          // [a, b], = pants X3
    CV boundary_foot;        // marked foot for the separating gluing
};

inline Handle build_handle(LD l, LD twist, LD boundary_length) {
    const Pants p = build_pants(l, l, boundary_length);
    const Mat2L glue = gluing_map(p.cuff[0], p.foot_sigma3_on_cuff1, p.cuff[1],
                                  p.foot_sigma3_on_cuff2, twist);
    Handle h;
    h.gen_a = glue.inverse();
    h.gen_b = p.cuff[0];
    h.boundary = p.cuff[2];
    h.boundary_foot = p.foot_sigma2_on_cuff3;

    // HNN relation glue * X2 * glue^-1 = X1^-1 must hold exactly.
    const Mat2L lhs = glue * p.cuff[1] * glue.inverse();
    if (distance_to_identity(lhs * p.cuff[0]) > 1e-11)
        throw NumericError("handle gluing: HNN relation violated");
    return h;
}

}  // namespace detail

struct FuchsianGroup {
    int genus = 2;
    std::vector<Mat2> generators;  // rho(a1), rho(b1), rho(a2), rho(b2)
    double relator_residual = 0;
    // Letter matrices (generators then inverses) in extended precision;
    // traces of long words are accumulated here so that cyclic invariance of
    // lengths holds to ~1e-14.
    std::vector<std::array<long double, 4>> letters_ld;

    void cache_letters(const std::vector<Mat2L>& gens_ld) {
        letters_ld.clear();
        for (const Mat2L& m : gens_ld) letters_ld.push_back({m.a, m.b, m.c, m.d});
        for (const Mat2L& m : gens_ld) {
            const Mat2L i = m.inverse();
            letters_ld.push_back({i.a, i.b, i.c, i.d});
        }
    }

    const std::array<long double, 4>& letter(int l) const {
        const size_t n = generators.size();
        const size_t idx = static_cast<size_t>(std::abs(l) - 1);
        if (idx >= n) throw ValidationError("word letter outside generator range");
        return letters_ld[l > 0 ? idx : idx + n];
    }

    Mat2 holonomy(const Word& w) const {
        long double a = 1, b = 0, c = 0, d = 1;
        for (int l : w) {
            const auto& m = letter(l);
            const long double na = a * m[0] + b * m[2];
            const long double nb = a * m[1] + b * m[3];
            const long double nc = c * m[0] + d * m[2];
            const long double nd = c * m[1] + d * m[3];
            a = na, b = nb, c = nc, d = nd;
        }
        return {(double)a, (double)b, (double)c, (double)d};
    }

    double holonomy_trace(const Word& w) const {
        long double a = 1, b = 0, c = 0, d = 1;
        for (int l : w) {
            const auto& m = letter(l);
            const long double na = a * m[0] + b * m[2];
            const long double nb = a * m[1] + b * m[3];
            const long double nc = c * m[0] + d * m[2];
            const long double nd = c * m[1] + d * m[3];
            a = na, b = nb, c = nc, d = nd;
        }
        const long double det = a * d - b * c;
        return (double)((a + d) / std::sqrt(std::abs(det)));
    }
};

inline FuchsianGroup build_fuchsian(const FNPoint& x) {
    x.validate();
    if (x.genus != 2)
        throw ValidationError("build_fuchsian: only genus 2 is realized");

    const detail::Handle h1 =
        detail::build_handle(x.lengths[0], x.twists[0], x.lengths[2]);
    const detail::Handle h2 =
        detail::build_handle(x.lengths[1], x.twists[1], x.lengths[2]);

    const Mat2L g = detail::gluing_map(h1.boundary, h1.boundary_foot, h2.boundary,
                                       h2.boundary_foot, x.twists[2]);

    std::vector<Mat2L> gens_ld = {h1.gen_a.unit(), h1.gen_b.unit(),
                                  (g * h2.gen_a * g.inverse()).unit(),
                                  (g * h2.gen_b * g.inverse()).unit()};

    FuchsianGroup grp;
    grp.genus = 2;
    for (size_t i = 0; i < gens_ld.size(); ++i) {
        if (std::abs(gens_ld[i].det() - 1.0L) > 1e-10)
            throw NumericError("generator determinant drifted from 1");
        if (std::abs(gens_ld[i].trace()) <= 2 + 1e-12)
            throw NonHyperbolicGenerator("generator " + std::to_string(i) +
                                         " has |trace| <= 2");
        grp.generators.push_back(gens_ld[i].cast<double>());
    }
    grp.cache_letters(gens_ld);

    grp.relator_residual = distance_to_identity(grp.holonomy(surface_relator(2)));
    if (grp.relator_residual >= 1e-8)
        throw NumericError("relator residual " + std::to_string(grp.relator_residual));
    return grp;
}

struct GeodesicLengthReport {
    CurveClass curve;
    double length = 0;
    double trace = 0;
};

inline double geodesic_length_of_word(const Word& w, const FuchsianGroup& grp) {
    const double t = std::abs(grp.holonomy_trace(w));
    if (t <= 2 + 1e-12)
        throw EllipticOrParabolic("holonomy trace " + std::to_string(t) +
                                  " for word is not hyperbolic");
    return 2 * std::acosh(t / 2);
}

inline GeodesicLengthReport geodesic_length(const CurveClass& c, const FuchsianGroup& grp) {
    const double tr = grp.holonomy_trace(c.word);
    const double t = std::abs(tr);
    if (t <= 2 + 1e-12)
        throw EllipticOrParabolic("curve '" + c.id + "' is not hyperbolic here");
    return {c, 2 * std::acosh(t / 2), tr};
}

inline GeodesicLengthReport geodesic_length(const CurveClass& c, const FNPoint& x) {
    return geodesic_length(c, build_fuchsian(x));
}

// Words of the three pants curves of the frozen decomposition.
inline std::vector<CurveClass> pants_curves(int genus = 2) {
    if (genus != 2) throw ValidationError("pants_curves: only genus 2");
    return {CurveClass(Word{2}, 2, "b1"), CurveClass(Word{4}, 2, "b2"),
            CurveClass(Word{1, 2, -1, -2}, 2, "a1 b1 a1^-1 b1^-1")};
}

}  // namespace spinelab
