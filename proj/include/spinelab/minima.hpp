#pragma once

// Equality of sets of minima, decided numerically, and the saturation of a
// curve system by its minima-equivalent companions.
//
// Two systems are merged when their minimizers under shared random weight
// profiles agree within 1e-5.  A curve joins the saturation of C when the
// extended system stays eutactic at every sampled minimizer of C (so the
// sampled part of Min(C) lies in Min(C + c) as well).  The saturated system
// is the computable stand-in for the paper's largest compatible labeling
// set; the horizon subcomplex is computed on it so that any filling subset
// carrying the same set of minima produces the same complex.

#include <random>

#include "spinelab/chains.hpp"
#include "spinelab/locus.hpp"
#include "spinelab/minimize.hpp"

namespace spinelab {

// Minimizers of the restrictions of shared profiles agree within tol?
inline bool minima_equivalent(const CurveSystem& parent,
                              const std::vector<size_t>& subset1,
                              const std::vector<size_t>& subset2, const FNPoint& x0,
                              int profiles = 10, uint64_t seed = 20260809,
                              double tol = 1e-5) {
    const CurveSystem C1 = parent.subsystem(subset1);
    const CurveSystem C2 = parent.subsystem(subset2);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> w(0.5, 1.5);
    for (int t = 0; t < profiles; ++t) {
        std::vector<double> A(parent.size());
        for (double& a : A) a = w(rng);
        std::vector<double> A1, A2;
        for (size_t i : subset1) A1.push_back(A[i]);
        for (size_t i : subset2) A2.push_back(A[i]);
        const MinimizeResult m1 =
            minimize_length_functional(LengthFunctional(C1, A1), x0);
        const MinimizeResult m2 =
            minimize_length_functional(LengthFunctional(C2, A2), x0);
        double dist = 0;
        const auto v1 = m1.minimizer.coords(), v2 = m2.minimizer.coords();
        for (size_t k = 0; k < v1.size(); ++k)
            dist = std::max(dist, std::abs(v1[k] - v2[k]));
        if (dist > tol) return false;
    }
    return true;
}

// The point of Sys(C-family) inside Min(C): the systole function restricted
// to the set of minima decreases radially away from the critical point, so
// maximize f_sys over Min(C) through the weight parameterization
// A -> argmin L(A, C), by Nelder-Mead on log-weights with warm-started
// minimizations.
inline FNPoint family_critical_point(const CurveSystem& system, const FNPoint& x0,
                                     int iterations = 120) {
    const size_t n = system.size();
    FNPoint warm = x0;
    auto phi = [&](const std::vector<double>& logw) {
        std::vector<double> A(n);
        for (size_t i = 0; i < n; ++i)
            A[i] = std::exp(std::clamp(i == 0 ? 0.0 : logw[i - 1], -3.0, 3.0));
        const MinimizeResult r = minimize_length_functional(
            LengthFunctional(system, A), warm, MinimizeOptions{1e-8, 4000, 1e-3, false});
        warm = r.minimizer;
        return r.minimizer;
    };
    auto neg_fsys = [&](const std::vector<double>& logw) {
        try {
            const FNPoint m = phi(logw);
            return -systole_value(build_fuchsian(m));
        } catch (const Error&) {
            return 1e6;
        }
    };

    // compact Nelder-Mead over the n-1 log-weight coordinates
    const size_t d = n - 1;
    std::vector<std::vector<double>> simplex(d + 1, std::vector<double>(d, 0.0));
    std::vector<double> val(d + 1);
    for (size_t i = 0; i < d; ++i) simplex[i + 1][i] = 0.35;
    for (size_t i = 0; i <= d; ++i) val[i] = neg_fsys(simplex[i]);
    for (int it = 0; it < iterations; ++it) {
        size_t best = 0, worst = 0, second = 0;
        for (size_t i = 1; i <= d; ++i) {
            if (val[i] < val[best]) best = i;
            if (val[i] > val[worst]) worst = i;
        }
        for (size_t i = 0; i <= d; ++i)
            if (i != worst && val[i] > val[second]) second = i;
        std::vector<double> centroid(d, 0.0);
        for (size_t i = 0; i <= d; ++i)
            if (i != worst)
                for (size_t k = 0; k < d; ++k)
                    centroid[k] += simplex[i][k] / static_cast<double>(d);
        auto combine = [&](double t) {
            std::vector<double> p(d);
            for (size_t k = 0; k < d; ++k)
                p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            return p;
        };
        const auto refl = combine(-1.0);
        const double fr = neg_fsys(refl);
        if (fr < val[best]) {
            const auto ext = combine(-2.0);
            const double fe = neg_fsys(ext);
            if (fe < fr) {
                simplex[worst] = ext;
                val[worst] = fe;
            } else {
                simplex[worst] = refl;
                val[worst] = fr;
            }
        } else if (fr < val[second]) {
            simplex[worst] = refl;
            val[worst] = fr;
        } else {
            const auto con = combine(0.5);
            const double fc = neg_fsys(con);
            if (fc < val[worst]) {
                simplex[worst] = con;
                val[worst] = fc;
            } else {
                for (size_t i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    for (size_t k = 0; k < d; ++k)
                        simplex[i][k] = 0.5 * (simplex[i][k] + simplex[best][k]);
                    val[i] = neg_fsys(simplex[i]);
                }
            }
        }
    }
    size_t best = 0;
    for (size_t i = 1; i <= d; ++i)
        if (val[i] < val[best]) best = i;
    return phi(simplex[best]);
}

// Saturate a filling system by the other systoles at its critical point:
// a candidate joins when the extended system stays eutactic (capped-weight
// slack test) at the critical point and at sampled minimizers of the base.
// Candidates are tested against the base system, so the result does not
// depend on pool order.
inline CurveSystem saturate_by_minima(const CurveSystem& system, const FNPoint& x0,
                                      int profiles = 4, uint64_t seed = 20260809,
                                      double systole_margin = 1e-4) {
    const FNPoint pc = family_critical_point(system, x0);
    const FuchsianGroup g = build_fuchsian(pc);
    const double fsys = systole_value(g);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> w(0.5, 1.5);
    std::vector<FNPoint> minimizers{pc};
    for (int t = 0; t < profiles; ++t) {
        std::vector<double> A(system.size());
        for (double& a : A) a = w(rng);
        minimizers.push_back(
            minimize_length_functional(LengthFunctional(system, A), x0).minimizer);
    }

    std::set<Word> have;
    for (const auto& c : system.curves)
        have.insert(conjugacy_canonical(c.word, system.genus));

    CurveSystem out = system;
    for (const auto& sg : enumerate_short_geodesics(g, fsys + systole_margin)) {
        if (primitive_root(sg.curve.word).second != 1) continue;
        const Word canon = conjugacy_canonical(sg.curve.word, system.genus);
        if (have.count(canon)) continue;
        CurveSystem extended = system;
        extended.curves.push_back(sg.curve);
        bool keeps = true;
        for (const FNPoint& m : minimizers) {
            const Eigen::MatrixXd G = length_gradients(extended, m);
            if (!positive_vanishing_combination(G, 1e-4).exists) {
                keeps = false;
                break;
            }
        }
        if (keeps) {
            out.curves.push_back(sg.curve);
            have.insert(canon);
        }
    }
    out.intersection_matrix.clear();
    return out;
}

// Horizon subcomplex computed on the saturation, so that filling subsets
// sharing the same set of minima produce identical complexes.
inline HorizonComplex horizon_subcomplex_saturated(const CurveSystem& system,
                                                   const FNPoint& x,
                                                   uint64_t seed = 20260809) {
    const bool fills = with_degeneracy_retries(
        x, seed, [&](const FNPoint& y) { return is_filling(system, y); });
    if (!fills) throw NotFilling("horizon needs a filling system");
    const CurveSystem saturated = saturate_by_minima(system, x, 6, seed);
    return horizon_subcomplex(saturated, x, seed);
}

}  // namespace spinelab
