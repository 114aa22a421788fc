#pragma once

// Convex length minimization and the eutacticity toolkit.
//
// The optimizer is plain gradient descent with a Barzilai-Borwein initial
// step and Armijo backtracking (c = 1e-4, shrink 0.5).  Convexity along
// Weil-Petersson geodesics is never used; uniqueness of the minimum is
// checked by multi-start agreement instead (the coordinate metric here is
// Euclidean Fenchel-Nielsen throughout).

#include <Eigen/Dense>
#include <optional>
#include <random>

#include "spinelab/arrangement.hpp"
#include "spinelab/errors.hpp"
#include "spinelab/geodesics.hpp"
#include "spinelab/gradients.hpp"
#include "spinelab/lp.hpp"

namespace spinelab {

struct LengthFunctional {
    CurveSystem curves;
    std::vector<double> weights;

    LengthFunctional() = default;
    LengthFunctional(CurveSystem c, std::vector<double> w)
        : curves(std::move(c)), weights(std::move(w)) {
        if (weights.size() != curves.size())
            throw ValidationError("length functional needs one weight per curve");
        for (double a : weights)
            if (!(a > 0)) throw ValidationError("length functional weights must be positive");
    }

    static LengthFunctional equal_weights(CurveSystem c) {
        const size_t n = c.size();
        return LengthFunctional(std::move(c), std::vector<double>(n, 1.0));
    }

    double value(const FuchsianGroup& g) const {
        double s = 0;
        for (size_t i = 0; i < curves.size(); ++i)
            s += weights[i] * geodesic_length_of_word(curves[i].word, g);
        return s;
    }
    double value(const FNPoint& x) const { return value(build_fuchsian(x)); }

    Eigen::VectorXd gradient(const FNPoint& x) const {
        const Eigen::MatrixXd G = length_gradients(curves, x);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(G.cols());
        for (size_t i = 0; i < weights.size(); ++i)
            g += weights[i] * G.row(static_cast<long>(i)).transpose();
        return g;
    }
};

struct MinimizeResult {
    FNPoint minimizer;
    double value = 0;
    double gradient_norm = 0;
    int iterations = 0;
    bool converged = false;
};

struct MinimizeOptions {
    double gradient_tolerance = 1e-7;
    int max_iterations = 4000;
    double pinch_guard = 1e-3;   // f_sys below this while unconverged => Diverged
    bool check_filling = true;
};

inline MinimizeResult minimize_length_functional(const LengthFunctional& F,
                                                 const FNPoint& x0,
                                                 const MinimizeOptions& opt = {}) {
    if (opt.check_filling) {
        const bool fills = with_degeneracy_retries(
            x0, 11, [&](const FNPoint& y) { return is_filling(F.curves, y); });
        if (!fills)
            throw NotFilling("the functional's curve system does not fill; "
                             "no minimum exists");
    }

    FNPoint x = x0;
    double value = F.value(x);
    Eigen::VectorXd grad = F.gradient(x);
    Eigen::VectorXd prev_x, prev_grad;
    MinimizeResult res;

    for (int it = 0; it < opt.max_iterations; ++it) {
        const double gn = grad.norm();
        if (gn < opt.gradient_tolerance * (1 + std::abs(value))) {
            res.minimizer = x;
            res.value = value;
            res.gradient_norm = gn;
            res.iterations = it;
            res.converged = true;
            return res;
        }

        // Barzilai-Borwein seed, clamped; fall back to a safe scale
        double step = 1.0 / std::max(gn, 1.0);
        if (prev_x.size()) {
            Eigen::VectorXd xc(6);
            const auto xv = x.coords();
            for (int k = 0; k < 6; ++k) xc(k) = xv[static_cast<size_t>(k)];
            const Eigen::VectorXd s = xc - prev_x;
            const Eigen::VectorXd y = grad - prev_grad;
            const double sy = s.dot(y);
            if (sy > 1e-14) step = std::min(std::max(s.dot(s) / sy, 1e-6), 50.0);
        }

        // Armijo backtracking
        const double c1 = 1e-4;
        double new_value = value;
        FNPoint xn = x;
        bool accepted = false;
        while (step > 1e-14) {
            std::vector<double> v = x.coords();
            bool valid = true;
            for (int k = 0; k < 6; ++k) {
                v[static_cast<size_t>(k)] -= step * grad(k);
                if (!std::isfinite(v[static_cast<size_t>(k)])) valid = false;
            }
            if (valid && v[0] > 0 && v[1] > 0 && v[2] > 0) {
                try {
                    FNPoint cand = FNPoint::from_coords(v, x.genus);
                    const double fv = F.value(cand);
                    if (fv <= value - c1 * step * grad.squaredNorm()) {
                        xn = cand;
                        new_value = fv;
                        accepted = true;
                        break;
                    }
                } catch (const Error&) {
                }
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.minimizer = x;
            res.value = value;
            res.gradient_norm = gn;
            res.iterations = it;
            res.converged = gn < 10 * opt.gradient_tolerance * (1 + std::abs(value));
            if (!res.converged)
                throw NoConvergence("line search stalled at gradient norm " +
                                    std::to_string(gn));
            return res;
        }

        // escape-to-the-completion guard
        const double min_len = *std::min_element(xn.lengths.begin(), xn.lengths.end());
        if (min_len < 0.2) {
            const FuchsianGroup g = build_fuchsian(xn);
            double fsys = min_len;
            for (const auto& c : F.curves.curves)
                fsys = std::min(fsys, geodesic_length_of_word(c.word, g));
            if (fsys < opt.pinch_guard)
                throw Diverged("iterates approach the completion: f_sys ~ " +
                               std::to_string(fsys));
        }

        Eigen::VectorXd xc(6);
        const auto xv = x.coords();
        for (int k = 0; k < 6; ++k) xc(k) = xv[static_cast<size_t>(k)];
        prev_x = xc;
        prev_grad = grad;
        x = xn;
        value = new_value;
        grad = F.gradient(x);
    }
    throw NoConvergence("minimization exceeded the iteration budget");
}

// Direction lengthening every curve of the system, or the Farkas certificate
// that none exists.
struct LengtheningReport {
    bool feasible = false;
    Eigen::VectorXd direction;
    Eigen::VectorXd farkas_weights;
    double certificate_residual = 0;
};

inline LengtheningReport joint_lengthening_direction(const CurveSystem& C,
                                                     const FNPoint& x) {
    const Eigen::MatrixXd G = length_gradients(C, x);
    const JointLengthening r = joint_lengthening_lp(G);
    LengtheningReport out;
    out.feasible = r.feasible;
    out.direction = r.direction;
    out.farkas_weights = r.farkas_weights;
    out.certificate_residual = r.residual;
    return out;
}

struct EutacticReport {
    bool eutactic = false;
    Eigen::VectorXd weights;       // a_i >= 1 with sum a_i grad_i ~ 0
    Eigen::VectorXd counterexample;  // direction with one-signed pairings
    double residual = 0;
};

inline EutacticReport eutactic_test(const CurveSystem& C, const FNPoint& x) {
    const Eigen::MatrixXd G = length_gradients(C, x);
    const PositiveCombination r = positive_vanishing_combination(G);
    EutacticReport out;
    out.eutactic = r.exists;
    out.weights = r.weights;
    out.counterexample = r.violating_direction;
    out.residual = r.residual;
    return out;
}

enum class MinMembership { interior, boundary_or_member, outside };

inline MinMembership min_membership(const CurveSystem& C, const FNPoint& x) {
    if (joint_lengthening_direction(C, x).feasible) return MinMembership::outside;
    if (eutactic_test(C, x).eutactic) return MinMembership::interior;
    return MinMembership::boundary_or_member;
}

struct CriticalCertificate {
    FNPoint point;
    SystoleSet systole_set;
    bool eutactic = false;
    Eigen::VectorXd positive_combination;  // empty when not eutactic
    Eigen::VectorXd improving_direction;   // empty when eutactic
    int index = 0;
    double residual = 0;
};

inline CriticalCertificate certify_critical_point(const FNPoint& x, double tol = 1e-7) {
    SystoleSet ss = systoles(x, tol);
    {
        // near-ties just outside the tolerance: tighten and retry before
        // declaring ambiguity
        const FuchsianGroup g = build_fuchsian(x);
        const auto widened = enumerate_short_geodesics(g, ss.value + 10 * tol);
        if (widened.size() > ss.curves.size()) {
            const SystoleSet tight = systoles(x, 1e-9);
            const auto widened2 = enumerate_short_geodesics(g, tight.value + 10 * 1e-9);
            if (widened2.size() > tight.curves.size())
                throw AmbiguousSystoleSet(
                    "classes within 10x tolerance of the systole value");
            ss = tight;
        }
    }

    const GradientFrame frame = gradient_frame(ss.curves, x);
    const EutacticReport eu = eutactic_test(ss.curves, x);
    CriticalCertificate cert;
    cert.point = x;
    cert.systole_set = ss;
    cert.eutactic = eu.eutactic;
    cert.index = frame.rank;
    cert.residual = eu.residual;
    if (eu.eutactic)
        cert.positive_combination = eu.weights;
    else
        cert.improving_direction = eu.counterexample;
    return cert;
}

}  // namespace spinelab
