#pragma once

// Equal-length loci E(C, d), their balance classification, and the nearest
// hull face of a direction.

#include <Eigen/Dense>

#include "spinelab/gradients.hpp"
#include "spinelab/lp.hpp"
#include "spinelab/minimize.hpp"

namespace spinelab {

struct LocusPoint {
    FNPoint base;
    CurveSystem curves;
    std::vector<double> offsets;
    double residual = 0;
};

// Gauss-Newton onto {x : L(c_i)(x) + d_i all equal}.
inline LocusPoint locus_project(const FNPoint& x0, const CurveSystem& C,
                                const std::vector<double>& d, int max_iterations = 100) {
    const size_t n = C.size();
    if (n < 2) throw ValidationError("locus needs at least two curves");
    if (d.size() != n) throw ValidationError("locus offsets must match the system");

    FNPoint x = x0;
    for (int it = 0; it < max_iterations; ++it) {
        const FuchsianGroup g = build_fuchsian(x);
        Eigen::VectorXd r(n - 1);
        for (size_t i = 0; i + 1 < n; ++i)
            r(static_cast<long>(i)) =
                (geodesic_length_of_word(C.curves[i].word, g) + d[i]) -
                (geodesic_length_of_word(C.curves[n - 1].word, g) + d[n - 1]);
        if (r.norm() < 1e-8) {
            LocusPoint out;
            out.base = x;
            out.curves = C;
            out.offsets = d;
            out.residual = r.norm();
            return out;
        }
        const Eigen::MatrixXd G = length_gradients(C, x);
        Eigen::MatrixXd J(n - 1, G.cols());
        for (size_t i = 0; i + 1 < n; ++i)
            J.row(static_cast<long>(i)) =
                G.row(static_cast<long>(i)) - G.row(static_cast<long>(n - 1));
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (long i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-8 * std::max(1.0, sv(0))) ++rank;
        if (rank < static_cast<int>(n) - 1)
            throw RankDeficient("constraint gradients dependent (near a generalised "
                                "minimum); rank " + std::to_string(rank));
        const Eigen::VectorXd step = svd.solve(-r);
        std::vector<double> v = x.coords();
        for (long k = 0; k < step.size(); ++k) v[static_cast<size_t>(k)] += step(k);
        try {
            x = FNPoint::from_coords(v, x.genus);
        } catch (const ValidationError&) {
            throw NoConvergence("locus projection left the coordinate domain");
        }
    }
    throw NoConvergence("locus projection did not reach 1e-8");
}

inline std::vector<double> offsets_at(const CurveSystem& C, const FNPoint& x) {
    const FuchsianGroup g = build_fuchsian(x);
    std::vector<double> d;
    double base = 0;
    for (size_t i = 0; i < C.size(); ++i) {
        const double L = geodesic_length_of_word(C.curves[i].word, g);
        if (i == 0) base = L;
        d.push_back(base - L);
    }
    return d;
}

enum class BalanceClass { balanced, semi_balanced, unbalanced };

struct BalanceReport {
    LocusPoint point;
    BalanceClass classification = BalanceClass::unbalanced;
    Eigen::VectorXd witness;        // v_C, or empty when unbalanced
    Eigen::VectorXd hull_weights;   // mu with v_C = G^T mu when it exists
    Eigen::VectorXd infeasibility;  // Farkas side when unbalanced
    double min_hull_weight = 0;
};

// Solve for v_C: equal positive pairings with every gradient, constrained to
// the convex hull of the gradients; classify by the best achievable minimum
// hull coefficient.
inline BalanceReport classify_balance(const LocusPoint& pt, double eps = 1e-6) {
    if (pt.residual >= 1e-8)
        throw PreconditionFailed("balance classification needs an on-locus point");
    const Eigen::MatrixXd G = length_gradients(pt.curves, pt.base);
    const long n = G.rows();
    const Eigen::MatrixXd K = G * G.transpose();  // pairings of hull points

    BalanceReport out;
    out.point = pt;

    // x in Min(C) is balanced outright
    const PositiveCombination eu = positive_vanishing_combination(G);
    if (eu.exists) {
        out.classification = BalanceClass::balanced;
        out.hull_weights = eu.weights / eu.weights.sum();
        out.witness = G.transpose() * out.hull_weights;
        out.min_hull_weight = out.hull_weights.minCoeff();
        return out;
    }

    // feasibility of { mu >= t : sum mu = 1, K mu has equal entries } as a
    // function of t, by bisection
    auto feasible_at = [&](double t) -> std::optional<Eigen::VectorXd> {
        // variables mu' = mu - t >= 0
        Eigen::MatrixXd A(n, n);  // equal-pairing rows + the sum row
        Eigen::VectorXd b(n);
        for (long i = 0; i + 1 < n; ++i) {
            A.row(i) = K.row(i) - K.row(n - 1);
            b(i) = -t * A.row(i).sum();
        }
        A.row(n - 1).setOnes();
        b(n - 1) = 1.0 - t * n;
        if (b(n - 1) < -1e-12) return std::nullopt;
        const LPFeasibility f = lp_equality_feasible(A, b);
        if (!f.feasible) return std::nullopt;
        return Eigen::VectorXd(f.x + Eigen::VectorXd::Constant(n, t));
    };

    const auto at_zero = feasible_at(0.0);
    if (!at_zero) {
        // no equal-rate direction in the hull at all
        out.classification = BalanceClass::unbalanced;
        // keep the Farkas certificate of the t = 0 system for auditing
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        for (long i = 0; i + 1 < n; ++i) A.row(i) = K.row(i) - K.row(n - 1);
        A.row(n - 1).setOnes();
        b(n - 1) = 1.0;
        out.infeasibility = lp_equality_feasible(A, b).farkas;
        return out;
    }

    double lo = 0.0, hi = 1.0 / static_cast<double>(n);
    Eigen::VectorXd best = *at_zero;
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto f = feasible_at(mid);
        if (f) {
            lo = mid;
            best = *f;
        } else {
            hi = mid;
        }
    }
    out.hull_weights = best;
    out.witness = G.transpose() * best;
    out.min_hull_weight = lo;
    if (out.witness.norm() < 1e-10) {
        // 0 in the hull without strict positivity: boundary case
        out.classification = BalanceClass::semi_balanced;
        return out;
    }
    out.classification = lo > eps ? BalanceClass::balanced : BalanceClass::semi_balanced;
    return out;
}

// The proper face of conv{gradients} minimizing angular distance to v,
// returned as the labeling subset.  The optimal scaled point y = G^T mu with
// <v, y> = 1 and minimal norm realizes the smallest angle; its support is
// the face label.
inline std::vector<size_t> nearest_hull_face(const CurveSystem& C, const FNPoint& x,
                                             const Eigen::VectorXd& v) {
    const Eigen::MatrixXd G = length_gradients(C, x);
    const long n = G.rows();
    const Eigen::VectorXd vn = v.normalized();

    // precondition: the ray of v must not pass through the relative interior
    // of the hull (hitting a proper face is fine; that face is the answer)
    {
        const long d = G.cols();
        const double t = 1e-7, smin = 1e-6;
        // mu = t 1 + mu', s = smin + s':  G^T mu - v s = 0, sum mu = 1
        Eigen::MatrixXd A(d + 1, n + 1);
        A.block(0, 0, d, n) = G.transpose();
        A.block(0, n, d, 1) = -v;
        A.row(d).setZero();
        A.row(d).head(n).setOnes();
        Eigen::VectorXd b(d + 1);
        b.head(d) = -(G.transpose() * Eigen::VectorXd::Constant(n, t)) + smin * v;
        b(d) = 1.0 - t * static_cast<double>(n);
        if (lp_equality_feasible(A, b).feasible)
            throw InHull("direction meets the relative interior of the hull");
    }

    const Eigen::VectorXd a = G * vn;  // pairings of hull points with v
    double best_norm2 = kInf;
    std::vector<size_t> best_support;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<long> idx;
        for (long i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        // KKT of min |G_S^T mu|^2 with a_S^T mu = 1: (G_S G_S^T) mu = s a_S
        Eigen::MatrixXd Ks(idx.size(), idx.size());
        Eigen::VectorXd as(idx.size());
        for (size_t p = 0; p < idx.size(); ++p) {
            as(static_cast<long>(p)) = a(idx[p]);
            for (size_t q = 0; q < idx.size(); ++q)
                Ks(static_cast<long>(p), static_cast<long>(q)) = G.row(idx[p]).dot(G.row(idx[q]));
        }
        const Eigen::VectorXd mu0 =
            Ks.completeOrthogonalDecomposition().pseudoInverse() * as;
        const double denom = as.dot(mu0);
        if (denom <= 1e-12) continue;  // cannot reach pairing 1 with this face
        const Eigen::VectorXd mu = mu0 / denom;
        if (mu.minCoeff() < -1e-9) continue;
        const double nrm2 = mu.dot(Ks * mu);
        if (nrm2 < best_norm2 - 1e-12) {
            best_norm2 = nrm2;
            best_support.clear();
            for (size_t p = 0; p < idx.size(); ++p)
                if (mu(static_cast<long>(p)) > 1e-9)
                    best_support.push_back(static_cast<size_t>(idx[p]));
        }
    }
    if (best_support.empty())
        throw NumericError("no hull face pairs positively with the direction");
    std::sort(best_support.begin(), best_support.end());
    return best_support;
}

}  // namespace spinelab
