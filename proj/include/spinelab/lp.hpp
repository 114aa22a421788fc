#pragma once

// Dense two-phase simplex with Bland's rule, sized for feasibility problems
// with at most a few dozen constraints, emitting both feasibility witnesses
// and Farkas certificates so that every classification downstream is
// auditable.
//
// Canonical problem:  find x >= 0 with  A x = b  (phase 1 only; all callers
// are feasibility questions).  Infeasibility returns y with  y^T A <= 0
// componentwise and  y^T b > 0.
//
// On top of that:
//   * feasible_point(G):      v with G v >= 1        (joint lengthening)
//   * positive_combination(G): a >= 1 with G^T a = 0  (eutacticity)
// with the dual certificate of the failing side in each case.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "spinelab/errors.hpp"

namespace spinelab {

struct LPFeasibility {
    bool feasible = false;
    Eigen::VectorXd x;        // witness when feasible
    Eigen::VectorXd farkas;   // y with y^T A <= 0, y^T b > 0 when infeasible
    double residual = 0;      // certificate residual, for auditing
};

// Phase-1 simplex for {x >= 0 : A x = b}; rows are made b >= 0 first and the
// Farkas vector is mapped back to the caller's row signs.
inline LPFeasibility lp_equality_feasible(const Eigen::MatrixXd& A0,
                                          const Eigen::VectorXd& b0,
                                          double tol = 1e-11) {
    Eigen::MatrixXd A = A0;
    Eigen::VectorXd b = b0;
    const long m = A.rows(), n = A.cols();
    Eigen::VectorXd row_sign = Eigen::VectorXd::Ones(m);
    for (long i = 0; i < m; ++i)
        if (b(i) < 0) {
            A.row(i) = -A.row(i);
            b(i) = -b(i);
            row_sign(i) = -1;
        }

    // tableau over columns [x | artificials], objective: minimize sum of
    // artificials
    Eigen::MatrixXd T(m + 1, n + m + 1);
    T.setZero();
    T.block(0, 0, m, n) = A;
    T.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
    T.block(0, n + m, m, 1) = b;
    for (long j = 0; j < n; ++j) T(m, j) = -A.col(j).sum();
    T(m, n + m) = -b.sum();

    std::vector<long> basis(m);
    for (long i = 0; i < m; ++i) basis[i] = n + i;

    const long maxit = 8000;
    for (long it = 0; it < maxit; ++it) {
        // Bland: smallest-index entering column with negative reduced cost
        long enter = -1;
        for (long j = 0; j < n + m; ++j)
            if (T(m, j) < -tol) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        long leave = -1;
        double best = 0;
        for (long i = 0; i < m; ++i) {
            if (T(i, enter) > tol) {
                const double ratio = T(i, n + m) / T(i, enter);
                if (leave < 0 || ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave < 0)
            throw LPNumerics("phase-1 objective unbounded; malformed tableau");
        // pivot
        T.row(leave) /= T(leave, enter);
        for (long i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = T(i, enter);
            if (f != 0.0) T.row(i) -= f * T.row(leave);
        }
        basis[leave] = enter;
        if (it + 1 == maxit) throw LPNumerics("simplex iteration budget exhausted");
    }

    LPFeasibility out;
    const double objective = -T(m, n + m);
    if (objective <= 1e-9) {
        // artificials stuck at zero level in a degenerate basis are harmless
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (long i = 0; i < m; ++i)
            if (basis[i] < n) x(basis[i]) = T(i, n + m);
        // refine on the support: tableau arithmetic loses digits over many
        // pivots, a least-squares resolve on the basic columns restores them
        {
            std::vector<long> sup;
            for (long i = 0; i < m; ++i)
                if (basis[i] < n) sup.push_back(basis[i]);
            std::sort(sup.begin(), sup.end());
            sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
            if (!sup.empty()) {
                Eigen::MatrixXd As(m, static_cast<long>(sup.size()));
                for (size_t j = 0; j < sup.size(); ++j)
                    As.col(static_cast<long>(j)) = A0.col(sup[j]);
                const Eigen::VectorXd xs =
                    As.colPivHouseholderQr().solve(b0);
                if (xs.minCoeff() > -1e-9) {
                    Eigen::VectorXd xr = Eigen::VectorXd::Zero(n);
                    for (size_t j = 0; j < sup.size(); ++j)
                        xr(sup[j]) = std::max(xs(static_cast<long>(j)), 0.0);
                    if ((A0 * xr - b0).norm() <= (A0 * x - b0).norm()) x = xr;
                }
            }
        }
        out.feasible = true;
        out.x = x;
        out.residual = (A0 * x - b0).norm();
        if (out.residual > 1e-8)
            throw LPNumerics("feasible witness residual " + std::to_string(out.residual));
        return out;
    }

    // Infeasible: the phase-1 dual is the Farkas vector.  The artificial
    // column i has cost 1 and constraint column e_i, so its terminal reduced
    // cost is 1 - y_i; map back through the row flips.
    Eigen::VectorXd y(m);
    for (long i = 0; i < m; ++i) y(i) = row_sign(i) * (1.0 - T(m, n + i));
    const double ytb = y.dot(b0);
    const double worst = (A0.transpose() * y).maxCoeff();
    if (!(ytb > 1e-10 && worst <= 1e-8))
        throw LPNumerics("Farkas certificate failed: y^Tb=" + std::to_string(ytb) +
                         " max(A^Ty)=" + std::to_string(worst));
    out.feasible = false;
    out.farkas = y;
    out.residual = std::max(0.0, worst);
    return out;
}

// {v : G v >= 1}, v free.  Infeasible <=> 0 is in the convex hull of the
// rows of G; the certificate is the convex combination.
struct JointLengthening {
    bool feasible = false;
    Eigen::VectorXd direction;      // normalized witness
    Eigen::VectorXd farkas_weights; // lambda >= 0, sum 1, lambda^T G ~ 0
    double residual = 0;
};

inline JointLengthening joint_lengthening_lp(const Eigen::MatrixXd& G) {
    const long n = G.rows(), d = G.cols();
    // G(v+ - v-) - s = 1, v+-, s >= 0
    Eigen::MatrixXd A(n, 2 * d + n);
    A.block(0, 0, n, d) = G;
    A.block(0, d, n, d) = -G;
    A.block(0, 2 * d, n, n) = -Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
    const LPFeasibility f = lp_equality_feasible(A, b);

    JointLengthening out;
    if (f.feasible) {
        Eigen::VectorXd v = f.x.segment(0, d) - f.x.segment(d, d);
        out.feasible = true;
        out.direction = v.normalized();
        out.residual = 0;
        const Eigen::VectorXd pair = G * v;
        if (pair.minCoeff() < 1 - 1e-7)
            throw LPNumerics("lengthening witness violates G v >= 1");
        return out;
    }
    // y^T A <= 0 means G^T y = 0 (both signs) and y >= 0 (from the -I block)
    Eigen::VectorXd lam = f.farkas;
    for (long i = 0; i < n; ++i) lam(i) = std::max(lam(i), 0.0);
    const double s = lam.sum();
    if (s <= 0) throw LPNumerics("degenerate Farkas weights");
    lam /= s;
    out.feasible = false;
    out.farkas_weights = lam;
    out.residual = (G.transpose() * lam).norm();
    if (out.residual > 1e-8)
        throw LPNumerics("Farkas combination residual " + std::to_string(out.residual));
    return out;
}

// {a >= 1 : G^T a = 0} via a = 1 + s.  The alternative is a direction with
// all pairings of one sign, at least one nonzero (Stiemke).  A positive
// `slack` relaxes the vanishing condition to |G^T a|_inf <= slack, for use at
// points known only to optimizer accuracy.
struct PositiveCombination {
    bool exists = false;
    Eigen::VectorXd weights;               // a >= 1 with ||G^T a|| tiny
    Eigen::VectorXd violating_direction;   // v with G v >= 0, sum(G v) > 0
    double residual = 0;
};

inline PositiveCombination positive_vanishing_combination(const Eigen::MatrixXd& G,
                                                          double slack = 0.0,
                                                          double weight_cap = 20.0) {
    const long n = G.rows(), d = G.cols();
    PositiveCombination out;
    if (slack > 0) {
        // a = 1 + alpha, alpha in [0, cap-1] (the cap keeps huge weights from
        // laundering the slack budget):
        //   G^T alpha + s+ - s- = -G^T 1;  s+ + u+ = slack;  s- + u- = slack;
        //   alpha + beta = cap - 1
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3 * d + n, 2 * n + 4 * d);
        Eigen::VectorXd b(3 * d + n);
        A.block(0, 0, d, n) = G.transpose();
        A.block(0, n, d, d) = Eigen::MatrixXd::Identity(d, d);
        A.block(0, n + d, d, d) = -Eigen::MatrixXd::Identity(d, d);
        A.block(d, n, d, d) = Eigen::MatrixXd::Identity(d, d);
        A.block(d, n + 2 * d, d, d) = Eigen::MatrixXd::Identity(d, d);
        A.block(2 * d, n + d, d, d) = Eigen::MatrixXd::Identity(d, d);
        A.block(2 * d, n + 3 * d, d, d) = Eigen::MatrixXd::Identity(d, d);
        A.block(3 * d, 0, n, n) = Eigen::MatrixXd::Identity(n, n);
        A.block(3 * d, n + 4 * d, n, n) = Eigen::MatrixXd::Identity(n, n);
        b.segment(0, d) = -G.transpose() * Eigen::VectorXd::Ones(n);
        b.segment(d, d).setConstant(slack);
        b.segment(2 * d, d).setConstant(slack);
        b.segment(3 * d, n).setConstant(weight_cap - 1.0);
        const LPFeasibility f = lp_equality_feasible(A, b);
        out.exists = f.feasible;
        if (f.feasible) {
            out.weights = f.x.segment(0, n) + Eigen::VectorXd::Ones(n);
            out.residual = (G.transpose() * out.weights).lpNorm<Eigen::Infinity>();
        }
        return out;
    }

    Eigen::MatrixXd A = G.transpose();          // d x n
    const Eigen::VectorXd b = -G.transpose() * Eigen::VectorXd::Ones(n);
    const LPFeasibility f = lp_equality_feasible(A, b);

    if (f.feasible) {
        out.exists = true;
        out.weights = f.x + Eigen::VectorXd::Ones(n);
        out.residual = (G.transpose() * out.weights).norm();
        if (out.residual > 1e-6)
            throw LPNumerics("positive combination residual " +
                             std::to_string(out.residual));
        return out;
    }
    // y with y^T G^T <= 0 and y^T b > 0, i.e. v := -y has G v >= 0 and
    // 1^T G v > 0
    Eigen::VectorXd v = -f.farkas;
    const Eigen::VectorXd pair = G * v;
    if (pair.minCoeff() < -1e-8 || pair.sum() <= 1e-10)
        throw LPNumerics("violating direction certificate failed");
    out.exists = false;
    out.violating_direction = v.normalized();
    out.residual = std::max(0.0, -pair.minCoeff());
    return out;
}

}  // namespace spinelab
