#pragma once

// Length gradients in the Fenchel-Nielsen chart.
//
// All gradients, hulls and feasibility problems downstream use the Euclidean
// structure on (lengths, twists); Weil-Petersson and the adapted metric of
// the balanced/semi-balanced theory are out of scope by design, so descent
// convexity is never assumed, only smoothness (uniqueness of minima is
// checked by multi-start instead).
//
// Derivatives are central differences with Richardson extrapolation and an
// adaptive step; twist components can additionally be cross-checked against
// the twist-derivative cosine sum over crossings with the pants curve
// ("twist_checked" scheme).

#include <Eigen/Dense>
#include <vector>

#include "spinelab/errors.hpp"
#include "spinelab/fenchel_nielsen.hpp"
#include "spinelab/intersections.hpp"

namespace spinelab {

enum class GradientScheme { central_fd, twist_checked };

// Richardson-extrapolated central difference of a scalar function of one FN
// coordinate; f is evaluated at the shifted coordinate vectors.
template <class F>
double fd_derivative(F&& f, std::vector<double> coords, size_t k,
                     double target_error = 1e-7) {
    double h = 1e-4;
    double best = 0, best_err = kInf;
    for (int refine = 0; refine < 4; ++refine) {
        auto eval = [&](double step) {
            std::vector<double> vp = coords, vm = coords;
            vp[k] += step;
            vm[k] -= step;
            return (f(vp) - f(vm)) / (2 * step);
        };
        const double d1 = eval(h);
        const double d2 = eval(h / 2);
        const double extrap = (4 * d2 - d1) / 3;
        const double err = std::abs(extrap - d2);
        if (err < best_err) {
            best = extrap;
            best_err = err;
        }
        if (best_err < target_error) return best;
        if (h <= 1e-6 + 1e-15) break;
        h = std::max(h / 4, 1e-6);
    }
    if (best_err >= target_error)
        throw StepUnderflow("derivative did not stabilize to " +
                            std::to_string(target_error));
    return best;
}

// Gradient rows for every curve of a system at once (shares the stencil's
// group builds).  Rows are ordered like the system.
inline Eigen::MatrixXd length_gradients(const CurveSystem& system, const FNPoint& x) {
    const size_t n = system.curves.size();
    const size_t dim = x.dim();
    const std::vector<double> coords = x.coords();
    Eigen::MatrixXd grad(n, dim);

    for (size_t k = 0; k < dim; ++k) {
        double h = 1e-4;
        std::vector<double> err(n, kInf);
        std::vector<double> val(n, 0.0);
        for (int refine = 0; refine < 4; ++refine) {
            auto lengths_at = [&](double step) {
                std::vector<double> v = coords;
                v[k] += step;
                const FuchsianGroup g = build_fuchsian(FNPoint::from_coords(v, x.genus));
                std::vector<double> out(n);
                for (size_t i = 0; i < n; ++i)
                    out[i] = geodesic_length_of_word(system.curves[i].word, g);
                return out;
            };
            const auto fp1 = lengths_at(h), fm1 = lengths_at(-h);
            const auto fp2 = lengths_at(h / 2), fm2 = lengths_at(-h / 2);
            bool all_ok = true;
            for (size_t i = 0; i < n; ++i) {
                const double d1 = (fp1[i] - fm1[i]) / (2 * h);
                const double d2 = (fp2[i] - fm2[i]) / h;
                const double extrap = (4 * d2 - d1) / 3;
                const double e = std::abs(extrap - d2);
                if (e < err[i]) {
                    err[i] = e;
                    val[i] = extrap;
                }
                all_ok = all_ok && err[i] < 1e-7;
            }
            if (all_ok) break;
            if (h <= 1e-6 + 1e-15) break;
            h = std::max(h / 4, 1e-6);
        }
        for (size_t i = 0; i < n; ++i) {
            if (err[i] >= 1e-7)
                throw StepUnderflow("gradient of '" + system.curves[i].id +
                                    "' unstable in coordinate " + std::to_string(k));
            grad(static_cast<long>(i), static_cast<long>(k)) = val[i];
        }
    }
    return grad;
}

inline Eigen::VectorXd length_gradient(const CurveClass& c, const FNPoint& x,
                                       GradientScheme scheme = GradientScheme::central_fd);

// Twist-derivative cosine sum: dL(c)/dtau_k equals the sum over crossings of
// c with pants curve k of cos(theta), theta the counterclockwise angle from
// the pants curve's tangent line to c's tangent line.  The sign convention
// matches the twist orientation of the construction (verified by the
// twist_checked scheme and the gradient tests).
inline double wolpert_twist_sum(const CurveClass& c, size_t pants_index,
                                const MetricContext& ctx_pants_and_curve) {
    const auto& ctx = ctx_pants_and_curve;
    const RealizedCurve& pc = ctx.realized[pants_index];
    const RealizedCurve& cc = ctx.realized.back();
    (void)c;
    if (conjugacy_canonical(pc.root, ctx.group.genus) ==
        conjugacy_canonical(cc.root, ctx.group.genus))
        return 0.0;  // twisting along the curve itself leaves its length fixed
    const auto crossings = axis_crossings(pc, pants_index, cc, 99, ctx.group);
    double sum = 0;
    for (const Crossing& cr : crossings) {
        // unoriented ccw angle from the pants curve line to the curve line
        double theta = cr.sign > 0 ? cr.angle : M_PI - cr.angle;
        sum += std::cos(theta);
    }
    return sum;
}

struct GradientFrame {
    FNPoint base;
    CurveSystem curves;
    Eigen::MatrixXd gradients;   // n x (6g-6)
    int rank = 0;
    Eigen::MatrixXd span_basis;  // orthonormal rows spanning the row space

    static constexpr double kRankTolerance = 1e-8;
};

inline GradientFrame gradient_frame(const CurveSystem& system, const FNPoint& x) {
    GradientFrame f;
    f.base = x;
    f.curves = system;
    f.gradients = length_gradients(system, x);
    for (long i = 0; i < f.gradients.rows(); ++i)
        if (f.gradients.row(i).norm() <= 0)
            throw NumericError("zero-length gradient row");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(f.gradients,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double tol = GradientFrame::kRankTolerance * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int r = 0;
    for (long i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++r;
    f.rank = r;
    f.span_basis = svd.matrixV().leftCols(r).transpose();
    return f;
}

// Single-curve gradient; twist_checked verifies the twist components against
// the cosine sums to 1e-4 before returning.
inline Eigen::VectorXd length_gradient(const CurveClass& c, const FNPoint& x,
                                       GradientScheme scheme) {
    CurveSystem sys;
    sys.genus = x.genus;
    sys.curves = {c};
    const Eigen::MatrixXd g = length_gradients(sys, x);
    Eigen::VectorXd row = g.row(0);
    if (scheme == GradientScheme::twist_checked) {
        const auto pcs = pants_curves(x.genus);
        CurveSystem joint;
        joint.genus = x.genus;
        joint.curves = pcs;
        joint.curves.push_back(c);
        const MetricContext ctx = MetricContext::make(joint, x);
        const size_t npants = pcs.size();
        for (size_t k = 0; k < npants; ++k) {
            const double cosine = wolpert_twist_sum(c, k, ctx);
            const double fd = row(static_cast<long>(npants + k));
            if (std::abs(cosine - fd) > 1e-4)
                throw NumericError("twist gradient of '" + c.id + "' disagrees with the "
                                   "cosine sum: fd=" + std::to_string(fd) +
                                   " cos=" + std::to_string(cosine));
        }
    }
    return row;
}

}  // namespace spinelab
