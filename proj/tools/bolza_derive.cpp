// One-time derivation of the frozen constants in bolza.hpp.
//
// Stage 1: locate the systole maximum in Fenchel-Nielsen coordinates by
//          Nelder-Mead on -f_sys (the Bolza surface is the global maximum in
//          genus 2, so the basin is found from a rough symmetric guess).
// Stage 2: harvest the near-systolic words there and polish the point by
//          Gauss-Newton so every one of them has length exactly
//          2 acosh(1 + sqrt 2).
// Stage 3: print the coordinates, the systole words, and the spectrum
//          cross-check against the octagon oracle.
// Stage 4: derive the six-curve figure point: among the subsets of the
//          twelve systoles whose equal-length stratum leaves the maximum
//          (--scan lists them all), walk the stratum of the frozen subset to
//          the zero of the common-length derivative, then polish against the
//          closed forms 2 acosh 2 / 2 acosh 17 that the walk reveals.
//
// Run:  ./bolza_derive [--quick] [--scan]

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinelab/bolza.hpp"
#include "spinelab/fenchel_nielsen.hpp"
#include "spinelab/geodesics.hpp"
#include "spinelab/gradients.hpp"
#include "spinelab/intersections.hpp"

using namespace spinelab;

namespace {

double fsys_objective(const std::vector<double>& v) {
    try {
        FNPoint x = FNPoint::from_coords(v);
        const FuchsianGroup g = build_fuchsian(x);
        return -systole_value(g, 6.5);
    } catch (const std::exception&) {
        return 1e6;  // outside the domain / budget
    }
}

// Compact Nelder-Mead; good enough to land in the Bolza basin.
std::vector<double> nelder_mead(std::function<double(const std::vector<double>&)> f,
                                std::vector<double> x0, double spread, int iters) {
    const size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> val(n + 1);
    for (size_t i = 0; i < n; ++i) simplex[i + 1][i] += spread;
    for (size_t i = 0; i <= n; ++i) val[i] = f(simplex[i]);

    for (int it = 0; it < iters; ++it) {
        std::vector<size_t> order(n + 1);
        for (size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return val[a] < val[b]; });
        const size_t best = order[0], worst = order[n], second = order[n - 1];
        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / double(n);
        auto combine = [&](double t) {
            std::vector<double> p(n);
            for (size_t k = 0; k < n; ++k)
                p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            return p;
        };
        const auto refl = combine(-1.0);
        const double fr = f(refl);
        if (fr < val[best]) {
            const auto exp_ = combine(-2.0);
            const double fe = f(exp_);
            if (fe < fr) {
                simplex[worst] = exp_;
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
            const double fc = f(con);
            if (fc < val[worst]) {
                simplex[worst] = con;
                val[worst] = fc;
            } else {
                for (size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (size_t k = 0; k < n; ++k)
                        simplex[i][k] = 0.5 * (simplex[i][k] + simplex[best][k]);
                    val[i] = f(simplex[i]);
                }
            }
        }
        if (it % 25 == 0) std::printf("  nm iter %4d  f_sys = %.9f\n", it, -val[order[0]]);
    }
    size_t best = 0;
    for (size_t i = 1; i <= n; ++i)
        if (val[i] < val[best]) best = i;
    std::printf("  nm done, f_sys = %.12f\n", -val[best]);
    return simplex[best];
}

// Least-squares polish: drive L(w_i)(x) - l0 to zero for all harvested words.
std::vector<double> gauss_newton_equalize(const std::vector<Word>& words,
                                          std::vector<double> v, double target,
                                          int iters) {
    const size_t n = v.size();
    auto residual_norm = [&](const std::vector<double>& p) {
        const FuchsianGroup g = build_fuchsian(FNPoint::from_coords(p));
        double rn = 0;
        for (const Word& w : words) {
            const double r = geodesic_length_of_word(w, g) - target;
            rn += r * r;
        }
        return std::sqrt(rn);
    };
    for (int it = 0; it < iters; ++it) {
        const FuchsianGroup g = build_fuchsian(FNPoint::from_coords(v));
        std::vector<double> r(words.size());
        double rn = 0;
        for (size_t i = 0; i < words.size(); ++i) {
            r[i] = geodesic_length_of_word(words[i], g) - target;
            rn += r[i] * r[i];
        }
        std::printf("  gn iter %d residual %.3e\n", it, std::sqrt(rn));
        if (std::sqrt(rn) < 1e-13) break;
        // numeric Jacobian
        std::vector<std::vector<double>> J(words.size(), std::vector<double>(n));
        const double h = 1e-6;
        for (size_t k = 0; k < n; ++k) {
            std::vector<double> vp = v, vm = v;
            vp[k] += h;
            vm[k] -= h;
            const FuchsianGroup gp = build_fuchsian(FNPoint::from_coords(vp));
            const FuchsianGroup gm = build_fuchsian(FNPoint::from_coords(vm));
            for (size_t i = 0; i < words.size(); ++i)
                J[i][k] = (geodesic_length_of_word(words[i], gp) -
                           geodesic_length_of_word(words[i], gm)) /
                          (2 * h);
        }
        // normal equations (tiny); solve (J^T J) d = -J^T r by Gauss elim
        std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = 0; q < n; ++q)
                for (size_t i = 0; i < words.size(); ++i) A[p][q] += J[i][p] * J[i][q];
            for (size_t i = 0; i < words.size(); ++i) A[p][n] -= J[i][p] * r[i];
        }
        for (size_t p = 0; p < n; ++p) {
            size_t piv = p;
            for (size_t q = p + 1; q < n; ++q)
                if (std::abs(A[q][p]) > std::abs(A[piv][p])) piv = q;
            std::swap(A[p], A[piv]);
            for (size_t q = p + 1; q < n; ++q) {
                const double m = A[q][p] / A[p][p];
                for (size_t k = p; k <= n; ++k) A[q][k] -= m * A[p][k];
            }
        }
        std::vector<double> d(n);
        for (size_t p = n; p-- > 0;) {
            double s = A[p][n];
            for (size_t q = p + 1; q < n; ++q) s -= A[p][q] * d[q];
            d[p] = s / A[p][p];
        }
        // damped acceptance: halve the step until it improves
        double step = 1.0;
        const double before = std::sqrt(rn);
        bool accepted = false;
        while (step > 1e-4) {
            std::vector<double> cand = v;
            bool bad = false;
            for (size_t k = 0; k < n; ++k) {
                cand[k] += step * d[k];
                if (!std::isfinite(cand[k])) bad = true;
            }
            if (!bad) {
                try {
                    if (residual_norm(cand) < before) {
                        v = cand;
                        accepted = true;
                        break;
                    }
                } catch (const std::exception&) {
                }
            }
            step /= 2;
        }
        if (!accepted) {
            std::printf("  gn stalled\n");
            break;
        }
    }
    return v;
}

// Coarse scan + staged Nelder-Mead; returns the best point found.
std::vector<double> locate_maximum(bool quick) {
    const double l0 = bolza_systole_length();
    std::vector<double> best;
    double best_f = -1e9;
    auto consider = [&](std::vector<double> v) {
        const double f = -fsys_objective(v);
        if (f > best_f) {
            best_f = f;
            best = std::move(v);
        }
    };
    // coarse symmetric grid over twists and the separating length
    for (double l12 : {2.7, bolza_systole_length()})
        for (double l3 : {4.2, 4.9, 5.6})
            for (double t : {0.0, 0.25, 0.5, 0.75})
                for (double s : {0.0, 0.25, 0.5, 0.75})
                    consider({l12, l12, l3, t * l12, t * l12, s * l3});
    std::printf("  grid best f_sys = %.9f\n", best_f);

    for (double spread : {0.4, 0.12, 0.03, 0.008}) {
        best = nelder_mead(fsys_objective, best, spread, quick ? 100 : 250);
        std::printf("  after spread %.3f: f_sys = %.12f\n", spread,
                    -fsys_objective(best));
    }
    (void)l0;
    return best;
}

FNPoint project_equal_lengths(const CurveSystem& sys, FNPoint x, int iters = 80) {
    const size_t n = sys.curves.size();
    for (int it = 0; it < iters; ++it) {
        const FuchsianGroup g = build_fuchsian(x);
        Eigen::VectorXd r(n - 1);
        std::vector<double> L(n);
        for (size_t i = 0; i < n; ++i)
            L[i] = geodesic_length_of_word(sys.curves[i].word, g);
        for (size_t i = 0; i + 1 < n; ++i) r(static_cast<long>(i)) = L[i] - L[n - 1];
        if (r.norm() < 1e-13) break;
        Eigen::MatrixXd G = length_gradients(sys, x);
        Eigen::MatrixXd J(n - 1, 6);
        for (size_t i = 0; i + 1 < n; ++i)
            J.row(static_cast<long>(i)) = G.row(static_cast<long>(i)) - G.row(static_cast<long>(n - 1));
        Eigen::VectorXd d = J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-r);
        std::vector<double> v = x.coords();
        for (int k = 0; k < 6; ++k) v[k] += d(k);
        x = FNPoint::from_coords(v);
    }
    return x;
}

// Directions at the maximum along which a subset's lengths stay equal while
// every other systole lengthens strictly faster: the subset labels a stratum
// leaving the maximum.
void scan_adjacent_subsets() {
    const auto [p, all_sys] = bolza_maximum();
    CurveSystem all;
    all.genus = 2;
    all.curves = bolza_maximum_systoles();
    const Eigen::MatrixXd G = length_gradients(all, p);
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int start, int need) {
        if (need == 0) {
            Eigen::MatrixXd J(5, 6);
            for (int i = 0; i < 5; ++i) J.row(i) = G.row(cur[i]) - G.row(cur[5]);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
            int rank = 0;
            for (int i = 0; i < 5; ++i)
                if (svd.singularValues()(i) > 1e-7) ++rank;
            const int nullity = 6 - rank;
            const Eigen::MatrixXd N = svd.matrixV().rightCols(nullity);
            bool in_s[12] = {};
            for (int i : cur) in_s[i] = true;
            double best_gap = -1e9;
            const int samples = nullity == 1 ? 2 : 720 * (nullity - 1);
            for (int t = 0; t < samples; ++t) {
                Eigen::VectorXd c(nullity);
                if (nullity == 1)
                    c(0) = t == 0 ? 1 : -1;
                else {
                    c.setZero();
                    c(0) = std::cos(t * M_PI / 360.0);
                    c(1) = std::sin(t * M_PI / 360.0);
                    if (nullity > 2) c(2) = std::cos(t * 0.37);
                }
                Eigen::VectorXd v = N * c;
                v.normalize();
                const double r = G.row(cur[0]).dot(v);
                double gap = 1e9;
                for (int o = 0; o < 12; ++o)
                    if (!in_s[o]) gap = std::min(gap, G.row(o).dot(v) - r);
                best_gap = std::max(best_gap, gap);
            }
            if (best_gap > 1e-6) {
                std::printf("  adjacent subset {");
                for (int i : cur) std::printf("%d ", i);
                std::printf("} gap %.4f\n", best_gap);
            }
            return;
        }
        for (int i = start; i <= 12 - need; ++i) {
            cur.push_back(i);
            rec(i + 1, need - 1);
            cur.pop_back();
        }
    };
    rec(0, 6);
}

// Walk the six-curve stratum from the maximum to the zero of the
// common-length derivative.
void derive_preset() {
    const FNPoint p = bolza_maximum_point();
    CurveSystem sys;
    sys.genus = 2;
    sys.curves = bolza_six_curve_words();

    auto tangent_rate = [&](const FNPoint& x, const Eigen::VectorXd* ref) {
        const Eigen::MatrixXd G = length_gradients(sys, x);
        Eigen::MatrixXd J(5, 6);
        for (int i = 0; i < 5; ++i) J.row(i) = G.row(i) - G.row(5);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
        Eigen::VectorXd v = svd.matrixV().col(5);
        if (ref && v.dot(*ref) < 0) v = -v;
        return std::make_pair(v, G);
    };

    // stratum direction at the maximum: equal rates on the six, the other
    // systoles lengthening
    CurveSystem all;
    all.genus = 2;
    all.curves = bolza_maximum_systoles();
    const Eigen::MatrixXd Gall = length_gradients(all, p);
    Eigen::MatrixXd J(5, 6);
    auto idx_of = [&](const CurveClass& c) {
        for (size_t i = 0; i < all.curves.size(); ++i)
            if (all.curves[i].word == c.word) return i;
        throw std::runtime_error("subset curve not among the twelve");
    };
    for (int i = 0; i < 5; ++i)
        J.row(i) = Gall.row(static_cast<long>(idx_of(sys.curves[static_cast<size_t>(i)]))) -
                   Gall.row(static_cast<long>(idx_of(sys.curves[5])));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    Eigen::VectorXd dir = svd.matrixV().col(5);
    if (Gall.row(static_cast<long>(idx_of(sys.curves[0]))).dot(dir) > 0) dir = -dir;

    std::vector<double> v0 = p.coords();
    for (int k = 0; k < 6; ++k) v0[k] += 0.02 * dir(k);
    FNPoint x = project_equal_lengths(sys, FNPoint::from_coords(v0));
    Eigen::VectorXd ref = dir;
    double prev_r = 0;
    FNPoint prev = x;
    for (int step = 0; step < 600; ++step) {
        auto [v, G] = tangent_rate(x, &ref);
        ref = v;
        const double r = G.row(0).dot(v);
        if (step > 0 && r * prev_r < 0) {
            FNPoint lo = prev, hi = x;
            double rlo = prev_r;
            for (int b = 0; b < 70; ++b) {
                std::vector<double> mid(6);
                for (int k = 0; k < 6; ++k)
                    mid[k] = 0.5 * (lo.coords()[k] + hi.coords()[k]);
                FNPoint m = project_equal_lengths(sys, FNPoint::from_coords(mid));
                auto [vm, Gm] = tangent_rate(m, &ref);
                const double rm = Gm.row(0).dot(vm);
                if (rm * rlo <= 0)
                    hi = m;
                else {
                    lo = m;
                    rlo = rm;
                }
            }
            const FNPoint q = lo;
            std::printf("  six-curve critical point:");
            for (double c : q.coords()) std::printf(" %.15f", c);
            std::printf("\n");
            const FuchsianGroup g = build_fuchsian(q);
            const double common = geodesic_length_of_word(sys.curves[0].word, g);
            std::printf("  common length %.15f  (2 acosh 2 = %.15f)\n", common,
                        2 * std::acosh(2.0));
            std::printf("  cosh(l3/2) at the point: %.12f (frozen as 17)\n",
                        std::cosh(q.lengths[2] / 2));
            const Eigen::MatrixXd Gq = length_gradients(sys, q);
            Eigen::JacobiSVD<Eigen::MatrixXd> s2(Gq);
            std::printf("  six-gradient singular values:");
            for (int i = 0; i < 6; ++i) std::printf(" %.2e", s2.singularValues()(i));
            std::printf("\n");
            return;
        }
        prev = x;
        prev_r = r;
        std::vector<double> vv = x.coords();
        for (int k = 0; k < 6; ++k) vv[k] += 0.02 * ref(k);
        x = project_equal_lengths(sys, FNPoint::from_coords(vv));
    }
    std::printf("  stratum walk found no critical point\n");
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false, scan = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;
        if (std::strcmp(argv[i], "--scan") == 0) scan = true;
    }
    const double l0 = bolza_systole_length();
    std::printf("target systole length l0 = %.15f\n", l0);

    std::printf("== oracle spectrum (octagon group) ==\n");
    const FuchsianGroup oracle = bolza_octagon_group();
    for (const auto& line : numeric_length_spectrum(oracle, quick ? 4.0 : 5.2))
        std::printf("  length %.12f  x%d\n", line.length, line.multiplicity);

    std::printf("== stage 1: locate the systole maximum ==\n");
    std::vector<double> v = locate_maximum(quick);

    std::printf("== stage 2: harvest near-systoles and polish ==\n");
    {
        const FuchsianGroup g = build_fuchsian(FNPoint::from_coords(v));
        const auto shorts = enumerate_short_geodesics(g, systole_value(g, 6.5) + 0.12);
        std::vector<Word> words;
        for (const auto& s : shorts) words.push_back(s.curve.word);
        std::printf("  %zu near-systolic classes\n", words.size());
        v = gauss_newton_equalize(words, v, l0, 40);
    }

    std::printf("== result ==\n");
    std::printf("  lengths = {%.17g, %.17g, %.17g}\n", v[0], v[1], v[2]);
    std::printf("  twists  = {%.17g, %.17g, %.17g}\n", v[3], v[4], v[5]);

    const FNPoint x = FNPoint::from_coords(v);
    const FuchsianGroup g = build_fuchsian(x);
    const auto sys = enumerate_short_geodesics(g, l0 + 1e-6);
    std::printf("  systole classes at the point (count %zu):\n", sys.size());
    for (const auto& s : sys)
        std::printf("    %-28s length %.15f\n", word_to_string(s.curve.word, 2).c_str(),
                    s.length);

    std::printf("== spectrum cross-check (FN side vs oracle) ==\n");
    const double cutoff = quick ? 4.0 : 5.2;
    const auto fn_spec = numeric_length_spectrum(g, cutoff);
    const auto or_spec = numeric_length_spectrum(oracle, cutoff);
    double worst = 0;
    const size_t m = std::min(fn_spec.size(), or_spec.size());
    for (size_t i = 0; i < m; ++i) {
        worst = std::max(worst, std::abs(fn_spec[i].length - or_spec[i].length));
        if (fn_spec[i].multiplicity != or_spec[i].multiplicity)
            std::printf("  MULTIPLICITY MISMATCH at %.6f: %d vs %d\n", fn_spec[i].length,
                        fn_spec[i].multiplicity, or_spec[i].multiplicity);
    }
    std::printf("  %zu vs %zu lines, worst length deviation %.3e\n", fn_spec.size(),
                or_spec.size(), worst);

    if (scan) {
        std::printf("== subsets labelling strata adjacent to the maximum ==\n");
        scan_adjacent_subsets();
    }

    std::printf("== stage 4: six-curve figure point ==\n");
    derive_preset();
    return 0;
}
