#pragma once

// Geometric intersection numbers by counting transverse crossings of
// geodesic-axis translates.
//
// For curves c1, c2 with primitive holonomies W1, W2, crossings of the two
// closed geodesics correspond to translate axes u Axis(W2) crossing the
// fundamental segment S1 = {params [0, L1)} of Axis(W1).  Conjugators u are
// enumerated by a per-pair breadth-first search pruned by displacement of a
// marked point of Axis(W2) relative to the segment midpoint: a crossing at
// y in S1 admits a representative u with
//     d(u q2, mid(S1)) <= L1/2 + L2/2,
// q2 the point of Axis(W2) nearest to mid(S1).  The search keeps a safety
// margin beyond that radius; completeness is cross-checked by the
// metric-independence property tests.
//
// Each crossing carries arclength parameters on both circles, the
// conjugator (as word and matrix), the angle and the orientation sign; the
// arrangement module consumes all of it.

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "spinelab/errors.hpp"
#include "spinelab/fenchel_nielsen.hpp"
#include "spinelab/geodesics.hpp"
#include "spinelab/geom.hpp"

namespace spinelab {

// A closed geodesic with a fixed axis parameterization: the normalizer takes
// (repelling, attracting, origin) to (0, inf, i); arclength parameter s on
// the axis is log Im(N z), so the primitive holonomy advances s by L.
struct RealizedCurve {
    CurveClass curve;
    Mat2 holonomy;  // of the primitive root
    double length = 0;  // of the primitive root
    Geodesic axis;
    Mat2 normalizer_to_std;
    Word root;      // primitive root word (== word unless a proper power)
    int power = 1;

    double param_of(Complex z) const {
        const Complex w = normalizer_to_std.apply(z);
        return std::log(w.imag());
    }
    Complex point_at(double s) const {
        return normalizer_to_std.inverse().apply(Complex(0, std::exp(s)));
    }
};

// Combinatorial primitive root of a cyclic word (smallest rotation period).
inline std::pair<Word, int> primitive_root(const Word& w) {
    const size_t n = w.size();
    for (size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (size_t i = 0; i + p < n && periodic; ++i) periodic = (w[i] == w[i + p]);
        if (periodic) return {Word(w.begin(), w.begin() + static_cast<long>(p)),
                              static_cast<int>(n / p)};
    }
    return {w, 1};
}

inline RealizedCurve realize_curve(const CurveClass& c, const FuchsianGroup& grp) {
    RealizedCurve r;
    r.curve = c;
    auto [root, power] = primitive_root(c.word);
    r.root = std::move(root);
    r.power = power;
    r.holonomy = grp.holonomy(r.root).unit();
    const double t = std::abs(grp.holonomy_trace(r.root));
    if (t <= 2 + 1e-12)
        throw EllipticOrParabolic("curve '" + c.id + "' has non-hyperbolic holonomy");
    r.length = 2 * std::acosh(t / 2);
    r.axis = axis_of(r.holonomy);
    const Complex origin = foot_of_perpendicular(r.axis, Complex(0, 1));
    r.normalizer_to_std = normalizer(r.axis, origin);
    return r;
}

// One transverse crossing between realized curves i and j.
struct Crossing {
    size_t ci = 0, cj = 0;      // curve indices in the system
    double si = 0, sj = 0;      // arclength parameters in [0, L)
    Word conjugator;            // u: the crossing point is u . (param sj on Axis_j)
    Mat2 conjugator_mat;
    double angle = 0;           // angle from curve i to curve j in (0, pi)
    int sign = +1;              // +1 if the ccw angle from t_i to t_j is < pi
};

namespace detail {

inline double circular_gap(double a, double b, double period) {
    double d = std::fmod(std::abs(a - b), period);
    return std::min(d, period - d);
}

inline bool same_axis(const Geodesic& g1, const Geodesic& g2, double tol = 1e-9) {
    auto enc = [](double x) { return std::isinf(x) ? M_PI / 2 : std::atan(x); };
    const double a1 = enc(g1.p), b1 = enc(g1.q), a2 = enc(g2.p), b2 = enc(g2.q);
    const bool direct = std::abs(a1 - a2) < tol && std::abs(b1 - b2) < tol;
    const bool flipped = std::abs(a1 - b2) < tol && std::abs(b1 - a2) < tol;
    return direct || flipped;
}

// Breadth-first conjugator enumeration pruned by displacement of `probe`
// relative to `center`.
template <class Fn>
void bfs_conjugators(const FuchsianGroup& grp, Complex probe, Complex center,
                     double radius, Fn&& visit, size_t budget) {
    struct Node {
        Word word;
        Mat2 mat;
    };
    std::vector<Mat2> letters;
    for (const Mat2& g : grp.generators) letters.push_back(g);
    for (const Mat2& g : grp.generators) letters.push_back(g.inverse());
    const int nl = static_cast<int>(letters.size());
    auto letter_of = [&](int i) { return i < nl / 2 ? i + 1 : -(i - nl / 2 + 1); };

    std::unordered_map<uint64_t, char> seen;
    auto key_of = [](const Mat2& m0) {
        Mat2 m = m0;
        const double vals[4] = {m.a, m.b, m.c, m.d};
        int arg = 0;
        for (int i = 1; i < 4; ++i)
            if (std::abs(vals[i]) > std::abs(vals[arg])) arg = i;
        if (vals[arg] < 0) m = m.scaled(-1);
        uint64_t h = 1469598103934665603ull;
        for (double v : {m.a, m.b, m.c, m.d}) {
            h ^= static_cast<uint64_t>(static_cast<int64_t>(std::llround(v * 2e6)));
            h *= 1099511628211ull;
        }
        return h;
    };

    size_t visited = 0;
    std::vector<Node> frontier{{Word{}, Mat2::identity()}};
    seen.emplace(key_of(Mat2::identity()), 1);
    visit(frontier[0].word, frontier[0].mat);
    while (!frontier.empty()) {
        std::vector<Node> next;
        for (const Node& e : frontier) {
            for (int li = 0; li < nl; ++li) {
                const int letter = letter_of(li);
                if (!e.word.empty() && e.word.back() == -letter) continue;
                Mat2 m = (e.mat * letters[static_cast<size_t>(li)]).unit();
                if (hyperbolic_distance(center, m.apply(probe)) > radius) continue;
                if (!seen.emplace(key_of(m), 1).second) continue;
                if (++visited > budget)
                    throw SearchBudgetExceeded("conjugator search exceeded budget");
                Word w = e.word;
                w.push_back(letter);
                visit(w, m);
                next.push_back({std::move(w), m});
            }
        }
        frontier = std::move(next);
    }
}

}  // namespace detail

// All crossings of curve-j translates with the fundamental segment of curve
// i's axis, parameters in [0, L).  For i == j this enumerates self-crossings
// (each appears twice, with the strand roles swapped).
inline std::vector<Crossing> axis_crossings(const RealizedCurve& ci, size_t idx_i,
                                            const RealizedCurve& cj, size_t idx_j,
                                            const FuchsianGroup& grp,
                                            double angle_tolerance = 1e-7,
                                            size_t budget = search_budget_cap()) {
    const Complex seg_mid = ci.point_at(ci.length / 2);
    const Complex probe = foot_of_perpendicular(cj.axis, seg_mid);
    const double radius = (ci.length + cj.length) / 2 + 3.0;

    std::vector<Crossing> raw;
    auto consider = [&](const Word& uw, const Mat2& um) {
        Geodesic axis{um.apply_boundary(cj.axis.p), um.apply_boundary(cj.axis.q)};
        if (detail::same_axis(axis, ci.axis)) return;  // common-axis translate
        if (!endpoints_link(ci.axis, axis)) return;
        const Complex z = geodesic_intersection(ci.axis, axis);
        const double si = ci.param_of(z);
        if (si < 0 || si >= ci.length) return;  // another translate covers it

        double ang = crossing_angle(ci.axis, axis, z);
        int sign = +1;
        if (ang > M_PI) {
            ang = 2 * M_PI - ang;
            sign = -1;
        }
        if (ang < angle_tolerance || ang > M_PI - angle_tolerance)
            throw DegenerateCrossing("near-tangent crossing between '" + ci.curve.id +
                                     "' and '" + cj.curve.id + "'");

        // parameter on curve j's own axis, shifted into [0, L_j)
        const Complex zj = um.inverse().apply(z);
        double sj = cj.param_of(zj);
        const double wraps = std::floor(sj / cj.length);
        sj -= wraps * cj.length;
        Word adjusted = uw;
        if (wraps != 0) {
            const Word wpow = word_power(wraps > 0 ? cj.root : inverse_word(cj.root),
                                         static_cast<int>(std::abs(wraps)));
            adjusted.insert(adjusted.end(), wpow.begin(), wpow.end());
        }
        Mat2 adj = um;
        for (int k = 0; k < static_cast<int>(std::abs(wraps)); ++k)
            adj = adj * (wraps > 0 ? cj.holonomy : cj.holonomy.inverse());

        Crossing c;
        c.ci = idx_i;
        c.cj = idx_j;
        c.si = si;
        c.sj = sj;
        c.conjugator = free_reduce(adjusted);
        c.conjugator_mat = adj.unit();
        c.angle = ang;
        c.sign = sign;
        raw.push_back(std::move(c));
    };
    detail::bfs_conjugators(grp, probe, seg_mid, radius, consider, budget);

    // merge duplicates (same surface crossing reached through different
    // conjugators); coincidence in one parameter only is a degeneracy
    std::vector<Crossing> out;
    for (const Crossing& c : raw) {
        bool dup = false;
        for (const Crossing& o : out) {
            const bool same_i = detail::circular_gap(c.si, o.si, ci.length) < 1e-8;
            const bool same_j = detail::circular_gap(c.sj, o.sj, cj.length) < 1e-8;
            if (same_i && same_j) {
                dup = true;
                break;
            }
            if (same_i != same_j && idx_i != idx_j)
                continue;  // distinct crossings may share one parameter only
                           // across different strands; fine
        }
        if (!dup) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
        return x.si < y.si;
    });
    return out;
}

// Shared per-metric context: group and realized curves.
struct MetricContext {
    FNPoint point;
    FuchsianGroup group;
    std::vector<RealizedCurve> realized;

    static MetricContext make(const CurveSystem& system, const FNPoint& x) {
        MetricContext ctx;
        ctx.point = x;
        ctx.group = build_fuchsian(x);
        for (const auto& c : system.curves)
            ctx.realized.push_back(realize_curve(c, ctx.group));
        return ctx;
    }
};

inline int self_intersection_count(const RealizedCurve& c, const FuchsianGroup& grp) {
    const auto crossings = axis_crossings(c, 0, c, 0, grp);
    if (crossings.size() % 2 != 0)
        throw NumericError("odd self-crossing count for '" + c.curve.id + "'");
    return static_cast<int>(crossings.size() / 2);
}

// Geometric intersection number of two classes at a metric; proper powers
// multiply the primitive count.
inline int intersection_number_realized(const RealizedCurve& a, const RealizedCurve& b,
                                        const FuchsianGroup& grp) {
    if (conjugacy_canonical(a.root, grp.genus) == conjugacy_canonical(b.root, grp.genus))
        return 0;  // same unoriented primitive class
    const auto crossings = axis_crossings(a, 0, b, 1, grp);
    return static_cast<int>(crossings.size()) * a.power * b.power;
}

inline int intersection_number(const CurveClass& c1, const CurveClass& c2,
                               const FNPoint& x) {
    const FuchsianGroup grp = build_fuchsian(x);
    return intersection_number_realized(realize_curve(c1, grp), realize_curve(c2, grp),
                                        grp);
}

// Fill (or verify) a system's intersection matrix at a metric.
inline void compute_intersections(CurveSystem& system, const FNPoint& x) {
    const MetricContext ctx = MetricContext::make(system, x);
    const size_t n = system.curves.size();
    system.intersection_matrix.assign(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const int v = intersection_number_realized(ctx.realized[i], ctx.realized[j],
                                                       ctx.group);
            system.intersection_matrix[i][j] = v;
            system.intersection_matrix[j][i] = v;
        }
    system.check_intersection_invariants();
}

}  // namespace spinelab
