#pragma once

// Length spectrum machinery: breadth-first enumeration of the group ball
// around a basepoint with displacement pruning, conjugacy-class
// deduplication via cyclic Dehn normal forms, short-geodesic listings and
// systole sets.
//
// Completeness rationale: every free homotopy class of translation length
// l has a conjugate whose axis passes within R0 of the basepoint (R0 a bound
// on the distance from the basepoint to any axis orbit, of the order of the
// fundamental-domain diameter), and such a conjugate g satisfies
//     cosh(d(x0, g x0)/2) = cosh(l/2) cosh(dist(x0, Axis(g)))
// so enumerating displacement balls of radius
//     R = 2 acosh(cosh(cutoff/2) cosh(R0))  (+ margin)
// reaches a representative of every class below the cutoff.  R0 is a
// parameter; tests verify stability under enlarging it and doubling the
// search depth.

#include <cstdlib>
#include <map>
#include <unordered_map>
#include <vector>

#include "spinelab/errors.hpp"
#include "spinelab/fenchel_nielsen.hpp"
#include "spinelab/geom.hpp"
#include "spinelab/surface.hpp"

namespace spinelab {

struct GroupElement {
    Word word;
    Mat2 mat;
    double displacement = 0;  // d(i, g i)
};

struct GroupBall {
    std::vector<GroupElement> elements;  // identity excluded
    double radius = 0;
    bool complete = true;  // false when the search budget truncated the ball
};

inline size_t search_budget_cap() {
    if (const char* env = std::getenv("SPINELAB_BUDGET")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<size_t>(v);
    }
    return 4'000'000;
}

namespace detail {

// Sign-canonical quantized key for PSL(2,R) matrix dedup.
struct MatKey {
    int64_t k[4];
    bool operator==(const MatKey& o) const {
        return k[0] == o.k[0] && k[1] == o.k[1] && k[2] == o.k[2] && k[3] == o.k[3];
    }
};
struct MatKeyHash {
    size_t operator()(const MatKey& m) const {
        uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < 4; ++i) {
            h ^= static_cast<uint64_t>(m.k[i]);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline MatKey mat_key(const Mat2& m0) {
    Mat2 m = m0;
    // canonical sign: make the entry of largest magnitude positive
    const double vals[4] = {m.a, m.b, m.c, m.d};
    int arg = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(vals[i]) > std::abs(vals[arg])) arg = i;
    if (vals[arg] < 0) m = m.scaled(-1);
    const double q = 2e6;
    return {{static_cast<int64_t>(std::llround(m.a * q)),
             static_cast<int64_t>(std::llround(m.b * q)),
             static_cast<int64_t>(std::llround(m.c * q)),
             static_cast<int64_t>(std::llround(m.d * q))}};
}

}  // namespace detail

// Breadth-first enumeration of {g : d(i, g i) <= radius}; deduplicates group
// elements (distinct words for the same isometry collapse).  A small
// displacement margin keeps prefixes alive through dead ends.
inline GroupBall group_ball(const FuchsianGroup& grp, double radius,
                            size_t budget = search_budget_cap()) {
    const Complex base(0, 1);
    const double margin = 1.0;
    GroupBall ball;
    ball.radius = radius;

    std::vector<Mat2> letters;
    for (const Mat2& g : grp.generators) letters.push_back(g);
    for (const Mat2& g : grp.generators) letters.push_back(g.inverse());
    const int nl = static_cast<int>(letters.size());
    auto letter_of = [&](int i) { return i < nl / 2 ? i + 1 : -(i - nl / 2 + 1); };

    std::unordered_map<detail::MatKey, char, detail::MatKeyHash> seen;
    seen.emplace(detail::mat_key(Mat2::identity()), 1);

    std::vector<GroupElement> frontier;
    frontier.push_back({Word{}, Mat2::identity(), 0});
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const GroupElement& e : frontier) {
            for (int li = 0; li < nl; ++li) {
                const int letter = letter_of(li);
                if (!e.word.empty() && e.word.back() == -letter) continue;
                Mat2 m = (e.mat * letters[static_cast<size_t>(li)]).unit();
                const double disp = hyperbolic_distance(base, m.apply(base));
                if (disp > radius + margin) continue;
                const auto key = detail::mat_key(m);
                if (!seen.emplace(key, 1).second) continue;
                Word w = e.word;
                w.push_back(letter);
                if (disp <= radius) {
                    ball.elements.push_back({w, m, disp});
                    if (ball.elements.size() > budget) {
                        ball.complete = false;
                        return ball;
                    }
                }
                next.push_back({std::move(w), m, disp});
            }
        }
        frontier = std::move(next);
    }
    return ball;
}

struct ShortGeodesic {
    CurveClass curve;   // canonical class representative
    double length = 0;
    double trace = 0;
    Mat2 holonomy;      // of the canonical word
};

struct EnumerationOptions {
    double hard_cap = 8.0;        // refuse cutoffs above this
    double axis_reach = 3.0;      // assumed R0 (see header comment)
    int extra_depth = 0;          // enlarges the ball; used by stability tests
    size_t budget = 0;            // 0 = use env / default
};

// All conjugacy classes (conjugates and inverses merged) of translation
// length <= cutoff, sorted by length then canonical word.
inline std::vector<ShortGeodesic> enumerate_short_geodesics(
    const FuchsianGroup& grp, double cutoff, const EnumerationOptions& opt = {}) {
    if (cutoff > opt.hard_cap)
        throw ValidationError("cutoff " + std::to_string(cutoff) +
                              " exceeds the hard cap " + std::to_string(opt.hard_cap));
    const double reach = opt.axis_reach + 0.5 * opt.extra_depth;
    const double radius =
        2 * std::acosh(std::cosh(cutoff / 2) * std::cosh(reach)) + 0.25;
    const GroupBall ball =
        group_ball(grp, radius, opt.budget ? opt.budget : search_budget_cap());
    if (!ball.complete)
        throw SearchBudgetExceeded("group ball truncated at radius " +
                                   std::to_string(radius));

    std::map<Word, ShortGeodesic, bool (*)(const Word&, const Word&)> classes(
        word_less_canonical);
    for (const GroupElement& e : ball.elements) {
        const double tr = grp.holonomy_trace(e.word);
        const double t = std::abs(tr);
        if (t <= 2 + 1e-12) {
            if (distance_to_identity(e.mat) < 1e-8) continue;  // relator word
            throw NumericError("non-identity element with |trace| <= 2; "
                               "representation is not discrete/faithful");
        }
        const double len = 2 * std::acosh(t / 2);
        if (len > cutoff + 1e-12) continue;
        Word canon = conjugacy_canonical(e.word, grp.genus);
        auto it = classes.find(canon);
        if (it == classes.end()) {
            ShortGeodesic sg;
            sg.curve = CurveClass(canon, grp.genus);
            sg.length = geodesic_length_of_word(canon, grp);
            sg.trace = grp.holonomy_trace(canon);
            sg.holonomy = grp.holonomy(canon);
            if (std::abs(sg.length - len) > 1e-9 * (1 + len))
                throw NumericError("conjugacy class length mismatch: " +
                                   word_to_string(e.word, grp.genus) + " vs " +
                                   word_to_string(canon, grp.genus));
            classes.emplace(std::move(canon), std::move(sg));
        }
    }

    std::vector<ShortGeodesic> out;
    for (auto& [w, sg] : classes) out.push_back(sg);
    std::sort(out.begin(), out.end(), [](const ShortGeodesic& x, const ShortGeodesic& y) {
        if (x.length != y.length) return x.length < y.length;
        return word_less_canonical(x.curve.word, y.curve.word);
    });
    return out;
}

// Shortest length at x; fails if nothing is found below the cap.
inline double systole_value(const FuchsianGroup& grp, double cap = 8.0,
                            const EnumerationOptions& base_opt = {}) {
    EnumerationOptions opt = base_opt;
    opt.hard_cap = std::max(opt.hard_cap, cap);
    double cutoff = std::min(2.0, cap);
    while (cutoff <= cap) {
        const auto list = enumerate_short_geodesics(grp, cutoff, opt);
        if (!list.empty()) return list.front().length;
        cutoff *= 1.7;
    }
    throw NumericError("no geodesic below cap; point is far outside the thick part");
}

struct SystoleSet {
    FNPoint base;
    double value = 0;
    CurveSystem curves;
    double tolerance = 0;
    std::vector<double> lengths;
};

// All length-minimizing classes at x within tol of the minimum.
inline SystoleSet systoles(const FNPoint& x, double tol = 1e-7,
                           const EnumerationOptions& opt = {}) {
    if (!(tol > 0)) throw ValidationError("systole tolerance must be positive");
    const FuchsianGroup grp = build_fuchsian(x);
    const double fsys = systole_value(grp, opt.hard_cap, opt);
    const auto list = enumerate_short_geodesics(grp, fsys + std::max(tol, 1e-9) * 2, opt);

    SystoleSet out;
    out.base = x;
    out.value = fsys;
    out.tolerance = tol;
    out.curves.genus = x.genus;
    out.curves.candidate_systole_type = true;
    for (const auto& sg : list) {
        if (sg.length <= fsys + tol) {
            out.curves.curves.push_back(sg.curve);
            out.lengths.push_back(sg.length);
        }
    }
    if (out.curves.curves.empty()) throw NumericError("empty systole set");
    return out;
}

}  // namespace spinelab
