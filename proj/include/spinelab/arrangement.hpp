#pragma once

// The arrangement of a curve system: the 4-valent ribbon graph whose
// vertices are the pairwise crossings of the geodesic representatives, with
// the cyclic edge order at every vertex read off from the crossing angles.
//
// Faces are traced with the standard rotation-system rule; every face
// traversal is developed in the hyperbolic plane, which yields the holonomy
// of the face boundary as an explicit word.  This gives
//   * the filling test  (connected, V - E + F = 2 - 2g, every face a disk,
//     cross-checked against face holonomies being trivial), and
//   * boundary multicurves m(C') (nontrivial face classes, isotopic
//     duplicates merged through the conjugacy normal form).
//
// Inputs must be simple (zero self-crossings) and primitive; both are
// validated here.  Tangencies and triple points raise degeneracy errors;
// callers retry at a perturbed metric (see with_degeneracy_retries).

#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "spinelab/errors.hpp"
#include "spinelab/intersections.hpp"

namespace spinelab {

struct ArrangementFace {
    std::vector<size_t> half_edges;  // traversal, indices into Arrangement::half_edges
    Word holonomy_word;              // cyclically reduced boundary class
    bool is_disk = false;
};

struct Arrangement {
    // crossing vertices
    struct Vertex {
        size_t curve_i, curve_j;
        double si, sj;
        Word conjugator;        // lift on curve_i equals conjugator . lift on curve_j
        Mat2 conjugator_mat;
        int sign;               // +1: ccw ray order (i+, j+, i-, j-)
    };
    // directed arcs along curves between consecutive stops
    struct HalfEdge {
        size_t curve = 0;
        size_t from_vertex = 0, to_vertex = 0;
        bool from_role_j = false, to_role_j = false;
        double s_from = 0, s_to = 0;  // canonical params in [0, L)
        int dir = +1;                 // +1 along the curve orientation
        size_t twin = 0;
    };

    std::vector<Vertex> vertices;
    std::vector<HalfEdge> half_edges;
    std::vector<ArrangementFace> faces;
    std::vector<size_t> free_loops;  // curves without crossings
    size_t num_curves = 0;
    bool connected = false;

    size_t V() const { return vertices.size(); }
    size_t E() const { return half_edges.size() / 2; }
    size_t F() const { return faces.size(); }
    int euler() const { return static_cast<int>(V()) - static_cast<int>(E()) +
                               static_cast<int>(F()); }
};

namespace detail {

struct Stop {
    double s;
    size_t vertex;
    bool role_j;
};

}  // namespace detail

inline Arrangement curve_arrangement(const CurveSystem& system, const FNPoint& x) {
    const MetricContext ctx = MetricContext::make(system, x);
    const size_t n = ctx.realized.size();
    Arrangement arr;
    arr.num_curves = n;

    for (size_t i = 0; i < n; ++i) {
        if (ctx.realized[i].power != 1)
            throw ValidationError("arrangement input '" + system.curves[i].id +
                                  "' is a proper power");
        if (self_intersection_count(ctx.realized[i], ctx.group) != 0)
            throw ValidationError("arrangement input '" + system.curves[i].id +
                                  "' is not simple at this metric");
    }

    // crossings, one vertex per surface crossing
    std::vector<std::vector<detail::Stop>> stops(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const auto crossings =
                axis_crossings(ctx.realized[i], i, ctx.realized[j], j, ctx.group);
            for (const Crossing& c : crossings) {
                const size_t v = arr.vertices.size();
                arr.vertices.push_back({i, j, c.si, c.sj, c.conjugator,
                                        c.conjugator_mat, c.sign});
                stops[i].push_back({c.si, v, false});
                stops[j].push_back({c.sj, v, true});
            }
        }

    for (size_t k = 0; k < n; ++k) {
        if (stops[k].empty()) {
            arr.free_loops.push_back(k);
            continue;
        }
        auto& sk = stops[k];
        std::sort(sk.begin(), sk.end(),
                  [](const detail::Stop& a, const detail::Stop& b) { return a.s < b.s; });
        for (size_t t = 0; t + 1 < sk.size(); ++t)
            if (sk[t + 1].s - sk[t].s < 1e-8)
                throw DegenerateArrangement("near-coincident crossings on '" +
                                            system.curves[k].id + "'");
        const double L = ctx.realized[k].length;
        if (sk.size() >= 2 && (sk.front().s + L - sk.back().s) < 1e-8)
            throw DegenerateArrangement("near-coincident crossings on '" +
                                        system.curves[k].id + "'");

        // arcs between consecutive stops (cyclic); forward and twin
        const size_t m = sk.size();
        for (size_t t = 0; t < m; ++t) {
            const detail::Stop& a = sk[t];
            const detail::Stop& b = sk[(t + 1) % m];
            Arrangement::HalfEdge fwd;
            fwd.curve = k;
            fwd.from_vertex = a.vertex;
            fwd.to_vertex = b.vertex;
            fwd.from_role_j = a.role_j;
            fwd.to_role_j = b.role_j;
            fwd.s_from = a.s;
            fwd.s_to = b.s;
            fwd.dir = +1;
            Arrangement::HalfEdge bwd = fwd;
            std::swap(bwd.from_vertex, bwd.to_vertex);
            std::swap(bwd.from_role_j, bwd.to_role_j);
            std::swap(bwd.s_from, bwd.s_to);
            bwd.dir = -1;
            const size_t fi = arr.half_edges.size();
            fwd.twin = fi + 1;
            bwd.twin = fi;
            arr.half_edges.push_back(fwd);
            arr.half_edges.push_back(bwd);
        }
    }

    // rotation system: for each vertex, the four outgoing half-edges in ccw
    // ray order
    //   sign +1:  (i+, j+, i-, j-)        sign -1:  (i+, j-, i-, j+)
    // where "k+" leaves along the orientation of strand k.
    const size_t H = arr.half_edges.size();
    std::vector<std::array<size_t, 4>> rotation(arr.V(), {H, H, H, H});
    for (size_t h = 0; h < H; ++h) {
        const auto& he = arr.half_edges[h];
        const auto& v = arr.vertices[he.from_vertex];
        const bool role_j = he.from_role_j;
        const bool along = he.dir == +1;
        // ray slot of this outgoing half-edge
        int slot;
        if (!role_j)
            slot = along ? 0 : 2;  // i+ or i-
        else if (v.sign > 0)
            slot = along ? 1 : 3;  // j+ or j-
        else
            slot = along ? 3 : 1;  // reversed order
        rotation[he.from_vertex][static_cast<size_t>(slot)] = h;
    }
    for (size_t v = 0; v < arr.V(); ++v)
        for (size_t s = 0; s < 4; ++s)
            if (rotation[v][s] >= H)
                throw NumericError("incomplete rotation system at a crossing");

    // connectivity of the ribbon graph plus free loops
    {
        std::vector<size_t> comp(n);
        for (size_t i = 0; i < n; ++i) comp[i] = i;
        std::function<size_t(size_t)> find = [&](size_t a) {
            while (comp[a] != a) a = comp[a] = comp[comp[a]];
            return a;
        };
        for (const auto& v : arr.vertices) comp[find(v.curve_i)] = find(v.curve_j);
        std::set<size_t> roots;
        for (size_t i = 0; i < n; ++i) roots.insert(find(i));
        arr.connected = roots.size() <= 1;
    }

    // face traversal: next(h) = rotation-successor of twin(h) at its head
    auto slot_of = [&](size_t h) {
        const auto& he = arr.half_edges[h];
        const auto& rot = rotation[he.from_vertex];
        for (size_t s = 0; s < 4; ++s)
            if (rot[s] == h) return s;
        throw NumericError("half-edge missing from rotation");
    };
    std::vector<char> used(H, 0);
    for (size_t h0 = 0; h0 < H; ++h0) {
        if (used[h0]) continue;
        ArrangementFace face;
        // develop the boundary in the plane while walking
        Word hol_word;
        size_t h = h0;
        do {
            used[h] = 1;
            face.half_edges.push_back(h);
            const auto& he = arr.half_edges[h];
            const RealizedCurve& rc = ctx.realized[he.curve];
            // walking the arc re-canonicalizes the parameter modulo L
            double wrap;
            if (he.dir == +1) {
                double delta = he.s_to - he.s_from;
                if (delta <= 0) delta += rc.length;
                wrap = std::floor((he.s_from + delta - he.s_to) / rc.length + 0.5);
            } else {
                double delta = he.s_from - he.s_to;
                if (delta <= 0) delta += rc.length;
                wrap = -std::floor((he.s_to + delta - he.s_from) / rc.length + 0.5);
            }
            for (int t = 0; t < static_cast<int>(std::abs(wrap)); ++t) {
                const Word& w = rc.root;
                const Word piece = wrap > 0 ? w : inverse_word(w);
                hol_word.insert(hol_word.end(), piece.begin(), piece.end());
            }
            // transfer across the arrival vertex to the other strand
            const auto& v = arr.vertices[he.to_vertex];
            if (!he.to_role_j) {
                // arriving on strand i; next strand is j: multiply by u
                hol_word.insert(hol_word.end(), v.conjugator.begin(), v.conjugator.end());
            } else {
                const Word ui = inverse_word(v.conjugator);
                hol_word.insert(hol_word.end(), ui.begin(), ui.end());
            }
            // next half-edge: ccw successor of the twin at the head vertex
            const size_t tw = arr.half_edges[h].twin;
            const size_t s = slot_of(tw);
            h = rotation[arr.half_edges[tw].from_vertex][(s + 1) % 4];
        } while (h != h0);

        face.holonomy_word = cyclic_dehn_reduce(hol_word, ctx.group.genus);
        face.is_disk = face.holonomy_word.empty();
        // cross-check the combinatorial answer against the matrices
        const double resid = distance_to_identity(ctx.group.holonomy(face.holonomy_word.empty()
                                                                         ? hol_word
                                                                         : face.holonomy_word));
        if (face.is_disk && resid > 1e-6)
            throw NumericError("trivial face word with nontrivial holonomy");
        if (!face.is_disk && resid < 1e-6)
            throw NumericError("nontrivial face word with trivial holonomy");
        arr.faces.push_back(std::move(face));
    }

    return arr;
}

// Filling test: connected arrangement whose complement is a union of disks.
inline bool is_filling(const CurveSystem& system, const FNPoint& x) {
    if (system.curves.empty()) return false;
    const Arrangement arr = curve_arrangement(system, x);
    if (!arr.free_loops.empty()) return false;
    if (!arr.connected) return false;
    const int genus = x.genus;
    if (arr.euler() != 2 - 2 * genus) return false;
    for (const auto& f : arr.faces)
        if (!f.is_disk) return false;
    return true;
}

// Boundary multicurve of the subsurface filled by the system: nontrivial
// face classes with isotopic duplicates merged.  Empty iff the system fills.
inline Multicurve boundary_multicurve(const CurveSystem& system, const FNPoint& x) {
    if (system.curves.empty())
        throw ValidationError("boundary_multicurve of an empty system");
    Multicurve out;
    out.genus = x.genus;

    // a single crossing-free curve: annulus neighborhood, both boundary
    // circles isotopic to the curve itself
    const Arrangement arr = curve_arrangement(system, x);
    std::set<Word> classes;
    for (const auto& f : arr.faces) {
        if (f.is_disk) continue;
        classes.insert(conjugacy_canonical(f.holonomy_word, x.genus));
    }
    for (size_t k : arr.free_loops)
        classes.insert(conjugacy_canonical(system.curves[k].word, x.genus));
    for (const Word& w : classes) out.components.push_back(CurveClass(w, x.genus));
    return out;
}

// Retry helper for the measure-zero degenerate configurations: perturb the
// metric (1e-3, up to 5 times) until the callback stops throwing degeneracy
// errors.  Only metric-independent outputs may go through here.
template <class Fn>
auto with_degeneracy_retries(const FNPoint& x, uint64_t seed, Fn&& fn)
    -> decltype(fn(x)) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1e-3, 1e-3);
    FNPoint y = x;
    for (int attempt = 0;; ++attempt) {
        try {
            return fn(y);
        } catch (const DegenerateCrossing&) {
            if (attempt >= 5) throw;
        } catch (const DegenerateArrangement&) {
            if (attempt >= 5) throw;
        }
        std::vector<double> v = x.coords();
        for (double& c : v) c += d(rng);
        y = FNPoint::from_coords(v, x.genus);
    }
}

}  // namespace spinelab
