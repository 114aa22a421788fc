#pragma once

// Nonfilling chains and the horizon subcomplex.
//
// A maximal chain C_1 < C_2 < ... < C_k of nonfilling subsets ascends one
// element at a time from a singleton to a maximal nonfilling subset (any
// subset of a nonfilling set is nonfilling, so nothing else is insertable).
// Each chain contributes the simplex {m(C_1), ..., m(C_k)} of boundary
// multicurves, duplicates within a chain merged; the union of simplices,
// closed under faces, is the horizon subcomplex of the barycentrically
// subdivided curve complex.

#include <map>
#include <set>
#include <vector>

#include "spinelab/arrangement.hpp"
#include "spinelab/errors.hpp"

namespace spinelab {

namespace detail {

struct SubsetOracle {
    const CurveSystem& system;
    const FNPoint& x;
    uint64_t seed;
    std::map<uint32_t, bool> filling_cache;
    std::map<uint32_t, Multicurve> boundary_cache;

    CurveSystem subset(uint32_t mask) const {
        std::vector<size_t> idx;
        for (size_t i = 0; i < system.curves.size(); ++i)
            if (mask & (1u << i)) idx.push_back(i);
        return system.subsystem(idx);
    }

    bool filling(uint32_t mask) {
        auto it = filling_cache.find(mask);
        if (it != filling_cache.end()) return it->second;
        const CurveSystem sub = subset(mask);
        const bool f = with_degeneracy_retries(
            x, seed ^ mask, [&](const FNPoint& y) { return is_filling(sub, y); });
        filling_cache[mask] = f;
        return f;
    }

    const Multicurve& boundary(uint32_t mask) {
        auto it = boundary_cache.find(mask);
        if (it != boundary_cache.end()) return it->second;
        const CurveSystem sub = subset(mask);
        Multicurve m = with_degeneracy_retries(
            x, seed ^ mask, [&](const FNPoint& y) { return boundary_multicurve(sub, y); });
        return boundary_cache.emplace(mask, std::move(m)).first->second;
    }
};

}  // namespace detail

// All maximal chains of nonfilling subsets, as lists of index subsets.
inline std::vector<std::vector<std::vector<size_t>>> nonfilling_chains(
    const CurveSystem& system, const FNPoint& x, uint64_t seed = 20260809) {
    const size_t n = system.curves.size();
    if (n > 20) throw SizeLimit("nonfilling_chains limited to 20 curves");
    detail::SubsetOracle oracle{system, x, seed, {}, {}};

    std::vector<std::vector<std::vector<size_t>>> chains;
    std::vector<uint32_t> chain;

    auto indices_of = [&](uint32_t mask) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        return idx;
    };

    std::function<void(uint32_t)> extend = [&](uint32_t mask) {
        bool maximal = true;
        for (size_t i = 0; i < n; ++i) {
            const uint32_t bit = 1u << i;
            if (mask & bit) continue;
            const uint32_t next = mask | bit;
            if (!oracle.filling(next)) {
                maximal = false;
                chain.push_back(next);
                extend(next);
                chain.pop_back();
            }
        }
        if (maximal) {
            std::vector<std::vector<size_t>> out;
            for (uint32_t m : chain) out.push_back(indices_of(m));
            chains.push_back(std::move(out));
        }
    };

    for (size_t i = 0; i < n; ++i) {
        const uint32_t mask = 1u << i;
        if (oracle.filling(mask))
            throw NumericError("a single curve cannot fill; arrangement is broken");
        chain.push_back(mask);
        extend(mask);
        chain.pop_back();
    }
    std::sort(chains.begin(), chains.end());
    chains.erase(std::unique(chains.begin(), chains.end()), chains.end());
    return chains;
}

inline bool multicurve_contains(const Multicurve& big, const Multicurve& small) {
    std::set<std::string> ids;
    for (const auto& c : big.components) ids.insert(c.id);
    for (const auto& c : small.components)
        if (!ids.count(c.id)) return false;
    return true;
}

// Horizon subcomplex of a filling system.
//
// The horizon map sends the set of minima to "the subcomplex with vertices
// labelled by" the multicurves that get arbitrarily short on it -- the full
// subcomplex of the barycentric subdivision induced on that vertex set.  The
// vertices are the boundary multicurves m(C') over the nonfilling subsets;
// simplices are all inclusion-flags among those vertices.  (The boundaries
// along a chain of subsets need not nest -- already m({c}) = {c} versus the
// separating m({c, d}) for crossing c, d -- so chains contribute vertices,
// not simplices; they are kept as provenance.)
inline HorizonComplex horizon_subcomplex(const CurveSystem& system, const FNPoint& x,
                                         uint64_t seed = 20260809) {
    detail::SubsetOracle oracle{system, x, seed, {}, {}};
    const size_t n = system.curves.size();
    if (n > 20) throw SizeLimit("horizon_subcomplex limited to 20 curves");
    const uint32_t full = n >= 32 ? 0xffffffffu : ((1u << n) - 1);
    if (!oracle.filling(full)) throw NotFilling("horizon subcomplex needs a filling system");

    const auto chains = nonfilling_chains(system, x, seed);

    HorizonComplex out;
    std::map<std::string, size_t> vertex_index;
    auto vertex_of = [&](const Multicurve& m) {
        auto it = vertex_index.find(m.label());
        if (it != vertex_index.end()) return it->second;
        const size_t idx = out.vertices.size();
        out.vertices.push_back(m);
        vertex_index.emplace(m.label(), idx);
        return idx;
    };

    for (const auto& chain : chains) {
        for (const auto& subset : chain) {
            uint32_t mask = 0;
            for (size_t i : subset) mask |= 1u << i;
            const Multicurve& m = oracle.boundary(mask);
            if (m.empty())
                throw NumericError("nonfilling subset produced an empty boundary");
            vertex_of(m);
        }
    }

    // flags of the inclusion order = simplices of the induced subcomplex
    const size_t nv = out.vertices.size();
    std::vector<std::vector<size_t>> above(nv);  // strictly containing vertices
    for (size_t a = 0; a < nv; ++a)
        for (size_t b = 0; b < nv; ++b) {
            if (a == b) continue;
            if (multicurve_contains(out.vertices[b], out.vertices[a]) &&
                out.vertices[a].label() != out.vertices[b].label())
                above[a].push_back(b);
        }
    std::vector<size_t> flag;
    std::function<void(size_t)> grow = [&](size_t v) {
        flag.push_back(v);
        out.simplices.push_back(flag);
        for (size_t w : above[v]) grow(w);
        flag.pop_back();
    };
    for (size_t v = 0; v < nv; ++v) grow(v);
    std::sort(out.simplices.begin(), out.simplices.end());
    out.simplices.erase(std::unique(out.simplices.begin(), out.simplices.end()),
                        out.simplices.end());
    out.provenance.assign(out.simplices.size(), {});
    for (size_t ci = 0; ci < chains.size(); ++ci)
        if (ci < out.provenance.size()) out.provenance[ci] = chains[ci];
    return out;
}

}  // namespace spinelab
