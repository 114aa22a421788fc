#pragma once

// Topological surface data: presentations, curve classes, curve systems and
// multicurves.  Everything here is metric-free; geometry enters through the
// hyperbolic realization in fenchel_nielsen.hpp.

#include <optional>
#include <string>
#include <vector>

#include "spinelab/errors.hpp"
#include "spinelab/words.hpp"

namespace spinelab {

struct SurfacePresentation {
    int genus = 2;

    SurfacePresentation() = default;
    explicit SurfacePresentation(int g) : genus(g) {
        if (g < 2) throw ValidationError("surface genus must be >= 2");
    }

    int generator_count() const { return 2 * genus; }
    std::vector<std::string> generator_names() const {
        std::vector<std::string> names;
        for (int i = 1; i <= generator_count(); ++i) names.push_back(letter_name(i, genus));
        return names;
    }
    Word relator() const { return surface_relator(genus); }
};

// A free homotopy class, stored as a cyclically reduced word plus a stable
// label.  Construction runs cyclic (Dehn) reduction; empty results are the
// trivial class and rejected.
struct CurveClass {
    Word word;
    std::string id;

    CurveClass() = default;
    CurveClass(Word w, int genus, std::string label = "")
        : word(cyclic_dehn_reduce(std::move(w), genus)) {
        if (word.empty()) throw TrivialClass("word reduces to the identity");
        id = label.empty() ? word_to_string(word, genus) : std::move(label);
    }

    static CurveClass from_string(const std::string& text, int genus,
                                  std::string label = "") {
        return CurveClass(parse_word(text, genus), genus, std::move(label));
    }
};

// reduce_word operation: cyclically reduced conjugacy-normal representative.
inline CurveClass reduce_word(const std::string& text, int genus) {
    Word w = parse_word(text, genus);
    Word canon = conjugacy_canonical(w, genus);
    if (canon.empty()) throw TrivialClass("'" + text + "' reduces to the identity");
    return CurveClass(canon, genus);
}

struct CurveSystem {
    int genus = 2;
    std::vector<CurveClass> curves;
    // Pairwise geometric intersection numbers; filled by the geometric layer
    // (intersections.hpp).  Empty until computed.
    std::vector<std::vector<int>> intersection_matrix;
    bool candidate_systole_type = false;  // enforces i(c,c') <= 1 when set

    size_t size() const { return curves.size(); }

    const CurveClass& operator[](size_t i) const { return curves[i]; }

    void check_intersection_invariants() const {
        if (intersection_matrix.empty()) return;
        const size_t n = curves.size();
        for (size_t i = 0; i < n; ++i) {
            if (intersection_matrix[i][i] != 0)
                throw ValidationError("intersection matrix diagonal must be zero");
            for (size_t j = 0; j < n; ++j) {
                if (intersection_matrix[i][j] != intersection_matrix[j][i])
                    throw ValidationError("intersection matrix must be symmetric");
                if (intersection_matrix[i][j] < 0)
                    throw ValidationError("intersection numbers are nonnegative");
                if (candidate_systole_type && i != j && intersection_matrix[i][j] > 1)
                    throw ValidationError(
                        "candidate systole systems intersect pairwise at most once: " +
                        curves[i].id + ", " + curves[j].id);
            }
        }
    }

    CurveSystem subsystem(const std::vector<size_t>& idx) const {
        CurveSystem out;
        out.genus = genus;
        for (size_t i : idx) out.curves.push_back(curves[i]);
        if (!intersection_matrix.empty()) {
            out.intersection_matrix.assign(idx.size(), std::vector<int>(idx.size(), 0));
            for (size_t i = 0; i < idx.size(); ++i)
                for (size_t j = 0; j < idx.size(); ++j)
                    out.intersection_matrix[i][j] = intersection_matrix[idx[i]][idx[j]];
        }
        return out;
    }
};

// A multicurve: pairwise disjoint, pairwise non-isotopic classes.  Disjointness
// and non-isotopy are certified by the geometric layer; here we only keep a
// canonical sorted label.
struct Multicurve {
    int genus = 2;
    std::vector<CurveClass> components;

    std::string label() const {
        std::vector<std::string> ids;
        for (const auto& c : components) ids.push_back(c.id);
        std::sort(ids.begin(), ids.end());
        std::string out;
        for (size_t i = 0; i < ids.size(); ++i) {
            if (i) out += "+";
            out += ids[i];
        }
        return out.empty() ? "(empty)" : out;
    }

    bool empty() const { return components.empty(); }
    size_t size() const { return components.size(); }
};

inline bool operator<(const Multicurve& x, const Multicurve& y) {
    return x.label() < y.label();
}
inline bool operator==(const Multicurve& x, const Multicurve& y) {
    return x.label() == y.label();
}

// Vertices ordered by inclusion; simplices are chains of multicurves.
struct HorizonComplex {
    std::vector<Multicurve> vertices;
    std::vector<std::vector<size_t>> simplices;  // vertex index lists, sorted
    // The generating chains, as lists of curve-index subsets of the input
    // system (provenance only).
    std::vector<std::vector<std::vector<size_t>>> provenance;

    int dimension() const {
        int d = -1;
        for (const auto& s : simplices) d = std::max<int>(d, static_cast<int>(s.size()) - 1);
        return d;
    }

    bool same_complex(const HorizonComplex& other) const {
        auto key = [](const HorizonComplex& h) {
            std::vector<std::string> vs;
            for (const auto& v : h.vertices) vs.push_back(v.label());
            std::vector<std::vector<std::string>> ss;
            for (const auto& s : h.simplices) {
                std::vector<std::string> labels;
                for (size_t i : s) labels.push_back(h.vertices[i].label());
                std::sort(labels.begin(), labels.end());
                ss.push_back(labels);
            }
            std::sort(vs.begin(), vs.end());
            std::sort(ss.begin(), ss.end());
            return std::make_pair(vs, ss);
        };
        return key(*this) == key(other);
    }
};

}  // namespace spinelab
