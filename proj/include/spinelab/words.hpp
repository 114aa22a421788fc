#pragma once

// Word calculus in the genus-g surface group
//
//   pi_1(S_g) = < a1, b1, ..., ag, bg | [a1,b1]...[ag,bg] >.
//
// Letters are nonzero ints: +k is the k-th generator (1-based, in the order
// a1, b1, a2, b2, ...), -k its inverse.  Words are vectors of letters.
//
// The relator has length 4g and satisfies the C'(1/8) small cancellation
// condition for g >= 2, so Dehn's algorithm solves the word problem, and the
// conjugacy problem is solved on cyclic words by Dehn reduction followed by
// closure under rotation and half-relator swaps.

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spinelab/errors.hpp"

namespace spinelab {

using Word = std::vector<int>;

inline std::string letter_name(int letter, int /*genus*/) {
    const int idx = std::abs(letter) - 1;
    std::string s = (idx % 2 == 0 ? "a" : "b") + std::to_string(idx / 2 + 1);
    if (letter < 0) s += "^-1";
    return s;
}

inline std::string word_to_string(const Word& w, int genus) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += letter_name(w[i], genus);
    }
    return out;
}

// Accepts tokens like "a1", "b2^-1", "a1'", "A1" (capital = inverse) and the
// unicode superscript form "a1⁻¹".
inline Word parse_word(const std::string& text, int genus) {
    Word out;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        std::string t = token;
        token.clear();
        bool inverse = false;
        // strip unicode superscript -1 (U+207B U+00B9)
        const std::string sup = "⁻¹";
        if (t.size() >= sup.size() && t.compare(t.size() - sup.size(), sup.size(), sup) == 0) {
            inverse = true;
            t.erase(t.size() - sup.size());
        }
        if (t.size() >= 3 && t.compare(t.size() - 3, 3, "^-1") == 0) {
            inverse = true;
            t.erase(t.size() - 3);
        }
        if (!t.empty() && t.back() == '\'') {
            inverse = true;
            t.pop_back();
        }
        if (t.size() < 2) throw ValidationError("unparseable word token '" + token + "'");
        char kind = t[0];
        if (std::isupper(static_cast<unsigned char>(kind))) {
            inverse = !inverse;
            kind = static_cast<char>(std::tolower(static_cast<unsigned char>(kind)));
        }
        if (kind != 'a' && kind != 'b')
            throw ValidationError("unknown generator '" + t + "'");
        int num = 0;
        for (size_t i = 1; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw ValidationError("unparseable word token '" + t + "'");
            num = num * 10 + (t[i] - '0');
        }
        if (num < 1 || num > genus)
            throw ValidationError("generator index out of range for genus: '" + t + "'");
        int idx = (num - 1) * 2 + (kind == 'a' ? 0 : 1) + 1;
        out.push_back(inverse ? -idx : idx);
    };
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == ',' || ch == '.' || ch == '*') {
            flush();
        } else {
            token += ch;
        }
    }
    flush();
    return out;
}

inline Word inverse_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

inline Word free_reduce(Word w) {
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

inline Word cyclic_reduce(Word w) {
    w = free_reduce(std::move(w));
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    return w;
}

inline Word surface_relator(int genus) {
    Word r;
    for (int k = 0; k < genus; ++k) {
        const int a = 2 * k + 1, b = 2 * k + 2;
        r.push_back(a);
        r.push_back(b);
        r.push_back(-a);
        r.push_back(-b);
    }
    return r;
}

namespace detail {

// All cyclic rotations of the relator and its inverse.
inline std::vector<Word> relator_rotations(int genus) {
    std::vector<Word> rots;
    for (const Word& base : {surface_relator(genus), inverse_word(surface_relator(genus))}) {
        for (size_t s = 0; s < base.size(); ++s) {
            Word r(base.begin() + static_cast<long>(s), base.end());
            r.insert(r.end(), base.begin(), base.begin() + static_cast<long>(s));
            rots.push_back(std::move(r));
        }
    }
    std::sort(rots.begin(), rots.end());
    rots.erase(std::unique(rots.begin(), rots.end()), rots.end());
    return rots;
}

// Search w (linearly) for a prefix of some relator rotation of length > len;
// returns {pos, rotation index, matched length} or matched length 0.
struct DehnMatch {
    size_t pos = 0;
    size_t rot = 0;
    size_t len = 0;
};

inline DehnMatch longest_relator_match(const Word& w, const std::vector<Word>& rots,
                                       bool cyclic) {
    DehnMatch best;
    const size_t n = w.size();
    if (n == 0) return best;
    const size_t span = cyclic ? 2 * n : n;
    for (size_t start = 0; start < n; ++start) {
        for (size_t ri = 0; ri < rots.size(); ++ri) {
            const Word& r = rots[ri];
            size_t k = 0;
            while (k < r.size() && start + k < span) {
                const size_t wi = (start + k) % n;
                if (cyclic && k >= n) break;  // do not wrap past full word
                if (w[wi] != r[k]) break;
                ++k;
            }
            if (k > best.len) best = {start, ri, k};
        }
    }
    return best;
}

}  // namespace detail

// Dehn reduction of a (non-cyclic) word: repeatedly free-reduce and replace
// any subword that is more than half of a relator rotation by the shorter
// complement.  Terminates, and yields the empty word iff the class is
// trivial.
inline Word dehn_reduce(Word w, int genus) {
    const auto rots = detail::relator_rotations(genus);
    const size_t rlen = 4 * static_cast<size_t>(genus);
    w = free_reduce(std::move(w));
    bool changed = true;
    while (changed && !w.empty()) {
        changed = false;
        const auto m = detail::longest_relator_match(w, rots, /*cyclic=*/false);
        if (m.len > rlen / 2) {
            // w contains r_prefix with |prefix| > |r|/2; replace by the
            // inverse of the remaining suffix of the rotation.
            const Word& r = rots[m.rot];
            Word suffix(r.begin() + static_cast<long>(m.len), r.end());
            Word repl = inverse_word(suffix);
            Word out(w.begin(), w.begin() + static_cast<long>(m.pos));
            out.insert(out.end(), repl.begin(), repl.end());
            out.insert(out.end(), w.begin() + static_cast<long>(m.pos + m.len), w.end());
            w = free_reduce(std::move(out));
            changed = true;
        }
    }
    return w;
}

inline bool is_trivial_word(const Word& w, int genus) {
    return dehn_reduce(w, genus).empty();
}

// Cyclic Dehn reduction: like dehn_reduce but subwords may wrap around the
// cyclic word.  The result is a cyclically reduced word of minimal length in
// its conjugacy class.
inline Word cyclic_dehn_reduce(Word w, int genus) {
    const auto rots = detail::relator_rotations(genus);
    const size_t rlen = 4 * static_cast<size_t>(genus);
    w = cyclic_reduce(std::move(w));
    bool changed = true;
    while (changed && !w.empty()) {
        changed = false;
        const auto m = detail::longest_relator_match(w, rots, /*cyclic=*/true);
        if (m.len > rlen / 2 && m.len <= w.size()) {
            const Word& r = rots[m.rot];
            Word suffix(r.begin() + static_cast<long>(m.len), r.end());
            Word repl = inverse_word(suffix);
            // rotate so the match starts at position 0, then substitute
            Word rot(w.begin() + static_cast<long>(m.pos), w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(m.pos));
            Word out = repl;
            out.insert(out.end(), rot.begin() + static_cast<long>(m.len), rot.end());
            w = cyclic_reduce(std::move(out));
            changed = true;
        }
    }
    return w;
}

// Canonical order on words: shorter first, then letterwise with positive
// letters preferred (so "a1" beats "a1^-1" as a class representative).
inline bool word_less_canonical(const Word& u, const Word& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    auto key = [](int x) { return 2 * std::abs(x) + (x < 0 ? 1 : 0); };
    for (size_t i = 0; i < u.size(); ++i)
        if (key(u[i]) != key(v[i])) return key(u[i]) < key(v[i]);
    return false;
}

// Canonical representative of the conjugacy class of w, merged with the class
// of w^-1 (free homotopy classes of unoriented curves).  Computed as the
// least word (in the canonical order) over the closure of the cyclically Dehn
// reduced word under rotations and half-relator swaps.
inline Word conjugacy_canonical(const Word& w0, int genus) {
    Word w = cyclic_dehn_reduce(w0, genus);
    if (w.empty()) return w;
    const auto rots = detail::relator_rotations(genus);
    const size_t half = 2 * static_cast<size_t>(genus);

    std::set<Word> closure;
    std::vector<Word> queue;
    auto push = [&](const Word& x) {
        if (closure.insert(x).second) queue.push_back(x);
    };
    push(w);
    push(cyclic_dehn_reduce(inverse_word(w), genus));
    while (!queue.empty()) {
        Word cur = queue.back();
        queue.pop_back();
        const size_t n = cur.size();
        // rotations
        for (size_t s = 1; s < n; ++s) {
            Word r(cur.begin() + static_cast<long>(s), cur.end());
            r.insert(r.end(), cur.begin(), cur.begin() + static_cast<long>(s));
            push(r);
        }
        // half-relator swaps on cyclic subwords of length exactly |r|/2
        if (n >= half) {
            for (size_t start = 0; start < n; ++start) {
                for (const Word& r : rots) {
                    size_t k = 0;
                    while (k < half && cur[(start + k) % n] == r[k]) ++k;
                    if (k == half) {
                        Word suffix(r.begin() + static_cast<long>(half), r.end());
                        Word repl = inverse_word(suffix);
                        Word rot(cur.begin() + static_cast<long>(start), cur.end());
                        rot.insert(rot.end(), cur.begin(), cur.begin() + static_cast<long>(start));
                        Word out = repl;
                        out.insert(out.end(), rot.begin() + static_cast<long>(half), rot.end());
                        out = cyclic_reduce(std::move(out));
                        if (out.size() == n) push(out);
                    }
                }
            }
        }
        if (closure.size() > 4096)
            throw NumericError("conjugacy_canonical: closure did not stay small");
    }
    return *std::min_element(closure.begin(), closure.end(), word_less_canonical);
}

// Cyclic words equal up to rotation?
inline bool cyclically_equal(const Word& u, const Word& v) {
    if (u.size() != v.size()) return false;
    const size_t n = u.size();
    if (n == 0) return true;
    for (size_t s = 0; s < n; ++s) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = (u[(s + i) % n] == v[i]);
        if (ok) return true;
    }
    return false;
}

inline Word word_power(const Word& w, int k) {
    Word out;
    for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

}  // namespace spinelab
