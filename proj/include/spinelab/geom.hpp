#pragma once

// Plane hyperbolic geometry in the upper half-plane model.
//
// Orientation-preserving isometries are 2x2 real matrices acting as Moebius
// transformations; orientation-reversing ones (used only while assembling
// pants groups from hexagon seam reflections) are matrices of determinant -1
// acting as z -> (a zbar + b)/(c zbar + d).  Since all entries are real, the
// composition of two reversing maps is the ordinary matrix product, so
// reflections can be multiplied like everything else.
//
// Geodesics are stored by their ideal endpoints on R u {inf}.  Axes of
// hyperbolic matrices carry an orientation: first endpoint repelling, second
// attracting.
//
// Everything is templated on the scalar: double for the bulk geometry,
// long double where the Fuchsian-group assembly needs the extra digits.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace spinelab {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

template <class T>
struct TMat2 {
    T a = 1, b = 0, c = 0, d = 1;

    static TMat2 identity() { return {}; }

    T det() const { return a * d - b * c; }
    T trace() const { return a + d; }

    TMat2 operator*(const TMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    TMat2 inverse() const {
        const T dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    // Moebius action on the closed upper half-plane; z may be a boundary real.
    std::complex<T> apply(std::complex<T> z) const {
        if (std::isinf(z.real())) {
            if (std::abs(c) < T(1e-300)) return {std::numeric_limits<T>::infinity(), 0};
            return {a / c, 0};
        }
        const std::complex<T> num = std::complex<T>(a, 0) * z + std::complex<T>(b, 0);
        const std::complex<T> den = std::complex<T>(c, 0) * z + std::complex<T>(d, 0);
        if (std::abs(den) < T(1e-300)) return {std::numeric_limits<T>::infinity(), 0};
        return num / den;
    }

    // Action on a boundary point of R u {inf}.
    T apply_boundary(T x) const {
        if (std::isinf(x)) {
            if (std::abs(c) < T(1e-300)) return std::numeric_limits<T>::infinity();
            return a / c;
        }
        const T den = c * x + d;
        if (std::abs(den) < T(1e-300)) return std::numeric_limits<T>::infinity();
        return (a * x + b) / den;
    }

    TMat2 scaled(T s) const { return {a * s, b * s, c * s, d * s}; }

    // Normalize to det +-1 (sign of det preserved).
    TMat2 unit() const {
        const T s = T(1) / std::sqrt(std::abs(det()));
        return scaled(s);
    }

    T frobenius_distance(const TMat2& o) const {
        const T da = a - o.a, db = b - o.b, dc = c - o.c, dd = d - o.d;
        return std::sqrt(da * da + db * db + dc * dc + dd * dd);
    }

    T frobenius_norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

    template <class U>
    TMat2<U> cast() const {
        return {static_cast<U>(a), static_cast<U>(b), static_cast<U>(c), static_cast<U>(d)};
    }
};

using Mat2 = TMat2<double>;
using Mat2L = TMat2<long double>;

// Distance of M from +-identity, after unitizing.  Used for relator residuals
// and triviality checks.
template <class T>
T distance_to_identity(const TMat2<T>& m) {
    const TMat2<T> u = m.unit();
    const TMat2<T> id = TMat2<T>::identity();
    return std::min(u.frobenius_distance(id), u.scaled(T(-1)).frobenius_distance(id));
}

// Translation by length l along the imaginary axis, upward.
template <class T = double>
TMat2<T> axis_translation(T l) {
    const T e = std::exp(l / 2);
    return {e, 0, 0, 1 / e};
}

// Rotation by pi about the point i: z -> -1/z.  Swaps 0 and infinity.
template <class T = double>
TMat2<T> half_turn_at_i() {
    return {0, -1, 1, 0};
}

// Reflection in the geodesic |z - center| = radius (det -1, acts on zbar).
template <class T = double>
TMat2<T> reflection_in_circle(T center, T radius) {
    TMat2<T> m{center, radius * radius - center * center, 1, -center};
    return m.scaled(1 / radius);
}

// Reflection in the vertical geodesic x = x0.
template <class T = double>
TMat2<T> reflection_in_vertical(T x0) {
    return {-1, 2 * x0, 0, 1};
}

template <class T>
T hyperbolic_distance(std::complex<T> z, std::complex<T> w) {
    const T num = std::norm(z - w);
    const T den = 2 * z.imag() * w.imag();
    return std::acosh(1 + num / den);
}

// Geodesic by ideal endpoints; when oriented, p = repelling, q = attracting.
template <class T>
struct TGeodesic {
    T p = 0, q = std::numeric_limits<T>::infinity();

    bool is_vertical() const { return std::isinf(p) || std::isinf(q); }
    T finite_end() const { return std::isinf(p) ? q : p; }

    T center() const { return (p + q) / 2; }
    T radius() const { return std::abs(p - q) / 2; }

    std::complex<T> midpoint() const {
        if (is_vertical()) return {finite_end(), 1};
        return {center(), radius()};
    }

    template <class U>
    TGeodesic<U> cast() const {
        return {static_cast<U>(p), static_cast<U>(q)};
    }
};

using Geodesic = TGeodesic<double>;

template <class T>
bool is_hyperbolic(const TMat2<T>& m, T tol = T(1e-12)) {
    const TMat2<T> u = m.unit();
    return u.det() > 0 && std::abs(u.trace()) > 2 + tol;
}

// Translation length of a hyperbolic element (det normalized to 1).
template <class T>
T translation_length(const TMat2<T>& m) {
    const TMat2<T> u = m.unit();
    const T t = std::abs(u.trace()) / 2;
    if (t <= 1) return 0;
    return 2 * std::acosh(t);
}

// Fixed points of a hyperbolic matrix on the boundary, (repelling,
// attracting).
template <class T>
TGeodesic<T> axis_of(const TMat2<T>& m0) {
    const TMat2<T> m = m0.unit();
    const T tr = m.trace();
    const T disc = tr * tr - 4;
    if (disc <= 0) throw std::domain_error("axis_of: matrix not hyperbolic");
    const T sq = std::sqrt(disc);
    const T l_att = (tr > 0) ? (tr + sq) / 2 : (tr - sq) / 2;
    const T l_rep = (tr > 0) ? (tr - sq) / 2 : (tr + sq) / 2;
    auto fixed_point = [&](T lam) -> T {
        // Solve (M - lam) [x, 1]^T = 0 by the better conditioned row.
        if (std::abs(m.c) > std::abs(m.a - lam)) return -(m.d - lam) / m.c;
        if (std::abs(m.a - lam) < T(1e-300)) return std::numeric_limits<T>::infinity();
        return -m.b / (m.a - lam);
    };
    T p, q;
    if (std::abs(m.c) < T(1e-14) * (std::abs(m.a) + std::abs(m.d))) {
        const T denom = m.a - m.d;
        const T other = std::abs(denom) < T(1e-300) ? T(0) : -m.b / denom;
        if (std::abs(m.a) > std::abs(m.d)) {
            q = std::numeric_limits<T>::infinity();
            p = other;
        } else {
            p = std::numeric_limits<T>::infinity();
            q = other;
        }
    } else {
        p = fixed_point(l_rep);
        q = fixed_point(l_att);
    }
    return {p, q};
}

// Moebius map sending (p, q, foot) -> (0, inf, i); p, q boundary points and
// foot a point of the geodesic p--q.  Conjugating by the result sends a
// translation along p->q to an upward translation along the imaginary axis.
template <class T>
TMat2<T> normalizer(const TGeodesic<T>& g, std::complex<T> foot) {
    TMat2<T> base;
    if (std::isinf(g.q)) {
        base = {1, -g.p, 0, 1};
    } else if (std::isinf(g.p)) {
        base = {0, -1, 1, -g.q};
    } else {
        base = {1, -g.p, 1, -g.q};
    }
    if (base.det() < 0) base = TMat2<T>{-1, 0, 0, 1} * base;
    base = base.unit();
    const std::complex<T> w = base.apply(foot);
    const T s = w.imag();
    if (!(s > 0)) throw std::domain_error("normalizer: foot not on geodesic side");
    const T rs = std::sqrt(s);
    return TMat2<T>{1 / rs, 0, 0, rs} * base;
}

// Normalizer of a hyperbolic matrix: N m N^-1 = axis_translation(l(m)).
template <class T>
TMat2<T> normalizer(const TMat2<T>& m, std::complex<T> foot) {
    return normalizer(axis_of(m), foot);
}

// Closest point on geodesic g to the point z.
template <class T>
std::complex<T> foot_of_perpendicular(const TGeodesic<T>& g, std::complex<T> z) {
    if (g.is_vertical()) {
        const T x0 = g.finite_end();
        const T r = std::abs(z - std::complex<T>(x0, 0));
        return {x0, r};
    }
    const TMat2<T> n = normalizer(g, g.midpoint());
    const std::complex<T> w = n.apply(z);
    const std::complex<T> f{0, std::abs(w)};
    return n.inverse().apply(f);
}

template <class T>
T distance_to_geodesic(const TGeodesic<T>& g, std::complex<T> z) {
    return hyperbolic_distance(z, foot_of_perpendicular(g, z));
}

// Do the endpoint pairs link on the circle R u {inf}?  Linking <=> the
// geodesics cross transversally (or are equal).
template <class T>
bool endpoints_link(const TGeodesic<T>& g1, const TGeodesic<T>& g2) {
    auto ang = [](T x) { return std::isinf(x) ? T(M_PI) / 2 : std::atan(x); };
    const T a = ang(g1.p), b = ang(g1.q);
    const T c = ang(g2.p), d = ang(g2.q);
    auto between = [](T lo, T hi, T t) {
        if (lo < hi) return t > lo && t < hi;
        return t > lo || t < hi;
    };
    return between(a, b, c) != between(a, b, d);
}

// Intersection point of two crossing geodesics (assumes endpoints_link).
template <class T>
std::complex<T> geodesic_intersection(const TGeodesic<T>& g1, const TGeodesic<T>& g2) {
    const bool v1 = g1.is_vertical(), v2 = g2.is_vertical();
    if (v1 && v2) throw std::domain_error("geodesic_intersection: parallel verticals");
    if (v1 || v2) {
        const TGeodesic<T>& vert = v1 ? g1 : g2;
        const TGeodesic<T>& circ = v1 ? g2 : g1;
        const T dx = vert.finite_end() - circ.center();
        const T y2 = circ.radius() * circ.radius() - dx * dx;
        if (y2 <= 0) throw std::domain_error("geodesic_intersection: no crossing");
        return {vert.finite_end(), std::sqrt(y2)};
    }
    const T c1 = g1.center(), r1 = g1.radius();
    const T c2 = g2.center(), r2 = g2.radius();
    const T x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2 * (c2 - c1));
    const T y2 = r1 * r1 - (x - c1) * (x - c1);
    if (y2 <= 0) throw std::domain_error("geodesic_intersection: no crossing");
    return {x, std::sqrt(y2)};
}

// Unit tangent direction (as a complex number) of the oriented geodesic at a
// point z on it.  Conformality makes Euclidean angles hyperbolic angles.
template <class T>
std::complex<T> tangent_at(const TGeodesic<T>& g, std::complex<T> z) {
    if (g.is_vertical()) {
        const bool up = std::isinf(g.q);
        return {0, up ? T(1) : T(-1)};
    }
    const std::complex<T> radial = z - std::complex<T>(g.center(), 0);
    std::complex<T> t{radial.imag(), -radial.real()};
    if (g.q < g.p) t = -t;
    return t / std::abs(t);
}

// Angle in (0, 2pi) from oriented geodesic g1 to oriented geodesic g2 at
// their crossing point z, measured counterclockwise.
template <class T>
T crossing_angle(const TGeodesic<T>& g1, const TGeodesic<T>& g2, std::complex<T> z) {
    const std::complex<T> t1 = tangent_at(g1, z);
    const std::complex<T> t2 = tangent_at(g2, z);
    T ang = std::arg(t2 / t1);
    if (ang < 0) ang += 2 * T(M_PI);
    return ang;
}

}  // namespace spinelab
