#pragma once
// Newton polygon of a bivariate polynomial in (M, L) and its side slopes.
//
// The polygon is the exact integer convex hull of the exponent vectors
// (M-exponent, L-exponent) of the support. Each hull side with primitive
// direction vector (a, b) contributes the slope -a/b (infinite when b = 0).
// The sign convention is the negative reciprocal of the side's slope in the
// exponent plane; it is calibrated so that the trefoil polynomial produced
// by this library yields the slope set {0, -6}.
//
// All arithmetic is exact integer arithmetic; no floating-point hulls.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apoly/mpoly.hpp"

namespace apoly {

struct LatticePoint {
    long long x = 0;  // M-exponent
    long long y = 0;  // L-exponent
    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

// One hull side, traversed counterclockwise. direction is the primitive
// integer vector along the side; lattice_length is the number of lattice
// steps, so to - from = lattice_length * direction.
struct PolygonSide {
    LatticePoint from, to;
    LatticePoint direction;
    long long lattice_length = 0;
};

// A rational boundary slope num/den with den >= 1, in lowest terms.
// The vertical slope (from a horizontal polygon side) is den == 0, num == 1.
struct Slope {
    long long num = 0;
    long long den = 1;

    bool is_infinite() const { return den == 0; }

    std::string str() const {
        if (is_infinite()) return "inf";
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Slope& a, const Slope& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Slope& a, const Slope& b) {
        if (a.is_infinite() || b.is_infinite()) return !a.is_infinite() && b.is_infinite();
        return a.num * b.den < b.num * a.den;  // denominators positive
    }
};

struct NewtonPolygon {
    std::vector<LatticePoint> vertices;  // counterclockwise; corners only
    std::vector<PolygonSide> sides;      // empty for a single-point hull

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["vertices"] = nlohmann::json::array();
        for (const auto& v : vertices) j["vertices"].push_back({v.x, v.y});
        j["sides"] = nlohmann::json::array();
        for (const auto& s : sides) {
            nlohmann::json js;
            js["direction"] = {s.direction.x, s.direction.y};
            js["length"] = s.lattice_length;
            j["sides"].push_back(js);
        }
        return j;
    }
};

namespace newton_detail {

// Orientation of the path O -> A -> B: positive for a left turn.
inline long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; returns hull corners in counterclockwise order
// starting from the lexicographically smallest point. Collinear boundary
// points are dropped, so the result is exactly the corner set.
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = (int)pts.size();
    if (n <= 2) return pts;
    std::vector<LatticePoint> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {  // upper hull
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

inline PolygonSide make_side(const LatticePoint& from, const LatticePoint& to) {
    long long dx = to.x - from.x, dy = to.y - from.y;
    long long g = std::gcd(std::abs(dx), std::abs(dy));
    return {from, to, {dx / g, dy / g}, g};
}

}  // namespace newton_detail

inline NewtonPolygon newton_polygon(const SparsePoly& p, const std::string& m_name = "M",
                                    const std::string& l_name = "L") {
    if (p.is_zero()) throw ZeroPolynomial("newton_polygon of zero polynomial");
    for (const auto& v : p.vars())
        if (v != m_name && v != l_name && p.degree(v) > 0)
            throw ApolyError("newton_polygon: polynomial involves variable " + v +
                             " beyond " + m_name + ", " + l_name);
    int mi = p.var_index(m_name), li = p.var_index(l_name);
    std::vector<LatticePoint> support;
    support.reserve(p.terms().size());
    for (const auto& t : p.terms())
        support.push_back({mi >= 0 ? t.e[mi] : 0, li >= 0 ? t.e[li] : 0});

    NewtonPolygon poly;
    poly.vertices = newton_detail::convex_hull(std::move(support));
    const int n = (int)poly.vertices.size();
    if (n == 2) {
        poly.sides.push_back(newton_detail::make_side(poly.vertices[0], poly.vertices[1]));
    } else if (n >= 3) {
        for (int i = 0; i < n; ++i)
            poly.sides.push_back(
                newton_detail::make_side(poly.vertices[i], poly.vertices[(i + 1) % n]));
    }
    return poly;
}

// Deduplicated, sorted slope set: one slope -a/b per side direction (a, b).
// A point hull has no sides and yields the empty set.
inline std::vector<Slope> boundary_slopes(const NewtonPolygon& poly) {
    std::vector<Slope> out;
    for (const auto& s : poly.sides) {
        long long a = s.direction.x, b = s.direction.y;
        Slope sl;
        if (b == 0) {
            sl = {1, 0};
        } else {
            sl.num = -a;
            sl.den = b;
            if (sl.den < 0) { sl.num = -sl.num; sl.den = -sl.den; }
        }
        out.push_back(sl);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<Slope> boundary_slopes(const SparsePoly& p, const std::string& m_name = "M",
                                          const std::string& l_name = "L") {
    return boundary_slopes(newton_polygon(p, m_name, l_name));
}

inline std::vector<std::string> slope_strings(const std::vector<Slope>& slopes) {
    std::vector<std::string> out;
    out.reserve(slopes.size());
    for (const auto& s : slopes) out.push_back(s.str());
    return out;
}

}  // namespace apoly
