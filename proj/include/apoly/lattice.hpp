#pragma once
// Exact lattice computations for families of subgroups of Z^2 meeting a line.
//
// The object checked: an affine line gamma(k) = base + k*direction carrying
// infinitely many lattice points, a finite list of subgroups of Z^2 (each
// given by a 2x2 integer generator matrix whose columns generate it), and a
// designated excluded point. The checker reports, in exact integer
// arithmetic, which window points of the line lie in the union of the
// subgroups, whether the excluded point avoids every subgroup, and whether
// the uncovered portion of the line grows with the window (the finite-window
// shadow of "infinitely many line points stay uncovered").
//
// Membership v in <g1, g2> is decided by Cramer's rule over Z when the
// generator matrix is nonsingular, and by divisibility along the primitive
// direction in the rank <= 1 cases. No floating point anywhere.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <vector>

#include <nlohmann/json.hpp>

#include "apoly/core.hpp"

namespace apoly {

struct Vec2 {
    long long x = 0, y = 0;
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator*(long long k, const Vec2& v) { return {k * v.x, k * v.y}; }
};

inline long long det2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Subgroup of Z^2 generated by the columns (a,c) and (b,d) of [[a,b],[c,d]].
// Zero columns are allowed, so ranks 0, 1, 2 are all representable.
struct LatticeSubgroup {
    long long a = 1, b = 0, c = 0, d = 1;
    Vec2 gen1() const { return {a, c}; }
    Vec2 gen2() const { return {b, d}; }
    long long det() const { return a * d - b * c; }
    int rank() const {
        if (det() != 0) return 2;
        return (gen1() == Vec2{} && gen2() == Vec2{}) ? 0 : 1;
    }
};

namespace lattice_detail {

// v = t * g for integral t? Returns (true, t) or (false, 0). g != 0.
inline std::pair<bool, long long> multiple_of(const Vec2& v, const Vec2& g) {
    if (det2(v, g) != 0) return {false, 0};
    long long t;
    if (g.x != 0) {
        if (v.x % g.x != 0) return {false, 0};
        t = v.x / g.x;
    } else {
        if (v.y % g.y != 0) return {false, 0};
        t = v.y / g.y;
    }
    return {v == t * g, t};
}

}  // namespace lattice_detail

// Exact membership of v in the subgroup.
inline bool lattice_member(const LatticeSubgroup& K, const Vec2& v) {
    long long D = K.det();
    if (D != 0) {
        // Cramer over Z: c1 = det(v, g2)/D, c2 = det(g1, v)/D must be integers
        return det2(v, K.gen2()) % D == 0 && det2(K.gen1(), v) % D == 0;
    }
    Vec2 g1 = K.gen1(), g2 = K.gen2();
    if (g1 == Vec2{} && g2 == Vec2{}) return v == Vec2{};
    if (v == Vec2{}) return true;
    // rank 1: both generators lie on one line through the origin; the group
    // is gcd(t1, t2) * p for the primitive vector p on that line
    Vec2 nz = g1 == Vec2{} ? g2 : g1;
    long long g = std::gcd(std::abs(nz.x), std::abs(nz.y));
    Vec2 p{nz.x / g, nz.y / g};
    auto [ok1, t1] = lattice_detail::multiple_of(g1, p);
    auto [ok2, t2] = lattice_detail::multiple_of(g2, p);
    if (!ok1 || !ok2) return false;  // generators not parallel: impossible when det==0
    long long step = std::gcd(std::abs(t1), std::abs(t2));
    auto [okv, tv] = lattice_detail::multiple_of(v, p);
    return okv && step != 0 && tv % step == 0;
}

// Minimal t > 0 with t*direction in K, or 0 if no positive multiple lies in K.
inline long long min_positive_step(const LatticeSubgroup& K, const Vec2& direction) {
    long long D = K.det();
    if (D != 0) {
        long long u = det2(direction, K.gen2()) % D;
        long long w = det2(K.gen1(), direction) % D;
        // t*u = t*w = 0 (mod D): minimal t = |D| / gcd(|D|, gcd(u, w))
        long long g = std::gcd(std::abs(D), std::gcd(std::abs(u), std::abs(w)));
        return std::abs(D) / g;
    }
    // rank <= 1: t*direction in K iff K's primitive line contains direction
    if (K.rank() == 0) return 0;
    Vec2 nz = K.gen1() == Vec2{} ? K.gen2() : K.gen1();
    if (det2(direction, nz) != 0) return 0;
    long long g = std::gcd(std::abs(nz.x), std::abs(nz.y));
    Vec2 p{nz.x / g, nz.y / g};
    auto [ok1, t1] = lattice_detail::multiple_of(K.gen1(), p);
    auto [ok2, t2] = lattice_detail::multiple_of(K.gen2(), p);
    long long step = std::gcd(std::abs(t1), std::abs(t2));
    if (step == 0) return 0;
    auto [okd, td] = lattice_detail::multiple_of(direction, p);
    if (!okd || td == 0) return 0;
    // t*td must be divisible by step
    return step / std::gcd(step, std::abs(td));
}

struct LatticeFamily {
    Vec2 base;       // gamma(k) = base + k*direction
    Vec2 direction;  // must be primitive and nonzero
    std::vector<LatticeSubgroup> subgroups;
    Vec2 excluded_point;
};

struct LatticeReport {
    long long window = 0;
    std::vector<long long> covered;            // k with gamma(k) in some subgroup
    long long uncovered_count = 0;             // within |k| <= window
    long long uncovered_count_half = 0;        // within |k| <= window/2
    bool uncovered_grows = false;              // strict growth half -> full window
    std::vector<long long> per_subgroup_hits;  // line points covered by each subgroup
    bool excluded_outside_all = false;
    std::vector<std::size_t> excluded_member_of;  // subgroup indices containing it
    bool all_rank2 = false;
    long long h_step = 0;     // minimal t > 0 with t*direction in every subgroup (0 = none)
    bool h_infinite = false;  // such a t exists, so the common intersection is infinite

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["window"] = window;
        j["covered_k"] = covered;
        j["uncovered_count"] = uncovered_count;
        j["uncovered_count_half_window"] = uncovered_count_half;
        j["uncovered_grows"] = uncovered_grows;
        j["per_subgroup_hits"] = per_subgroup_hits;
        j["excluded_outside_all"] = excluded_outside_all;
        j["excluded_member_of"] = excluded_member_of;
        j["all_rank2"] = all_rank2;
        j["h_step"] = h_step;
        j["h_infinite"] = h_infinite;
        return j;
    }
};

inline LatticeReport lattice_lemma_check(const LatticeFamily& family, long long window) {
    if (window < 1) throw ApolyError("lattice_lemma_check: window must be >= 1");
    if (family.direction == Vec2{})
        throw ApolyError("lattice_lemma_check: direction must be nonzero");
    if (std::gcd(std::abs(family.direction.x), std::abs(family.direction.y)) != 1)
        throw ApolyError("lattice_lemma_check: direction must be primitive");
    if (det2(family.base, family.direction) == 0)
        throw LineThroughOrigin("the line base + k*direction passes through the origin");

    LatticeReport rep;
    rep.window = window;
    rep.per_subgroup_hits.assign(family.subgroups.size(), 0);
    const long long half = std::max<long long>(1, window / 2);
    long long covered_half = 0;
    for (long long k = -window; k <= window; ++k) {
        Vec2 v = family.base + k * family.direction;
        bool in_any = false;
        for (std::size_t i = 0; i < family.subgroups.size(); ++i)
            if (lattice_member(family.subgroups[i], v)) {
                ++rep.per_subgroup_hits[i];
                in_any = true;
            }
        if (in_any) {
            rep.covered.push_back(k);
            if (std::abs(k) <= half) ++covered_half;
        }
    }
    rep.uncovered_count = (2 * window + 1) - (long long)rep.covered.size();
    rep.uncovered_count_half = (2 * half + 1) - covered_half;
    rep.uncovered_grows = window > half && rep.uncovered_count > rep.uncovered_count_half;

    rep.excluded_outside_all = true;
    for (std::size_t i = 0; i < family.subgroups.size(); ++i)
        if (lattice_member(family.subgroups[i], family.excluded_point)) {
            rep.excluded_member_of.push_back(i);
            rep.excluded_outside_all = false;
        }

    rep.all_rank2 = !family.subgroups.empty();
    for (const auto& K : family.subgroups)
        if (K.rank() != 2) rep.all_rank2 = false;

    rep.h_step = family.subgroups.empty() ? 1 : 0;
    long long lcm_step = 1;
    bool all_have_step = true;
    for (const auto& K : family.subgroups) {
        long long t = min_positive_step(K, family.direction);
        if (t == 0) {
            all_have_step = false;
            break;
        }
        lcm_step = std::lcm(lcm_step, t);
    }
    if (all_have_step) rep.h_step = lcm_step;
    rep.h_infinite = rep.h_step > 0;
    return rep;
}

}  // namespace apoly
