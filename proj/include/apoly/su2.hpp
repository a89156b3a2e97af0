#pragma once
// SU(2) representation scanning for knot groups and their Dehn fillings.
//
// Representations are parameterized by unit quaternions (SU(2) is the unit
// quaternion group), which keeps unitarity unconditional. A representation of
// a presentation is a tuple of unit quaternions making every relator word the
// identity. The solver is a seeded multi-start damped Gauss-Newton search on
// the 4n real coordinates with unit-norm residual rows; it is a search, not a
// decision procedure: an empty result means "not found within budget", never
// "does not exist".
//
// For a unit quaternion q = w + xi + yj + zk the corresponding SU(2) matrix
// is [[w+xi, y+zi], [-y+zi, w-xi]]; its eigenvalues are w +- i*|v| where v is
// the imaginary part. The Euclidean distance |q - 1| in R^4 equals the
// operator-norm distance of the matrix from the identity, so residuals below
// are reported in operator norm.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apoly/knotio.hpp"
#include "apoly/numeric.hpp"

namespace apoly {

// ---------------------------------------------------------------------------
// Unit quaternions
// ---------------------------------------------------------------------------

struct Quat {
    double w = 1, x = 0, y = 0, z = 0;

    friend Quat operator*(const Quat& a, const Quat& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    Quat conj() const { return {w, -x, -y, -z}; }  // inverse for unit norm
    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    Quat normalized() const {
        double n = norm();
        return {w / n, x / n, y / n, z / n};
    }
    double dist_identity() const {
        return std::sqrt((w - 1) * (w - 1) + x * x + y * y + z * z);
    }
    double trace() const { return 2 * w; }  // trace of the SU(2) matrix
};

inline Quat quat_word(const Word& word, const std::vector<Quat>& gens) {
    Quat acc;
    for (int letter : word) {
        int g = std::abs(letter) - 1;
        if (g < 0 || g >= (int)gens.size()) throw ApolyError("quat_word: letter out of range");
        acc = acc * (letter > 0 ? gens[g] : gens[g].conj());
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------------

struct SU2Rep {
    std::vector<Quat> generators;
    double residual = std::numeric_limits<double>::infinity();  // max relator defect
    bool non_cyclic = false;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["generators"] = nlohmann::json::array();
        for (const auto& q : generators) j["generators"].push_back({q.w, q.x, q.y, q.z});
        j["residual"] = residual;
        j["non_cyclic"] = non_cyclic;
        return j;
    }
};

struct BoundaryPoint {
    Cx m_eigenvalue{1, 0};
    Cx l_eigenvalue{1, 0};
    int fill_p = 0, fill_q = 0;  // the filling this point came from (0,0 = unfilled)

    nlohmann::json to_json() const {
        return {{"m", {m_eigenvalue.real(), m_eigenvalue.imag()}},
                {"l", {l_eigenvalue.real(), l_eigenvalue.imag()}},
                {"filling", {fill_p, fill_q}}};
    }
};

inline double boundary_distance(const BoundaryPoint& a, const BoundaryPoint& b) {
    return std::max(std::abs(a.m_eigenvalue - b.m_eigenvalue),
                    std::abs(a.l_eigenvalue - b.l_eigenvalue));
}

namespace su2_detail {

constexpr double kNonCyclicTol = 1e-6;    // commutator defect threshold
constexpr double kCommuteTol = 1e-6;      // boundary images must commute
constexpr double kDedupTol = 1e-6;        // trace multiset comparison

inline double commutator_defect(const Quat& a, const Quat& b) {
    return (a * b * a.conj() * b.conj()).dist_identity();
}

inline bool is_non_cyclic(const std::vector<Quat>& gens) {
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (commutator_defect(gens[i], gens[j]) > kNonCyclicTol) return true;
    return false;
}

// Fixed short words whose traces (conjugation invariants) identify a
// representation up to conjugacy at numerical tolerance: the generators, the
// longitude, and a fixed pattern list over the first two generators.
inline std::vector<Word> invariant_words(const KnotPresentation& pres) {
    std::vector<Word> words;
    for (int g = 1; g <= pres.ngens; ++g) words.push_back({g});
    if (!pres.longitude.empty()) words.push_back(pres.longitude);
    if (pres.ngens >= 2) {
        const std::vector<Word> patterns = {{1, 2},          {1, -2},      {1, 2, 1},
                                            {1, 2, 1, 2},    {1, 1, 2},    {1, 2, 2},
                                            {1, 2, 1, -2},   {1, 1, 2, 2}, {1, -2, 1, -2},
                                            {1, 2, -1, 2}};
        for (const auto& p : patterns) words.push_back(p);
    }
    for (int g = 1; g + 1 <= pres.ngens; ++g)
        if (g >= 3) words.push_back({g, g + 1});
    return words;
}

inline std::vector<double> trace_multiset(const std::vector<Word>& words,
                                          const std::vector<Quat>& gens) {
    std::vector<double> traces;
    traces.reserve(words.size());
    for (const auto& w : words) traces.push_back(quat_word(w, gens).trace());
    std::sort(traces.begin(), traces.end());
    return traces;
}

inline bool same_multiset(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > kDedupTol) return false;
    return true;
}

// Word image together with its derivative with respect to every generator
// coordinate (forward accumulation; quaternion products are bilinear).
inline void word_value_and_jacobian(const Word& word, const std::vector<Quat>& gens,
                                    Quat& value, std::vector<std::array<Quat, 4>>& deriv) {
    const int n = (int)gens.size();
    value = Quat{};
    deriv.assign(n, {Quat{0, 0, 0, 0}, Quat{0, 0, 0, 0}, Quat{0, 0, 0, 0}, Quat{0, 0, 0, 0}});
    const std::array<Quat, 4> basis = {Quat{1, 0, 0, 0}, Quat{0, 1, 0, 0}, Quat{0, 0, 1, 0},
                                       Quat{0, 0, 0, 1}};
    for (int letter : word) {
        int g = std::abs(letter) - 1;
        Quat G = letter > 0 ? gens[g] : gens[g].conj();
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < 4; ++c) deriv[v][c] = deriv[v][c] * G;
        for (int c = 0; c < 4; ++c) {
            Quat dG = letter > 0 ? basis[c] : basis[c].conj();
            Quat contrib = value * dG;
            deriv[g][c].w += contrib.w;
            deriv[g][c].x += contrib.x;
            deriv[g][c].y += contrib.y;
            deriv[g][c].z += contrib.z;
        }
        value = value * G;
    }
}

}  // namespace su2_detail

// Multi-start search for SU(2) representations: `attempts` seeded random
// starting tuples refined by damped Gauss-Newton on the residual vector
// (relator defects stacked with unit-norm defects). Returns every distinct
// solution with residual < tol, deduplicated up to conjugation by comparing
// sorted trace multisets of a fixed word list, sorted by residual then by
// quaternion coordinates. Deterministic for fixed inputs and seed.
inline std::vector<SU2Rep> find_su2(const KnotPresentation& pres, int attempts = 200,
                                    double tol = 1e-10, unsigned seed = 20240) {
    if (attempts < 1) throw ApolyError("find_su2: attempts must be >= 1");
    if (!(tol > 0)) throw ApolyError("find_su2: tol must be positive");
    const int n = pres.ngens;
    if (n == 0) return {};
    std::vector<Word> relators;
    for (const auto& r : pres.relators) {
        Word rr = cyclic_reduce(r);
        if (!rr.empty()) relators.push_back(rr);
    }
    const int m = 4 * (int)relators.size() + n;

    using Vec = Eigen::VectorXd;
    using Mat = Eigen::MatrixXd;
    auto unpack = [n](const Vec& v) {
        std::vector<Quat> gens(n);
        for (int g = 0; g < n; ++g) gens[g] = {v[4 * g], v[4 * g + 1], v[4 * g + 2], v[4 * g + 3]};
        return gens;
    };
    std::function<void(const Vec&, Vec&, Mat&)> fn = [&](const Vec& v, Vec& F, Mat& J) {
        auto gens = unpack(v);
        F.resize(m);
        J.setZero(m, 4 * n);
        int row = 0;
        Quat value;
        std::vector<std::array<Quat, 4>> deriv;
        for (const auto& rel : relators) {
            su2_detail::word_value_and_jacobian(rel, gens, value, deriv);
            F[row + 0] = value.w - 1;
            F[row + 1] = value.x;
            F[row + 2] = value.y;
            F[row + 3] = value.z;
            for (int g = 0; g < n; ++g)
                for (int c = 0; c < 4; ++c) {
                    J(row + 0, 4 * g + c) = deriv[g][c].w;
                    J(row + 1, 4 * g + c) = deriv[g][c].x;
                    J(row + 2, 4 * g + c) = deriv[g][c].y;
                    J(row + 3, 4 * g + c) = deriv[g][c].z;
                }
            row += 4;
        }
        for (int g = 0; g < n; ++g) {
            const Quat& q = gens[g];
            F[row] = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z - 1;
            J(row, 4 * g + 0) = 2 * q.w;
            J(row, 4 * g + 1) = 2 * q.x;
            J(row, 4 * g + 2) = 2 * q.y;
            J(row, 4 * g + 3) = 2 * q.z;
            ++row;
        }
    };

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto words = su2_detail::invariant_words(pres);
    std::vector<SU2Rep> found;
    std::vector<std::vector<double>> signatures;

    GaussNewtonOptions opt;
    opt.max_iterations = 160;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        Vec start(4 * n);
        for (int g = 0; g < n; ++g) {
            Quat q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
            q = q.normalized();
            start[4 * g] = q.w;
            start[4 * g + 1] = q.x;
            start[4 * g + 2] = q.y;
            start[4 * g + 3] = q.z;
        }
        auto res = gauss_newton<double>(fn, start, opt);
        auto gens = unpack(res.x);
        bool unit_ok = true;
        for (auto& q : gens) {
            if (std::abs(q.norm() - 1) > 1e-8) unit_ok = false;
            q = q.normalized();
        }
        if (!unit_ok) continue;
        double defect = 0;
        for (const auto& rel : relators)
            defect = std::max(defect, quat_word(rel, gens).dist_identity());
        if (!(defect < tol)) continue;
        auto sig = su2_detail::trace_multiset(words, gens);
        bool duplicate = false;
        for (const auto& s : signatures)
            if (su2_detail::same_multiset(s, sig)) { duplicate = true; break; }
        if (duplicate) continue;
        signatures.push_back(std::move(sig));
        found.push_back({gens, defect, su2_detail::is_non_cyclic(gens)});
    }

    std::sort(found.begin(), found.end(), [](const SU2Rep& a, const SU2Rep& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        for (size_t i = 0; i < std::min(a.generators.size(), b.generators.size()); ++i) {
            const Quat &qa = a.generators[i], &qb = b.generators[i];
            if (qa.w != qb.w) return qa.w < qb.w;
            if (qa.x != qb.x) return qa.x < qb.x;
            if (qa.y != qb.y) return qa.y < qb.y;
            if (qa.z != qb.z) return qa.z < qb.z;
        }
        return false;
    });
    return found;
}

// Eigenvalues of the commuting pair (meridian image, longitude image) read in
// a consistent eigenframe: diagonalize the element farther from +-identity
// (its imaginary axis is the better-conditioned one) and read both
// eigenvalues against that axis. The (m, l) vs (m^-1, l^-1) ambiguity is
// fixed by requiring Im(m) >= 0, ties broken by Im(l) >= 0.
inline BoundaryPoint boundary_point(const SU2Rep& rep, const KnotPresentation& pres, int fill_p = 0,
                                    int fill_q = 0) {
    Quat mq = quat_word({1}, rep.generators);
    Quat lq = quat_word(pres.longitude, rep.generators);
    if (su2_detail::commutator_defect(mq, lq) > su2_detail::kCommuteTol)
        throw NonCommutingBoundary("meridian and longitude images do not commute");

    auto imag_norm = [](const Quat& q) { return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z); };
    double mi = imag_norm(mq), li = imag_norm(lq);
    std::array<double, 3> axis{0, 0, 1};
    if (std::max(mi, li) > 1e-14) {
        const Quat& ref = mi >= li ? mq : lq;
        double rn = imag_norm(ref);
        axis = {ref.x / rn, ref.y / rn, ref.z / rn};
    }
    auto eigen_on_axis = [&axis](const Quat& q) {
        return Cx(q.w, q.x * axis[0] + q.y * axis[1] + q.z * axis[2]);
    };
    Cx m = eigen_on_axis(mq), l = eigen_on_axis(lq);
    if (m.imag() < 0 || (m.imag() == 0 && l.imag() < 0)) {
        m = std::conj(m);
        l = std::conj(l);
    }
    return {m, l, fill_p, fill_q};
}

// One filling's scan outcome: all representations found for the filled
// presentation, and the boundary point of the best non-cyclic one (if any).
struct FillingScan {
    int p = 0, q = 0;
    std::vector<SU2Rep> reps;
    bool found_non_cyclic = false;
    SU2Rep best_non_cyclic;
    BoundaryPoint boundary;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["filling"] = {p, q};
        j["found_non_cyclic"] = found_non_cyclic;
        j["representations"] = nlohmann::json::array();
        for (const auto& r : reps) j["representations"].push_back(r.to_json());
        if (found_non_cyclic) {
            j["best_non_cyclic"] = best_non_cyclic.to_json();
            j["boundary"] = boundary.to_json();
        }
        return j;
    }
};

inline std::vector<FillingScan> su2_scan(const KnotPresentation& pres,
                                         const std::vector<std::pair<int, int>>& fillings,
                                         int attempts = 200, double tol = 1e-10,
                                         unsigned seed = 20240) {
    std::vector<FillingScan> out;
    for (auto [p, q] : fillings) {
        FillingScan scan;
        scan.p = p;
        scan.q = q;
        auto filled = filled_presentation(pres, p, q);
        scan.reps = find_su2(filled, attempts, tol, seed);
        for (const auto& rep : scan.reps) {
            if (!rep.non_cyclic) continue;
            scan.found_non_cyclic = true;
            scan.best_non_cyclic = rep;
            scan.boundary = boundary_point(rep, filled, p, q);
            break;  // reps are sorted by residual; take the best
        }
        out.push_back(std::move(scan));
    }
    return out;
}

}  // namespace apoly
