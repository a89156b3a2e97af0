#pragma once
// A-polynomial extraction.  Each triangular branch system is reduced to a
// single plane curve in (M, L) by exact elimination (block-order Groebner
// bases or an iterated subresultant tower).  Branch curves are multiplied,
// symmetrized under the eigenvalue swap (M, L) -> (1/M, 1/L) -- which also
// restores any component only visible after re-pinning the meridian to its
// other eigenvector -- trimmed of unit factors, certified against numerical
// representation witnesses, and finally combined with the reducible factor
// L - 1 whose presence is established exactly on the full generic system.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "apoly/charvar.hpp"
#include "apoly/core.hpp"
#include "apoly/groebner.hpp"
#include "apoly/knotio.hpp"
#include "apoly/numeric.hpp"
#include "apoly/polyops.hpp"

namespace apoly {

enum class ElimStrategy { automatic, groebner, resultant_tower };

inline std::string to_string(ElimStrategy s) {
    switch (s) {
        case ElimStrategy::groebner: return "groebner";
        case ElimStrategy::resultant_tower: return "resultant_tower";
        default: return "auto";
    }
}

inline ElimStrategy parse_strategy(const std::string& s) {
    if (s == "auto" || s == "automatic") return ElimStrategy::automatic;
    if (s == "groebner") return ElimStrategy::groebner;
    if (s == "resultant_tower" || s == "resultant" || s == "tower")
        return ElimStrategy::resultant_tower;
    throw MalformedCode("unknown elimination strategy: " + s);
}

// One numerical certificate: a root (M0, L0) of the candidate polynomial and
// the branch system on which Gauss-Newton polished it to a representation.
struct FactorCertificate {
    Cx M0, L0;
    std::string branch;  // branch that realized the point; empty if none did
    double residual = std::numeric_limits<double>::infinity();
    bool polished = false;

    nlohmann::json to_json() const {
        return {{"M0", {M0.real(), M0.imag()}}, {"L0", {L0.real(), L0.imag()}},
                {"branch", branch},             {"residual", residual},
                {"polished", polished}};
    }
};

struct CertifyOptions {
    bool enabled = true;
    int starts = 14;         // multistart attempts per (branch, root)
    unsigned seed = 7001;    // deterministic seeding
    double tolerance = 1e-10;
};

struct APolyResult {
    SparsePoly full;        // (L-1)^l_minus_one_power * nontrivial, normalized
    SparsePoly nontrivial;  // squarefree, free of L-1, M-only and unit factors
    int l_minus_one_power = 0;
    std::string verdict;        // "certified" | "partial" | "trivial" | "unchecked"
    std::string strategy_used;  // strategies that produced the branch curves
    std::vector<std::pair<std::string, SparsePoly>> branch_parts;
    std::vector<FactorCertificate> certificates;

    // Unknot-style results keep no curve beyond the reducible line L - 1.
    std::string classification() const {
        return nontrivial.total_degree() == 0 ? "TrivialUnknotLike" : "NonTrivial";
    }

    nlohmann::json to_json() const {
        nlohmann::json parts = nlohmann::json::array();
        for (auto& [name, p] : branch_parts)
            parts.push_back({{"branch", name}, {"poly", p.to_json()}, {"text", p.to_string()}});
        nlohmann::json certs = nlohmann::json::array();
        for (auto& c : certificates) certs.push_back(c.to_json());
        return {{"A", full.to_json()},
                {"A_text", full.to_string()},
                {"nontrivial", nontrivial.to_json()},
                {"nontrivial_text", nontrivial.to_string()},
                {"l_minus_one_power", l_minus_one_power},
                {"classification", classification()},
                {"verdict", verdict},
                {"strategy", strategy_used},
                {"branch_parts", parts},
                {"certificates", certs}};
    }
};

namespace elim_detail {

// integer-primitive squarefree representative with canonical sign
inline SparsePoly trim(const SparsePoly& p) {
    return radical(p).content_primitive().second.compress_vars();
}

// Remove monomial unit factors M^a L^b (and any leftover integer content).
inline SparsePoly strip_units(SparsePoly p) {
    if (p.is_zero()) return p;
    for (const auto& v : std::vector<std::string>(p.vars())) {
        int m = p.min_degree(v);
        if (m > 0) p = p.exact_div(var_power(p.vars(), v, m));
    }
    return p.content_primitive().second.compress_vars();
}

// Divide out of p the part of its `var`-content that depends on m_name
// alone (plus integer content).  Such factors only add vertical lines
// M = const to the projection, which never survive into the final curve, and
// dropping them at every step caps the coefficient swell of the subresultant
// chain.
inline SparsePoly strip_vertical_content(SparsePoly p, const std::string& var,
                                         const std::string& m_name) {
    if (p.is_zero()) return p;
    SparsePoly c = content_in(p, var);
    if (c.total_degree() > 0) {
        bool m_only = true;
        for (const auto& v : c.vars())
            if (v != m_name && c.degree(v) > 0) m_only = false;
        if (m_only) p = p.exact_div(c);
    }
    return p.content_primitive().second;
}

// Reduce a tower output to its curve-relevant part: drop the factors that
// depend on m_name alone (vertical lines never reach the final curve).  A
// polynomial entirely in m_name collapses to 1.
inline SparsePoly strip_vertical(SparsePoly r, const RepSystem& branch) {
    if (r.is_zero()) return r;
    std::string x;
    for (const auto& v : r.vars())
        if (v != branch.m_name && r.degree(v) > 0) { x = v; break; }
    if (x.empty()) return SparsePoly::constant(1);
    return strip_vertical_content(std::move(r), x, branch.m_name);
}

// One tower level: eliminate `var` by pairing every equation against a
// minimal pivot.  A nonzero constant eliminant certifies that the pair -- and
// hence the whole subsystem -- projects into vertical lines only, i.e. it
// contributes no curve.  Longitude-free pairs are processed first: they are
// far cheaper and usually deliver that certificate before any pair involving
// the longitude equation has to be expanded.
inline std::vector<SparsePoly> tower_level(const std::vector<SparsePoly>& polys,
                                           const std::string& var, const RepSystem& branch,
                                           const Budget& budget, bool& branch_is_empty) {
    std::vector<SparsePoly> carry, active;
    for (const auto& p : polys) (deg_in(p, var) > 0 ? active : carry).push_back(p);
    if (active.empty()) return polys;
    std::size_t piv = 0;
    for (std::size_t i = 1; i < active.size(); ++i) {
        int di = deg_in(active[i], var), dp = deg_in(active[piv], var);
        if (di < dp || (di == dp && active[i].terms().size() < active[piv].terms().size()))
            piv = i;
    }
    // When the pivot's leading coefficient depends on m_name alone, every
    // other equation can first be pseudo-reduced modulo the pivot: the two
    // systems agree wherever that coefficient is nonzero, and the locus where
    // it vanishes only adds vertical lines.  The reduced pairs keep the
    // subresultant chains an order of magnitude smaller.
    SparsePoly piv_lc = lc_in(active[piv], var);
    bool reduce_first = true;
    for (const auto& v : piv_lc.vars())
        if (v != branch.m_name && piv_lc.degree(v) > 0) reduce_first = false;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (i == piv) continue;
        if (reduce_first && deg_in(active[i], var) > deg_in(active[piv], var)) {
            budget.check("resultant tower");
            SparsePoly red = pseudo_rem(active[i], active[piv], var);
            if (red.is_zero()) continue;  // multiple of the pivot: no new constraint
            red = strip_vertical(std::move(red), branch);
            if (red.total_degree() == 0) {
                branch_is_empty = true;
                return {};
            }
            if (deg_in(red, var) == 0) {  // var already eliminated for this one
                red = trim(red);
                if (std::find(carry.begin(), carry.end(), red) == carry.end())
                    carry.push_back(std::move(red));
                continue;
            }
            active[i] = std::move(red);
        }
        order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        int la = deg_in(active[a], branch.l_name) > 0, lb = deg_in(active[b], branch.l_name) > 0;
        if (la != lb) return la < lb;
        return active[a].terms().size() < active[b].terms().size();
    });
    for (std::size_t i : order) {
        budget.check("resultant tower");
        SparsePoly r = resultant(active[i], active[piv], var);
        if (r.is_zero()) continue;  // shared factor; other pairs still constrain
        r = strip_vertical(std::move(r), branch);
        if (r.total_degree() == 0) {
            branch_is_empty = true;
            return {};
        }
        r = trim(r);
        if (std::find(carry.begin(), carry.end(), r) == carry.end())
            carry.push_back(std::move(r));
    }
    return carry;
}

inline SparsePoly finish_plane_curve(std::vector<SparsePoly> polys, const std::string& what) {
    if (polys.empty())
        throw EmptyEliminant("elimination left no constraint on (M, L) in " + what);
    SparsePoly g = gcd_poly(polys);
    if (g.total_degree() == 0) return SparsePoly::constant(1);  // no curve component
    return elim_detail::trim(g);
}

inline SparsePoly branch_eliminant_tower(std::vector<SparsePoly> polys,
                                         const RepSystem& branch, const Budget& budget) {
    std::vector<std::string> remaining = branch.entry_unknowns();
    while (!remaining.empty()) {
        budget.check("resultant tower");
        // cheapest variable first: smallest minimal positive degree
        std::size_t best = 0;
        int best_deg = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            int mindeg = std::numeric_limits<int>::max();
            for (const auto& p : polys) {
                int d = deg_in(p, remaining[i]);
                if (d > 0) mindeg = std::min(mindeg, d);
            }
            if (mindeg < best_deg) best_deg = mindeg, best = i;
        }
        bool empty_branch = false;
        polys = tower_level(polys, remaining[best], branch, budget, empty_branch);
        if (empty_branch) return SparsePoly::constant(1);
        remaining.erase(remaining.begin() + (long)best);
    }
    return finish_plane_curve(std::move(polys), "branch " + branch.branch);
}

inline SparsePoly branch_eliminant_groebner(const std::vector<SparsePoly>& eqs,
                                            const RepSystem& branch, const Budget& budget) {
    std::vector<std::string> frame = branch.entry_unknowns();
    int nelim = (int)frame.size();
    frame.push_back(branch.m_name);
    frame.push_back(branch.l_name);
    std::vector<SparsePoly> gens;
    for (const auto& e : eqs) gens.push_back(e.on_vars(SparsePoly::var_union(frame, e.vars())));
    auto G = groebner_basis(gens, MonomialOrder::Block(nelim), budget);
    if (G.size() == 1 && G[0].total_degree() == 0)
        return SparsePoly::constant(1);  // unit ideal: branch carries nothing
    auto E = elimination_part(G, frame, nelim);
    return finish_plane_curve(std::move(E), "branch " + branch.branch);
}

// Strategy dispatch with fallback for `automatic`, applied to one subsystem.
inline SparsePoly system_eliminant(const std::vector<SparsePoly>& eqs, const RepSystem& branch,
                                   ElimStrategy strategy, const Budget& budget,
                                   std::string& used) {
    switch (strategy) {
        case ElimStrategy::groebner:
            used = "groebner";
            return branch_eliminant_groebner(eqs, branch, budget);
        case ElimStrategy::resultant_tower:
            used = "resultant_tower";
            return branch_eliminant_tower(eqs, branch, budget);
        default: break;
    }
    // The tower over split subsystems is by far the cheaper route; Groebner
    // remains the fallback for the rare system whose tower degenerates.
    try {
        used = "resultant_tower";
        return branch_eliminant_tower(eqs, branch, budget);
    } catch (const EmptyEliminant&) {
        used = "groebner";
        return branch_eliminant_groebner(eqs, branch, budget);
    }
}

// Drop monomial content in the meridian eigenvalue (it is invertible on the
// representation locus; components at M = 0 are artifacts of denominator
// clearing and get stripped from the final curve regardless).
inline SparsePoly drop_m_content(SparsePoly p, const std::string& m_name) {
    int k = p.min_degree(m_name);
    if (k > 0) p = p.exact_div(var_power(p.vars(), m_name, k));
    return p.content_primitive().second;
}

// Exact decomposition of one branch system along shared factors.  Write the
// system as S ∪ R where S holds the equations free of the longitude variable
// and R the rest, and let g = gcd(S), so every e in S is g * h_e.  A common
// zero either kills g or kills every cofactor h_e, hence
//     V(S ∪ R) = V({g} ∪ R)  ∪  V({h_e} ∪ R),
// and the branch curve is the product of the subsystem eliminants.  The
// shared factor is typically the small defining polynomial of the
// representation curve while the raw matrix entries attach large cofactors,
// so the split pieces eliminate orders of magnitude faster than the raw
// system.  The cofactor side is decomposed recursively; a constant nonzero
// cofactor makes that side empty (e = c * g cannot vanish away from g).
inline void split_systems(std::vector<SparsePoly> eqs, const RepSystem& branch,
                          const Budget& budget, int depth,
                          std::vector<std::vector<SparsePoly>>& out) {
    std::vector<SparsePoly> lfree, rest;
    for (auto& e : eqs) {
        if (deg_in(e, branch.l_name) > 0)
            rest.push_back(std::move(e));
        else if (std::find(lfree.begin(), lfree.end(), e) == lfree.end())
            lfree.push_back(std::move(e));
    }
    if (depth > 0 && lfree.size() >= 2) {
        budget.check("system split");
        SparsePoly g = drop_m_content(gcd_poly(lfree), branch.m_name);
        if (g.total_degree() > 0) {
            std::vector<SparsePoly> curve = rest;
            curve.push_back(g);
            out.push_back(std::move(curve));
            std::vector<SparsePoly> cofactors = rest;
            bool side_is_empty = false;
            for (const auto& e : lfree) {
                SparsePoly h = drop_m_content(e.exact_div(g).content_primitive().second,
                                              branch.m_name);
                if (h.total_degree() == 0) {
                    side_is_empty = true;
                    break;
                }
                cofactors.push_back(std::move(h));
            }
            if (!side_is_empty) split_systems(std::move(cofactors), branch, budget, depth - 1, out);
            return;
        }
    }
    std::vector<SparsePoly> whole = std::move(rest);
    for (auto& e : lfree) whole.push_back(std::move(e));
    out.push_back(std::move(whole));
}

// Branch curve: split the system, eliminate each subsystem, multiply.
inline SparsePoly branch_eliminant(const RepSystem& branch, ElimStrategy strategy,
                                   const Budget& budget, std::string& used) {
    std::vector<SparsePoly> eqs;
    for (const auto& e : branch.equations)
        if (!e.is_zero()) eqs.push_back(e.content_primitive().second);
    std::vector<std::vector<SparsePoly>> systems;
    split_systems(std::move(eqs), branch, budget, 4, systems);
    SparsePoly acc = SparsePoly::constant(1);
    std::vector<std::string> names;
    for (const auto& sys : systems) {
        std::string one;
        SparsePoly part = system_eliminant(sys, branch, strategy, budget, one);
        if (std::find(names.begin(), names.end(), one) == names.end()) names.push_back(one);
        // parts are squarefree; merging coprime remainders keeps acc squarefree
        if (part.total_degree() > 0)
            acc = (acc * part.exact_div(gcd_poly(acc, part))).content_primitive().second;
    }
    for (std::size_t i = 0; i < names.size(); ++i) used += (i ? "+" : "") + names[i];
    return acc.compress_vars();
}

// Absolute-value evaluation used to scale residuals of polynomial values.
inline double magnitude_scale(const SparsePoly& p, const std::map<std::string, Cx>& pt) {
    double s = 1.0;
    for (const auto& t : p.terms()) {
        double m = std::abs(t.c.get_d());
        for (std::size_t i = 0; i < t.e.size(); ++i)
            m *= std::pow(std::abs(pt.at(p.vars()[i])), t.e[i]);
        s += m;
    }
    return s;
}

struct CertifyOutcome {
    std::vector<FactorCertificate> certificates;
    bool sound = true;     // every root of the candidate polishes onto a branch
    bool complete = true;  // every branch witness lies on the candidate (or L=1)
};

// Best residual of a representation over the branch fiber at pinned (M, L).
// Single-parameter fibers are solved deterministically through the companion
// matrix of the least-degree defining equation; larger fibers fall back to
// seeded multistart over growing boxes.
inline double polish_fiber(const RepSystem& b, Cx Mp, Cx Lp, const CertifyOptions& opt,
                           unsigned salt) {
    auto entries = b.entry_unknowns();
    NumericSystem sys(b.equations, entries, {{b.m_name, Mp}, {b.l_name, Lp}});
    double best = std::numeric_limits<double>::infinity();
    auto fn = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&, Eigen::MatrixXcd&)>(
        [&sys](const Eigen::VectorXcd& x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) {
            sys(x, F, J);
        });
    if (entries.size() == 1) {
        const std::string& t = entries[0];
        std::vector<const SparsePoly*> defining;
        for (const auto& e : b.equations)
            if (deg_in(e, t) > 0) defining.push_back(&e);
        std::sort(defining.begin(), defining.end(),
                  [&](const SparsePoly* a, const SparsePoly* c) {
                      return deg_in(*a, t) < deg_in(*c, t);
                  });
        if (defining.size() > 2) defining.resize(2);
        std::map<std::string, Cx> base{{b.m_name, Mp}, {b.l_name, Lp}, {t, Cx(0, 0)}};
        for (const SparsePoly* e : defining) {
            auto coefs = coeffs_in(*e, t);
            std::vector<Cx> uni(coefs.size());
            for (std::size_t i = 0; i < coefs.size(); ++i) uni[i] = coefs[i].eval<Cx>(base);
            std::vector<Cx> starts;
            try {
                starts = poly_roots(uni);
            } catch (const ZeroPolynomial&) {
                continue;  // equation degenerates at this pinning
            }
            for (const Cx& s : starts) {
                Eigen::VectorXcd x0(1);
                x0 << s;
                auto r = gauss_newton<Cx>(fn, x0);
                best = std::min(best, r.residual);
            }
        }
        if (best < opt.tolerance) return best;
    }
    for (double box : {3.0, 9.0}) {
        auto ws = solve_multistart(sys, opt.starts, opt.seed + salt, box, opt.tolerance);
        for (const auto& w : ws) best = std::min(best, w.residual);
        if (best < opt.tolerance) break;
    }
    return best;
}

inline CertifyOutcome certify(const SparsePoly& nontrivial,
                              const std::vector<RepSystem>& branches,
                              const CertifyOptions& opt) {
    CertifyOutcome out;
    const std::vector<Cx> samples{Cx(0.83, 0.31), Cx(-0.41, 0.93)};
    unsigned salt = 0;
    for (const Cx& M0 : samples) {
        // roots of the candidate at M = M0
        auto coefs = coeffs_in(nontrivial, "L");
        std::vector<Cx> uni(coefs.size());
        for (std::size_t i = 0; i < coefs.size(); ++i)
            uni[i] = coefs[i].eval<Cx>({{"M", M0}, {"L", Cx(0, 0)}});
        std::vector<Cx> roots;
        try {
            roots = poly_roots(uni);
        } catch (const ZeroPolynomial&) {
            continue;  // M0 accidentally on a vertical component; next sample
        }
        // dedup close roots
        std::vector<Cx> uniq;
        for (const Cx& r : roots) {
            bool seen = false;
            for (const Cx& u : uniq)
                if (std::abs(u - r) < 1e-8) seen = true;
            if (!seen) uniq.push_back(r);
        }
        for (const Cx& L0 : uniq) {
            FactorCertificate cert;
            cert.M0 = M0;
            cert.L0 = L0;
            // A root may witness a representation at this pinning or at the
            // eigenvalue-swapped one; try both against every branch.
            std::vector<std::pair<Cx, Cx>> pins{{M0, L0}, {Cx(1, 0) / M0, Cx(1, 0) / L0}};
            for (const auto& b : branches) {
                for (std::size_t pi = 0; pi < pins.size() && !cert.polished; ++pi) {
                    double r = polish_fiber(b, pins[pi].first, pins[pi].second, opt,
                                            131 * salt++);
                    if (r < cert.residual) {
                        cert.residual = r;
                        cert.branch = b.branch + (pi == 1 ? "(swapped)" : "");
                        cert.polished = r < opt.tolerance;
                    }
                }
                if (cert.polished) break;
            }
            out.sound = out.sound && cert.polished;
            out.certificates.push_back(std::move(cert));
        }
        // completeness: branch witnesses at M0 with L free must land on the
        // candidate curve or on the reducible locus L = 1
        for (const auto& b : branches) {
            auto unknowns = b.entry_unknowns();
            unknowns.push_back(b.l_name);
            NumericSystem sys(b.equations, unknowns, {{b.m_name, M0}});
            auto ws = solve_multistart(sys, opt.starts, opt.seed + 977 * salt++, 3.0,
                                       opt.tolerance);
            for (const auto& w : ws) {
                Cx Lw = w.point.at(b.l_name);
                std::map<std::string, Cx> pt{{"M", M0}, {"L", Lw}};
                double val = std::abs(nontrivial.eval<Cx>(pt)) / magnitude_scale(nontrivial, pt);
                if (std::min(val, std::abs(Lw - Cx(1, 0))) > 1e-6) out.complete = false;
            }
        }
    }
    return out;
}

}  // namespace elim_detail

// Divide out every power of (L - 1).
inline SparsePoly strip_reducible(const SparsePoly& a) {
    if (a.is_zero()) return a;
    auto lm1 = SparsePoly::variable("L") - SparsePoly::constant(1);
    return factor_multiplicity(a, lm1).second;
}

inline APolyResult eliminate(const KnotPresentation& pres,
                             ElimStrategy strategy = ElimStrategy::automatic,
                             const Budget& budget = Budget(),
                             const CertifyOptions& certify_opt = {}) {
    using namespace elim_detail;
    BudgetScope scope(budget);  // exact kernels below also honor the limit
    APolyResult res;
    auto simplified = tietze_simplify(pres);
    auto branches = build_branch_systems(simplified);

    SparsePoly P = SparsePoly::constant(1);
    std::vector<std::string> used_strategies;
    for (const auto& b : branches) {
        std::string used;
        SparsePoly part = branch_eliminant(b, strategy, budget, used);
        if (std::find(used_strategies.begin(), used_strategies.end(), used) ==
            used_strategies.end())
            used_strategies.push_back(used);
        res.branch_parts.emplace_back(b.branch, part);
        // branch parts are squarefree: a coprime merge keeps the product so
        if (part.total_degree() > 0)
            P = (P * part.exact_div(gcd_poly(P, part))).content_primitive().second;
    }
    for (std::size_t i = 0; i < used_strategies.size(); ++i)
        res.strategy_used += (i ? "+" : "") + used_strategies[i];
    if (res.strategy_used.empty()) res.strategy_used = "none";

    // symmetrize under the eigenvalue swap, then reduce to a squarefree,
    // unit-free representative without the reducible line L = 1
    P = strip_units(P);
    if (P.total_degree() > 0) {
        SparsePoly Q = strip_units(involution_image(P));
        P = (P * Q.exact_div(gcd_poly(P, Q))).content_primitive().second;
        P = strip_units(P);
        auto lm1 = SparsePoly::variable("L") - SparsePoly::constant(1);
        P = factor_multiplicity(P, lm1).second;
        if (P.degree("L") > 0) P = primitive_in(P, "L");  // drop M-only factors
        P = strip_units(P);
    }
    res.nontrivial =
        P.total_degree() == 0 ? SparsePoly::constant(1) : P.on_vars({"L", "M"}).compress_vars();

    // reducible representations contribute one factor L - 1; this is checked
    // exactly on the untriangularized generic system
    res.l_minus_one_power = reducible_locus_check(build_rep_system(simplified)) ? 1 : 0;
    auto lm1 = SparsePoly::variable("L") - SparsePoly::constant(1);
    res.full = res.nontrivial * lm1.pow(res.l_minus_one_power);
    res.full = res.full.content_primitive().second;

    if (res.nontrivial.total_degree() == 0) {
        res.verdict = "trivial";
    } else if (!certify_opt.enabled) {
        res.verdict = "unchecked";
    } else {
        auto outcome = certify(res.nontrivial, branches, certify_opt);
        res.certificates = std::move(outcome.certificates);
        res.verdict = (outcome.sound && outcome.complete) ? "certified" : "partial";
    }
    return res;
}

}  // namespace apoly
