#pragma once
// Representation-variety systems: polynomial equations whose solutions are
// the SL(2,C) representations of a knot group with boundary eigenvalue
// coordinates (M, L).
//
// The meridian generator is pinned to [[M,1],[0,1/M]] (upper-triangular, not
// diagonal, so parabolic limits stay in the solution set). Denominators are
// cleared by tracking a power of M per matrix: a group element is stored as
// an integer-entry matrix divided by M^k. Inverses never introduce new
// denominators because every generator matrix N satisfies det N = M^(2k),
// making the inverse adj(N)/M^k.

#include <string>
#include <vector>

#include "apoly/knotio.hpp"

namespace apoly {

// 2x2 polynomial matrix with denominator M^mpow.
struct PMat {
    SparsePoly a, b, c, d;
    int mpow = 0;
};

inline PMat pmat_identity(const std::vector<std::string>& vars) {
    auto one = SparsePoly::constant(1, vars);
    auto zero = SparsePoly(vars);
    return {one, zero, zero, one, 0};
}

inline PMat pmat_mul(const PMat& x, const PMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d, x.mpow + y.mpow};
}

// Inverse, valid for matrices with det = M^(2*mpow) (all ours).
inline PMat pmat_inv(const PMat& x) { return {x.d, -x.b, -x.c, x.a, x.mpow}; }

inline PMat word_matrix(const Word& w, const std::vector<PMat>& gens) {
    if (gens.empty()) throw ApolyError("word_matrix: no generator matrices");
    std::vector<std::string> vars = gens[0].a.vars();
    PMat acc = pmat_identity(vars);
    for (int x : w) {
        int g = std::abs(x) - 1;
        if (g < 0 || g >= (int)gens.size()) throw ApolyError("word_matrix: letter out of range");
        acc = pmat_mul(acc, x > 0 ? gens[g] : pmat_inv(gens[g]));
    }
    return acc;
}

// The pinned meridian [[M,1],[0,1/M]] as [[M^2,M],[0,1]] / M.
inline PMat meridian_matrix(const std::vector<std::string>& vars) {
    auto P = [&](const std::string& v, int k) { return var_power(vars, v, k); };
    return {P("M", 2), P("M", 1), SparsePoly(vars), SparsePoly::constant(1, vars), 1};
}

struct RepSystem {
    std::vector<std::string> unknowns;  // matrix-entry unknowns, then M, then L
    std::vector<SparsePoly> equations;
    std::vector<SparsePoly> cleared_denominators;  // monomial multiplied into each equation
    std::string m_name = "M", l_name = "L";
    // Equations implied by the system (not counted in `equations`): the
    // longitude (2,1)-entry and the generator trace relations. Sound to add
    // during elimination; they cut no true solutions.
    std::vector<SparsePoly> implied;
    std::string branch = "generic";
    // names of the entry unknowns only (excludes M, L)
    std::vector<std::string> entry_unknowns() const {
        std::vector<std::string> out;
        for (auto& u : unknowns)
            if (u != m_name && u != l_name) out.push_back(u);
        return out;
    }
};

namespace charvar_detail {

inline void relator_equations(RepSystem& sys, const std::vector<std::string>& vars,
                              const std::vector<PMat>& gens, const Word& rel) {
    PMat W = word_matrix(rel, gens);
    SparsePoly mk = var_power(vars, "M", W.mpow);
    sys.equations.push_back(W.a - mk);
    sys.equations.push_back(W.b);
    sys.equations.push_back(W.c);
    sys.equations.push_back(W.d - mk);
    for (int i = 0; i < 4; ++i) sys.cleared_denominators.push_back(mk);
}

inline void longitude_equation(RepSystem& sys, const std::vector<std::string>& vars,
                               const std::vector<PMat>& gens, const Word& lon) {
    PMat W = word_matrix(lon, gens);
    SparsePoly mk = var_power(vars, "M", W.mpow);
    sys.equations.push_back(W.a - var_power(vars, "L", 1) * mk);
    sys.cleared_denominators.push_back(mk);
    sys.implied.push_back(W.c);  // rho(lambda) is upper triangular on the variety
}

}  // namespace charvar_detail

// Generic representation system: the meridian generator gets the pinned
// matrix, every other generator a 4-unknown matrix with a det=1 equation;
// each relator contributes its 4 entry equations, and the longitude its
// (1,1)-entry-equals-L equation. `meridian` is the word expressing the
// meridian; it must be a single positive generator.
inline RepSystem build_rep_system(const KnotPresentation& pres, const Word& meridian = {1}) {
    if (meridian.size() != 1 || meridian[0] <= 0 || meridian[0] > pres.ngens)
        throw MeridianNotGenerator("meridian must be a single generator of the presentation");
    int mu = meridian[0];
    RepSystem sys;
    std::vector<std::string> vars;
    for (int g = 1; g <= pres.ngens; ++g) {
        if (g == mu) continue;
        for (const char* e : {"p", "q", "r", "s"}) vars.push_back(e + std::to_string(g));
    }
    sys.unknowns = vars;
    vars.push_back("M");
    vars.push_back("L");
    sys.unknowns.push_back("M");
    sys.unknowns.push_back("L");

    std::vector<PMat> gens;
    for (int g = 1; g <= pres.ngens; ++g) {
        if (g == mu) {
            gens.push_back(meridian_matrix(vars));
        } else {
            auto P = [&](const std::string& v) { return var_power(vars, v, 1); };
            gens.push_back({P("p" + std::to_string(g)), P("q" + std::to_string(g)),
                            P("r" + std::to_string(g)), P("s" + std::to_string(g)), 0});
        }
    }
    // det = 1 per generic generator
    for (int g = 1; g <= pres.ngens; ++g) {
        if (g == mu) continue;
        const PMat& X = gens[g - 1];
        sys.equations.push_back(X.a * X.d - X.b * X.c - SparsePoly::constant(1, vars));
        sys.cleared_denominators.push_back(SparsePoly::constant(1, vars));
        // implied: all Wirtinger generators are conjugate to the meridian
        sys.implied.push_back(var_power(vars, "M", 1) * (X.a + X.d) - var_power(vars, "M", 2) -
                              SparsePoly::constant(1, vars));
    }
    for (auto& r : pres.relators) charvar_detail::relator_equations(sys, vars, gens, r);
    charvar_detail::longitude_equation(sys, vars, gens, pres.longitude);
    return sys;
}

// True iff the abelian representation (every generator the meridian matrix)
// with L = 1 satisfies every equation identically in M — certifying that the
// reducible locus is present and L-1 divides the eliminant.
inline bool reducible_locus_check(const RepSystem& sys) {
    std::vector<SparsePoly> eqs = sys.equations;
    SparsePoly Mv = SparsePoly::variable(sys.m_name);
    for (auto eq : eqs) {
        SparsePoly e = eq;
        // generic entry unknowns -> corresponding meridian matrix entries
        for (auto& u : sys.entry_unknowns()) {
            if (e.degree(u) == 0) continue;
            char kind = u[0];
            SparsePoly val;
            // meridian = [[M,1],[0,1/M]]; entry unknowns are not denominator-
            // cleared, so substitute the rational entries via M-scaling:
            // p -> M, q -> 1, r -> 0, s -> 1/M. 1/M is handled by noting s
            // only appears polynomially: substitute s = S and clear at the
            // end by multiplying with M^deg_S, then set S -> 1/M exactly via
            // exponent bookkeeping. Simpler: substitute p=M, q=1, r=0 first.
            switch (kind) {
                case 'p': val = Mv; break;
                case 'q': val = SparsePoly::constant(1); break;
                case 'r': val = SparsePoly(); break;
                case 's': continue;  // handled below
                default: throw ApolyError("unexpected unknown name: " + u);
            }
            e = e.substitute(u, val);
        }
        // now handle s-unknowns: e is polynomial in the s's; substituting
        // s = 1/M is exact after multiplying by M^(total s-degree).
        for (auto& u : sys.entry_unknowns()) {
            if (u[0] != 's' || e.degree(u) == 0) continue;
            // write e = sum_k c_k * s^k, substitute s^k -> M^(d-k) (d = deg),
            // which equals M^d * e|_{s=1/M}
            auto cs = coeffs_in(e, u);
            int d = (int)cs.size() - 1;
            SparsePoly acc(e.vars());
            for (int k = 0; k <= d; ++k) acc += cs[k] * var_power(e.vars(), sys.m_name, d - k);
            e = acc;
        }
        e = e.substitute(sys.l_name, SparsePoly::constant(1));
        if (!e.is_zero()) return false;
    }
    return true;
}

// (M,L) -> (1/M, 1/L) followed by clearing with the minimal monomial and
// content/sign normalization: reflect the exponent box.
inline SparsePoly involution_image(const SparsePoly& p) {
    for (auto& v : p.vars())
        if (v != "M" && v != "L" && p.degree(v) > 0)
            throw ApolyError("involution_image expects a polynomial in M and L only");
    if (p.is_zero()) return p;
    int dm = p.degree("M"), dl = p.degree("L");
    int im = p.var_index("M"), il = p.var_index("L");
    std::vector<SparsePoly::Term> terms;
    for (auto t : p.terms()) {
        if (im >= 0) t.e[im] = dm - t.e[im];
        if (il >= 0) t.e[il] = dl - t.e[il];
        terms.push_back(std::move(t));
    }
    return SparsePoly::from_terms(p.vars(), std::move(terms)).content_primitive().second;
}

// ---------------------------------------------------------------------------
// Branch parameterizations used by the eliminator.
//
// All Wirtinger generators are conjugate to the meridian (trace M + 1/M,
// det 1). After pinning the meridian, the residual conjugation freedom is
// the meridian's commutant; it is spent normalizing the second generator:
//   * branch "riley": second generator [[M,0],[t,1/M]] — covers every
//     representation whose second generator has a nonzero (2,1) entry
//     (complete for irreducible 2-generator pairs);
//   * branches "upper"/"upper_flip": second generator upper-triangular
//     [[M,s],[0,1/M]] or [[1/M,s],[0,M]] — the complementary case. For
//     2-generator presentations the flip branch forces M^2=1 on the abelian
//     quotient and is omitted.
// Third and later generators get trace-reduced generic matrices
// [[p,q],[r,M^2+1-p]]/M with a det equation; in the upper branches the first
// such generator has its (1,1) entry pinned to 0 (the leftover commutant
// parameter), valid whenever its (2,1) entry is nonzero — if that entry also
// vanishes the representation lives in a smaller branch already covered.
inline std::vector<RepSystem> build_branch_systems(const KnotPresentation& pres) {
    int k = pres.ngens;
    std::vector<RepSystem> out;
    if (k <= 1) return out;  // unknot: reducible only, handled by the caller

    struct Gen2Form {
        std::string branch;
        bool riley;  // else upper-triangular
        bool flip;   // upper with swapped diagonal
    };
    std::vector<Gen2Form> forms;
    forms.push_back({"riley", true, false});
    forms.push_back({"upper", false, false});
    if (k >= 3) forms.push_back({"upper_flip", false, true});

    for (auto& f : forms) {
        RepSystem sys;
        sys.branch = f.branch;
        std::vector<std::string> vars;
        vars.push_back(f.riley ? "t2" : "s2");
        for (int g = 3; g <= k; ++g) {
            bool pinned = !f.riley && g == 3;
            if (!pinned) vars.push_back("p" + std::to_string(g));
            vars.push_back("q" + std::to_string(g));
            vars.push_back("r" + std::to_string(g));
        }
        sys.unknowns = vars;
        vars.push_back("M");
        vars.push_back("L");
        sys.unknowns.push_back("M");
        sys.unknowns.push_back("L");

        auto P = [&](const std::string& v, int e = 1) { return var_power(vars, v, e); };
        auto C1 = SparsePoly::constant(1, vars);
        auto Z = SparsePoly(vars);

        std::vector<PMat> gens;
        gens.push_back(meridian_matrix(vars));
        if (f.riley)
            gens.push_back({P("M", 2), Z, P("t2") * P("M"), C1, 1});
        else if (!f.flip)
            gens.push_back({P("M", 2), P("s2") * P("M"), Z, C1, 1});
        else
            gens.push_back({C1, P("s2") * P("M"), Z, P("M", 2), 1});
        for (int g = 3; g <= k; ++g) {
            bool pinned = !f.riley && g == 3;
            SparsePoly pv = pinned ? Z : P("p" + std::to_string(g));
            SparsePoly qv = P("q" + std::to_string(g));
            SparsePoly rv = P("r" + std::to_string(g));
            SparsePoly dv = P("M", 2) + C1 - pv;  // trace pinned to M + 1/M
            gens.push_back({pv, qv, rv, dv, 1});
            // det = 1:  p*d - q*r = M^2
            sys.equations.push_back(pv * dv - qv * rv - P("M", 2));
            sys.cleared_denominators.push_back(P("M", 2));
        }
        for (auto& r : pres.relators) charvar_detail::relator_equations(sys, vars, gens, r);
        charvar_detail::longitude_equation(sys, vars, gens, pres.longitude);
        out.push_back(std::move(sys));
    }
    return out;
}

}  // namespace apoly
