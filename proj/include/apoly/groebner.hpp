#pragma once
// Buchberger's algorithm with the sugar selection strategy and
// Gebauer-Moller pair pruning, plus full multivariate division and a
// reduced-basis post-pass. Block orders give elimination ideals.

#include <optional>
#include <vector>

#include "apoly/mpoly.hpp"

namespace apoly {

namespace gb_detail {

inline bool divides(const Exps& a, const Exps& b) {  // a | b
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}
inline Exps lcm(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}
inline bool coprime(const Exps& a, const Exps& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}
inline long tdeg(const Exps& e) {
    long d = 0;
    for (int x : e) d += x;
    return d;
}

struct Entry {
    SparsePoly p;
    Exps lt;
    Coef lc;
    long sugar;
};

struct Pair {
    int i, j;
    Exps lcm;
    long sugar;
};

}  // namespace gb_detail

// Remainder of p on division by G under ord: no term of the result is
// divisible by any leading term of G. G entries must share p's variable list.
inline SparsePoly normal_form(SparsePoly p, const std::vector<SparsePoly>& G,
                              const MonomialOrder& ord) {
    using namespace gb_detail;
    if (G.empty()) return p;
    std::vector<Exps> lts;
    std::vector<Coef> lcs;
    lts.reserve(G.size());
    for (auto& g : G) {
        auto& t = g.leading_term(ord);
        lts.push_back(t.e);
        lcs.push_back(t.c);
    }
    SparsePoly rem(p.vars());
    while (!p.is_zero()) {
        const auto& lt = p.leading_term(ord);
        bool reduced = false;
        for (std::size_t k = 0; k < G.size(); ++k) {
            if (!divides(lts[k], lt.e)) continue;
            Exps q(lt.e.size());
            for (std::size_t i = 0; i < q.size(); ++i) q[i] = lt.e[i] - lts[k][i];
            p -= SparsePoly::monomial(p.vars(), q, lt.c / lcs[k]) * G[k];
            reduced = true;
            break;
        }
        if (!reduced) {
            SparsePoly mono = SparsePoly::monomial(p.vars(), lt.e, lt.c);
            rem += mono;
            p -= mono;
        }
    }
    return rem;
}

// Groebner basis of the ideal generated by gens under ord. The result is the
// reduced basis, scaled so every element has coprime integer coefficients and
// positive leading coefficient (unique for the ideal and order).
inline std::vector<SparsePoly> groebner_basis(std::vector<SparsePoly> gens,
                                              const MonomialOrder& ord,
                                              const Budget& budget = Budget()) {
    using namespace gb_detail;
    // common variable frame
    std::vector<std::string> vars;
    for (auto& g : gens) vars = SparsePoly::var_union(vars, g.vars());
    std::vector<Entry> G;
    std::vector<Pair> P;

    auto push_poly = [&](SparsePoly h) {
        auto& t = h.leading_term(ord);
        Entry e{h, t.e, t.c, h.total_degree()};
        int idx = (int)G.size();
        // Gebauer-Moller update of the pair queue
        std::vector<Pair> fresh;
        fresh.reserve(G.size());
        for (int i = 0; i < idx; ++i) {
            Pair pr{i, idx, lcm(G[i].lt, e.lt), 0};
            pr.sugar = std::max(G[i].sugar + tdeg(pr.lcm) - tdeg(G[i].lt),
                                e.sugar + tdeg(pr.lcm) - tdeg(e.lt));
            fresh.push_back(std::move(pr));
        }
        // criterion M: drop (i,new) when another (j,new) has a strictly
        // smaller lcm dividing it
        std::vector<bool> keep(fresh.size(), true);
        for (std::size_t a = 0; a < fresh.size(); ++a)
            for (std::size_t b = 0; b < fresh.size(); ++b) {
                if (a == b || !keep[a] || !keep[b]) continue;
                if (fresh[b].lcm != fresh[a].lcm && divides(fresh[b].lcm, fresh[a].lcm))
                    keep[a] = false;
            }
        // criterion F: one representative per lcm value
        for (std::size_t a = 0; a < fresh.size(); ++a)
            for (std::size_t b = a + 1; b < fresh.size(); ++b)
                if (keep[a] && keep[b] && fresh[a].lcm == fresh[b].lcm) keep[b] = false;
        // Buchberger's coprimality criterion kills the whole lcm class
        for (std::size_t a = 0; a < fresh.size(); ++a)
            if (keep[a] && coprime(G[fresh[a].i].lt, e.lt)) keep[a] = false;
        // criterion B: retire old pairs strictly dominated by the new element
        std::vector<Pair> survivors;
        survivors.reserve(P.size());
        for (auto& pr : P) {
            bool drop = divides(e.lt, pr.lcm) && lcm(G[pr.i].lt, e.lt) != pr.lcm &&
                        lcm(G[pr.j].lt, e.lt) != pr.lcm;
            if (!drop) survivors.push_back(pr);
        }
        P = std::move(survivors);
        for (std::size_t a = 0; a < fresh.size(); ++a)
            if (keep[a]) P.push_back(std::move(fresh[a]));
        G.push_back(std::move(e));
    };

    for (auto& g : gens) {
        if (g.is_zero()) continue;
        push_poly(g.on_vars(vars).content_primitive().second);
    }

    while (!P.empty()) {
        budget.check("groebner_basis");
        // sugar strategy: smallest sugar, ties by smallest lcm under ord
        std::size_t best = 0;
        for (std::size_t k = 1; k < P.size(); ++k) {
            if (P[k].sugar < P[best].sugar ||
                (P[k].sugar == P[best].sugar && ord.less(P[k].lcm, P[best].lcm)))
                best = k;
        }
        Pair pr = P[best];
        P.erase(P.begin() + best);
        const Entry& A = G[pr.i];
        const Entry& B = G[pr.j];
        Exps ea(pr.lcm.size()), eb(pr.lcm.size());
        for (std::size_t i = 0; i < pr.lcm.size(); ++i) {
            ea[i] = pr.lcm[i] - A.lt[i];
            eb[i] = pr.lcm[i] - B.lt[i];
        }
        SparsePoly s = SparsePoly::monomial(vars, ea, Coef(1) / A.lc) * A.p -
                       SparsePoly::monomial(vars, eb, Coef(1) / B.lc) * B.p;
        std::vector<SparsePoly> basis;
        basis.reserve(G.size());
        for (auto& e : G) basis.push_back(e.p);
        SparsePoly r = normal_form(std::move(s), basis, ord);
        if (!r.is_zero()) push_poly(r.content_primitive().second);
    }

    // minimalize: drop elements whose leading term is divisible by another's
    std::vector<bool> keep(G.size(), true);
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j || !keep[i] || !keep[j]) continue;
            if (divides(G[j].lt, G[i].lt) && (G[j].lt != G[i].lt || j < i)) keep[i] = false;
        }
    std::vector<SparsePoly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (keep[i]) minimal.push_back(G[i].p);
    // reduce: each element fully reduced against the others
    std::vector<SparsePoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<SparsePoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        SparsePoly r = others.empty() ? minimal[i] : normal_form(minimal[i], others, ord);
        if (!r.is_zero()) reduced.push_back(r.content_primitive().second);
    }
    // deterministic output order: ascending leading term
    std::sort(reduced.begin(), reduced.end(), [&](const SparsePoly& a, const SparsePoly& b) {
        return ord.less(a.leading_term(ord).e, b.leading_term(ord).e);
    });
    return reduced;
}

// Verify the Groebner property: every S-polynomial reduces to zero.
inline bool is_groebner(const std::vector<SparsePoly>& G, const MonomialOrder& ord) {
    using namespace gb_detail;
    if (G.empty()) return true;
    std::vector<std::string> vars;
    for (auto& g : G) vars = SparsePoly::var_union(vars, g.vars());
    std::vector<SparsePoly> H;
    for (auto& g : G) H.push_back(g.on_vars(vars));
    for (std::size_t i = 0; i < H.size(); ++i)
        for (std::size_t j = i + 1; j < H.size(); ++j) {
            auto& ta = H[i].leading_term(ord);
            auto& tb = H[j].leading_term(ord);
            Exps l = lcm(ta.e, tb.e);
            Exps ea(l.size()), eb(l.size());
            for (std::size_t k = 0; k < l.size(); ++k) {
                ea[k] = l[k] - ta.e[k];
                eb[k] = l[k] - tb.e[k];
            }
            SparsePoly s = SparsePoly::monomial(vars, ea, Coef(1) / ta.c) * H[i] -
                           SparsePoly::monomial(vars, eb, Coef(1) / tb.c) * H[j];
            if (!normal_form(std::move(s), H, ord).is_zero()) return false;
        }
    return true;
}

// Members of G free of the first `elim_block` variables of `vars` — for a
// block-order basis these generate the elimination ideal.
inline std::vector<SparsePoly> elimination_part(const std::vector<SparsePoly>& G,
                                                const std::vector<std::string>& vars,
                                                int elim_block) {
    std::vector<SparsePoly> out;
    for (auto& g : G) {
        bool pure = true;
        for (int i = 0; i < elim_block && pure; ++i)
            if (g.degree(vars[i]) > 0) pure = false;
        if (pure) out.push_back(g);
    }
    return out;
}

}  // namespace apoly
