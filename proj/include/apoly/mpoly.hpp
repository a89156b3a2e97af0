#pragma once
// Exact sparse multivariate polynomials over arbitrary-precision rationals.
//
// Canonical form: terms are kept sorted ascending by exponent vector
// (lexicographic on the vector), no zero coefficients, all exponent vectors
// sized to the variable list. Variable lists are ordered and merged by union
// when two polynomials meet. Exponents are non-negative; Laurent callers
// clear denominators by monomial multiplication and record the multiplier.

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "apoly/core.hpp"

namespace apoly {

using Coef = mpq_class;
using Exps = std::vector<int>;

enum class OrderKind { lex, degrevlex, block };

// Monomial order on exponent vectors. For block orders the first
// `elim_block` variables form the elimination block.
struct MonomialOrder {
    OrderKind kind = OrderKind::degrevlex;
    int elim_block = 0;

    static MonomialOrder Lex() { return {OrderKind::lex, 0}; }
    static MonomialOrder DegRevLex() { return {OrderKind::degrevlex, 0}; }
    static MonomialOrder Block(int elim_block) { return {OrderKind::block, elim_block}; }

    // strict "a < b"
    bool less(const Exps& a, const Exps& b) const {
        switch (kind) {
            case OrderKind::lex:
                return lex_less(a, b, 0, (int)a.size());
            case OrderKind::degrevlex:
                return drl_less(a, b, 0, (int)a.size());
            case OrderKind::block: {
                int k = std::min<int>(elim_block, (int)a.size());
                if (drl_less(a, b, 0, k)) return true;
                if (drl_less(b, a, 0, k)) return false;
                return drl_less(a, b, k, (int)a.size());
            }
        }
        return false;
    }

private:
    static bool lex_less(const Exps& a, const Exps& b, int lo, int hi) {
        for (int i = lo; i < hi; ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
    static bool drl_less(const Exps& a, const Exps& b, int lo, int hi) {
        long da = 0, db = 0;
        for (int i = lo; i < hi; ++i) { da += a[i]; db += b[i]; }
        if (da != db) return da < db;
        // degrevlex tie-break: the LAST position where they differ decides,
        // and the one with the LARGER entry there is SMALLER.
        for (int i = hi - 1; i >= lo; --i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

class SparsePoly {
public:
    struct Term {
        Exps e;
        Coef c;
        bool operator==(const Term& o) const { return e == o.e && c == o.c; }
    };

private:
    std::vector<std::string> vars_;
    std::vector<Term> terms_;  // sorted ascending lexicographically by e

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return a.e < b.e; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().e == t.e)
                out.back().c += t.c;
            else
                out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const Term& t) { return t.c == 0; }),
                  out.end());
        terms_ = std::move(out);
    }

public:
    SparsePoly() = default;

    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static SparsePoly constant(const Coef& c, std::vector<std::string> vars = {}) {
        SparsePoly p(std::move(vars));
        if (c != 0) p.terms_.push_back({Exps(p.vars_.size(), 0), c});
        return p;
    }

    static SparsePoly variable(const std::string& name) {
        SparsePoly p({name});
        p.terms_.push_back({{1}, Coef(1)});
        return p;
    }

    static SparsePoly monomial(std::vector<std::string> vars, Exps e, Coef c) {
        SparsePoly p(std::move(vars));
        if (c != 0) p.terms_.push_back({std::move(e), std::move(c)});
        return p;
    }

    // Construct from an explicit term list (exponents sized to vars).
    static SparsePoly from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
        SparsePoly p(std::move(vars));
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 &&
                std::all_of(terms_[0].e.begin(), terms_[0].e.end(), [](int x) { return x == 0; }));
    }
    Coef constant_value() const { return terms_.empty() ? Coef(0) : terms_[0].c; }
    int var_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        return it == vars_.end() ? -1 : int(it - vars_.begin());
    }

    int degree(const std::string& var) const {
        int vi = var_index(var);
        if (vi < 0) return 0;
        int d = 0;
        for (auto& t : terms_) d = std::max(d, t.e[vi]);
        return d;
    }
    int min_degree(const std::string& var) const {
        int vi = var_index(var);
        if (vi < 0 || terms_.empty()) return 0;
        int d = terms_[0].e.empty() ? 0 : terms_[0].e[vi];
        for (auto& t : terms_) d = std::min(d, t.e[vi]);
        return d;
    }
    long total_degree() const {
        long d = 0;
        for (auto& t : terms_) {
            long s = 0;
            for (int x : t.e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
    std::size_t term_count() const { return terms_.size(); }

    // Remap this polynomial onto a variable superset (names must include all of vars_).
    SparsePoly on_vars(const std::vector<std::string>& newvars) const {
        std::vector<int> pos(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(newvars.begin(), newvars.end(), vars_[i]);
            if (it == newvars.end()) throw ApolyError("on_vars: missing variable " + vars_[i]);
            pos[i] = int(it - newvars.begin());
        }
        SparsePoly out(newvars);
        out.terms_.reserve(terms_.size());
        for (auto& t : terms_) {
            Exps e(newvars.size(), 0);
            for (std::size_t i = 0; i < vars_.size(); ++i) e[pos[i]] = t.e[i];
            out.terms_.push_back({std::move(e), t.c});
        }
        out.normalize();
        return out;
    }

    // Drop variables that never occur (keeps at least the empty list).
    SparsePoly compress_vars() const {
        std::vector<bool> used(vars_.size(), false);
        for (auto& t : terms_)
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (t.e[i]) used[i] = true;
        std::vector<std::string> nv;
        std::vector<int> keep;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) { nv.push_back(vars_[i]); keep.push_back((int)i); }
        SparsePoly out(nv);
        out.terms_.reserve(terms_.size());
        for (auto& t : terms_) {
            Exps e(keep.size());
            for (std::size_t j = 0; j < keep.size(); ++j) e[j] = t.e[keep[j]];
            out.terms_.push_back({std::move(e), t.c});
        }
        out.normalize();
        return out;
    }

    static std::vector<std::string> var_union(const std::vector<std::string>& a,
                                              const std::vector<std::string>& b) {
        std::vector<std::string> u = a;
        for (auto& v : b)
            if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
        return u;
    }

    static void align(SparsePoly& a, SparsePoly& b) {
        if (a.vars_ == b.vars_) return;
        auto u = var_union(a.vars_, b.vars_);
        a = a.on_vars(u);
        b = b.on_vars(u);
    }

    friend SparsePoly operator+(SparsePoly a, SparsePoly b) {
        align(a, b);
        a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
        a.normalize();
        return a;
    }
    friend SparsePoly operator-(SparsePoly a, SparsePoly b) { return std::move(a) + (-std::move(b)); }
    SparsePoly operator-() const {
        SparsePoly r = *this;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }
    friend SparsePoly operator*(SparsePoly a, SparsePoly b) {
        align(a, b);
        if (a.is_zero() || b.is_zero()) return SparsePoly(a.vars_);
        std::map<Exps, Coef> acc;
        for (auto& ta : a.terms_) {
            budget_checkpoint("polynomial multiplication");
            for (auto& tb : b.terms_) {
                Exps e = ta.e;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += tb.e[i];
                acc[std::move(e)] += ta.c * tb.c;
            }
        }
        SparsePoly r(a.vars_);
        r.terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (c != 0) r.terms_.push_back({e, c});
        return r;  // map iteration is already ascending-lex sorted
    }
    SparsePoly& operator+=(const SparsePoly& o) { *this = *this + o; return *this; }
    SparsePoly& operator-=(const SparsePoly& o) { *this = *this - o; return *this; }
    SparsePoly& operator*=(const SparsePoly& o) { *this = *this * o; return *this; }

    friend SparsePoly operator*(SparsePoly a, const Coef& k) {
        if (k == 0) return SparsePoly(a.vars_);
        for (auto& t : a.terms_) t.c *= k;
        return a;
    }

    SparsePoly pow(unsigned n) const {
        SparsePoly r = constant(1, vars_);
        SparsePoly base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = (n >>= 1) ? base * base : base;
        }
        return r;
    }

    bool operator==(const SparsePoly& o) const {
        SparsePoly a = *this, b = o;
        align(a, b);
        return a.terms_ == b.terms_;
    }
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }

    // Leading term under the given order (default degrevlex over stored vars).
    const Term& leading_term(const MonomialOrder& ord = MonomialOrder::DegRevLex()) const {
        if (terms_.empty()) throw ZeroPolynomial("leading_term of zero polynomial");
        const Term* best = &terms_[0];
        for (auto& t : terms_)
            if (ord.less(best->e, t.e)) best = &t;
        return *best;
    }

    SparsePoly derivative(const std::string& var) const {
        int vi = var_index(var);
        SparsePoly r(vars_);
        if (vi < 0) return r;
        for (auto& t : terms_) {
            if (t.e[vi] == 0) continue;
            Term nt = t;
            nt.c *= t.e[vi];
            nt.e[vi] -= 1;
            r.terms_.push_back(std::move(nt));
        }
        r.normalize();
        return r;
    }

    // a = c * p with p having coprime integer coefficients and a positive
    // leading coefficient under degrevlex. Returns {c, p}.
    std::pair<Coef, SparsePoly> content_primitive() const {
        if (is_zero()) throw ZeroPolynomial("content_primitive of zero polynomial");
        mpz_class num_gcd = 0, den_lcm = 1;
        for (auto& t : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.c.get_den().get_mpz_t());
        }
        Coef content(num_gcd, den_lcm);
        content.canonicalize();
        if (leading_term().c < 0) content = -content;
        SparsePoly p = *this;
        for (auto& t : p.terms_) { t.c /= content; t.c.canonicalize(); }
        return {content, p};
    }
    SparsePoly primitive() const { return content_primitive().second; }

    // Exact division; throws NotDivisible when remainder would be nonzero.
    SparsePoly exact_div(const SparsePoly& divisor) const {
        SparsePoly a = *this, b = divisor;
        align(a, b);
        if (b.is_zero()) throw NotDivisible("division by zero polynomial");
        if (a.is_zero()) return SparsePoly(a.vars_);
        MonomialOrder ord = MonomialOrder::Lex();
        SparsePoly q(a.vars_);
        const Term& ltb = b.leading_term(ord);
        while (!a.is_zero()) {
            const Term& lta = a.leading_term(ord);
            Exps qe(lta.e.size());
            for (std::size_t i = 0; i < qe.size(); ++i) {
                qe[i] = lta.e[i] - ltb.e[i];
                if (qe[i] < 0) throw NotDivisible("not divisible");
            }
            Coef qc = lta.c / ltb.c;
            SparsePoly m = monomial(a.vars_, qe, qc);
            q += m;
            a -= m * b;
        }
        return q;
    }
    bool divisible_by(const SparsePoly& d) const {
        try { (void)exact_div(d); return true; } catch (const NotDivisible&) { return false; }
    }

    template <typename T>
    T eval(const std::map<std::string, T>& point) const {
        T acc = T(0);
        std::vector<T> vals(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = point.find(vars_[i]);
            if (it == point.end()) throw ApolyError("eval: missing value for " + vars_[i]);
            vals[i] = it->second;
        }
        for (auto& t : terms_) {
            T m = T(t.c.get_d());
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                T base = vals[i];
                int n = t.e[i];
                while (n) {
                    if (n & 1) m = m * base;
                    base = base * base;
                    n >>= 1;
                }
            }
            acc = acc + m;
        }
        return acc;
    }

    // Substitute a polynomial for one variable (exact).
    SparsePoly substitute(const std::string& var, const SparsePoly& value) const {
        int vi = var_index(var);
        if (vi < 0) return *this;
        auto u = var_union(vars_, value.vars());
        SparsePoly val = value.on_vars(u);
        SparsePoly acc(u);
        int maxd = degree(var);
        std::vector<SparsePoly> powers(maxd + 1, SparsePoly::constant(1, u));
        for (int i = 1; i <= maxd; ++i) powers[i] = powers[i - 1] * val;
        int uvi = int(std::find(u.begin(), u.end(), var) - u.begin());
        for (auto& t : terms_) {
            Exps e(u.size(), 0);
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                auto it = std::find(u.begin(), u.end(), vars_[i]);
                e[it - u.begin()] = t.e[i];
            }
            int d = e[uvi];
            e[uvi] = 0;
            acc += monomial(u, e, t.c) * powers[d];
        }
        return acc;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Term& t = *it;
            std::string mono;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (t.e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (t.e[i] != 1) mono += "^" + std::to_string(t.e[i]);
            }
            Coef c = t.c;
            std::string cs = c.get_str();
            if (out.empty()) {
                if (mono.empty()) out = cs;
                else if (cs == "1") out = mono;
                else if (cs == "-1") out = "-" + mono;
                else out = cs + "*" + mono;
            } else {
                bool neg = c < 0;
                if (neg) cs = Coef(-c).get_str();
                out += neg ? " - " : " + ";
                if (mono.empty()) out += cs;
                else if (cs == "1") out += mono;
                else out += cs + "*" + mono;
            }
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["vars"] = vars_;
        nlohmann::json terms = nlohmann::json::array();
        for (auto& t : terms_) {
            nlohmann::json jt;
            jt["c"] = t.c.get_str();
            jt["e"] = t.e;
            terms.push_back(std::move(jt));
        }
        j["terms"] = std::move(terms);
        return j;
    }

    static SparsePoly from_json(const nlohmann::json& j) {
        SparsePoly p(j.at("vars").get<std::vector<std::string>>());
        for (auto& jt : j.at("terms")) {
            Term t;
            t.c = Coef(jt.at("c").get<std::string>());
            t.e = jt.at("e").get<std::vector<int>>();
            if (t.e.size() != p.vars_.size()) throw MalformedCode("polynomial JSON: exponent arity");
            p.terms_.push_back(std::move(t));
        }
        p.normalize();
        return p;
    }
};

inline SparsePoly operator*(const Coef& k, SparsePoly a) { return std::move(a) * k; }

}  // namespace apoly
