#pragma once
// Non-commutative operators in Z[q^±]<Q^±, E^±>/(EQ - qQE), their q = 1
// specialization under (E, Q) = (L, M^2), and comparison against classical
// A-polynomials.
//
// Operators are kept in normal form: every term is c(q) * Q^a * E^b with all
// Q-powers to the left of all E-powers and c(q) an integer Laurent polynomial
// in q. Multiplication rewrites E^j Q^k as q^(j*k) Q^k E^j. Operators are
// entered as text (grammar at parse_operator) or JSON; this library does not
// derive them from colored Jones data.

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "apoly/elim.hpp"

namespace apoly {

// ---------------------------------------------------------------------------
// Integer Laurent polynomials in q
// ---------------------------------------------------------------------------

struct LaurentQ {
    std::map<int, mpz_class> coef;  // q-exponent -> coefficient, zeros erased

    static LaurentQ constant(long v) {
        LaurentQ out;
        if (v != 0) out.coef[0] = v;
        return out;
    }
    static LaurentQ q_power(int k) {
        LaurentQ out;
        out.coef[k] = 1;
        return out;
    }

    bool is_zero() const { return coef.empty(); }

    void prune() {
        for (auto it = coef.begin(); it != coef.end();)
            it = it->second == 0 ? coef.erase(it) : std::next(it);
    }

    friend LaurentQ operator+(const LaurentQ& a, const LaurentQ& b) {
        LaurentQ out = a;
        for (const auto& [e, c] : b.coef) out.coef[e] += c;
        out.prune();
        return out;
    }
    friend LaurentQ operator-(const LaurentQ& a, const LaurentQ& b) {
        LaurentQ out = a;
        for (const auto& [e, c] : b.coef) out.coef[e] -= c;
        out.prune();
        return out;
    }
    friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
        LaurentQ out;
        for (const auto& [ea, ca] : a.coef)
            for (const auto& [eb, cb] : b.coef) out.coef[ea + eb] += ca * cb;
        out.prune();
        return out;
    }
    LaurentQ shifted(int k) const {  // multiply by q^k
        LaurentQ out;
        for (const auto& [e, c] : coef) out.coef[e + k] = c;
        return out;
    }

    mpz_class at_q1() const {
        mpz_class s = 0;
        for (const auto& [e, c] : coef) s += c;
        return s;
    }

    // unit in Z[q^±]: a single term with coefficient ±1
    bool is_unit() const {
        return coef.size() == 1 && (coef.begin()->second == 1 || coef.begin()->second == -1);
    }

    friend bool operator==(const LaurentQ& a, const LaurentQ& b) { return a.coef == b.coef; }

    std::string str() const {
        if (coef.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : coef) {
            mpz_class a = c < 0 ? mpz_class(-c) : c;
            out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            first = false;
            bool need_coeff = a != 1 || e == 0;
            if (need_coeff) out += a.get_str();
            if (e != 0) {
                if (need_coeff) out += "*";
                out += e == 1 ? "q" : "q^" + std::to_string(e);
            }
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Operators in normal form
// ---------------------------------------------------------------------------

struct QDiffOperator {
    // key (a, b) stands for Q^a * E^b; value is the Laurent coefficient
    std::map<std::pair<int, int>, LaurentQ> terms;

    static QDiffOperator zero() { return {}; }
    static QDiffOperator monomial(LaurentQ c, int q_exp, int e_exp) {
        QDiffOperator out;
        c.prune();
        if (!c.is_zero()) out.terms[{q_exp, e_exp}] = std::move(c);
        return out;
    }
    static QDiffOperator constant(long v) { return monomial(LaurentQ::constant(v), 0, 0); }
    static QDiffOperator q(int k = 1) { return monomial(LaurentQ::q_power(k), 0, 0); }
    static QDiffOperator Q(int k = 1) { return monomial(LaurentQ::constant(1), k, 0); }
    static QDiffOperator E(int k = 1) { return monomial(LaurentQ::constant(1), 0, k); }

    bool is_zero() const { return terms.empty(); }

    void prune() {
        for (auto it = terms.begin(); it != terms.end();) {
            it->second.prune();
            it = it->second.is_zero() ? terms.erase(it) : std::next(it);
        }
    }

    friend QDiffOperator operator+(const QDiffOperator& a, const QDiffOperator& b) {
        QDiffOperator out = a;
        for (const auto& [k, c] : b.terms) {
            auto it = out.terms.find(k);
            if (it == out.terms.end())
                out.terms[k] = c;
            else
                it->second = it->second + c;
        }
        out.prune();
        return out;
    }
    friend QDiffOperator operator-(const QDiffOperator& a, const QDiffOperator& b) {
        return a + QDiffOperator::constant(-1) * b;
    }

    // normal-form product: E^b1 Q^a2 = q^(b1*a2) Q^a2 E^b1
    friend QDiffOperator operator*(const QDiffOperator& a, const QDiffOperator& b) {
        QDiffOperator out;
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms) {
                std::pair<int, int> key{ka.first + kb.first, ka.second + kb.second};
                LaurentQ piece = (ca * cb).shifted(ka.second * kb.first);
                auto it = out.terms.find(key);
                if (it == out.terms.end())
                    out.terms[key] = std::move(piece);
                else
                    it->second = it->second + piece;
            }
        out.prune();
        return out;
    }

    friend bool operator==(const QDiffOperator& a, const QDiffOperator& b) {
        return a.terms == b.terms;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [k, c] : terms) {
            if (!first) out += " + ";
            first = false;
            bool simple = c.coef.size() == 1 && c.coef.begin()->second > 0;
            std::string cs = c.str();
            bool unit_coeff = cs == "1" && (k.first != 0 || k.second != 0);
            if (!unit_coeff) out += simple ? cs : "(" + cs + ")";
            bool printed = !unit_coeff;
            auto power = [&](const char* sym, int e) {
                if (e == 0) return;
                if (printed) out += "*";
                printed = true;
                out += sym;
                if (e != 1) out += "^" + std::to_string(e);
            };
            power("Q", k.first);
            power("E", k.second);
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [k, c] : terms) {
            nlohmann::json coeff = nlohmann::json::array();
            for (const auto& [e, v] : c.coef) coeff.push_back({e, v.get_str()});
            arr.push_back({{"Q", k.first}, {"E", k.second}, {"coeff", coeff}});
        }
        return {{"terms", arr}};
    }
    static QDiffOperator from_json(const nlohmann::json& j) {
        QDiffOperator out;
        for (const auto& t : j.at("terms")) {
            LaurentQ c;
            for (const auto& pair : t.at("coeff"))
                c.coef[pair.at(0).get<int>()] += mpz_class(pair.at(1).get<std::string>());
            c.prune();
            if (!c.is_zero()) out.terms[{t.at("Q").get<int>(), t.at("E").get<int>()}] = c;
        }
        return out;
    }
};

// Integer power; negative exponents require an invertible operator (a single
// term whose coefficient is a unit in Z[q^±]).
inline QDiffOperator op_pow(const QDiffOperator& a, int e) {
    if (e == 0) return QDiffOperator::constant(1);
    QDiffOperator base = a;
    if (e < 0) {
        if (a.terms.size() != 1 || !a.terms.begin()->second.is_unit())
            throw MalformedCode("negative power of a non-invertible operator");
        auto [key, c] = *a.terms.begin();
        auto [qa, eb] = key;
        // (c q^k Q^a E^b)^-1 = c q^(-k) q^(a b) Q^-a E^-b
        int qexp = -c.coef.begin()->first + qa * eb;
        LaurentQ inv;
        inv.coef[qexp] = c.coef.begin()->second;  // +-1 is its own inverse
        base = QDiffOperator::monomial(inv, -qa, -eb);
        e = -e;
    }
    QDiffOperator out = QDiffOperator::constant(1);
    for (int i = 0; i < e; ++i) out = out * base;
    return out;
}

// ---------------------------------------------------------------------------
// Text grammar
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ['^' signed-integer]
//   base   := 'q' | 'Q' | 'E' | integer | '(' expr ')'
// Whitespace is ignored everywhere.
// ---------------------------------------------------------------------------

namespace ajspec_detail {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw MalformedCode("operator text: " + what + " at position " + std::to_string(pos));
    }

    long integer() {
        skip();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
        if (pos == digits) fail("expected integer");
        return std::stol(text.substr(start, pos - start));
    }

    QDiffOperator base() {
        skip();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            QDiffOperator inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'q') {
            ++pos;
            return QDiffOperator::q();
        }
        if (c == 'Q') {
            ++pos;
            return QDiffOperator::Q();
        }
        if (c == 'E') {
            ++pos;
            return QDiffOperator::E();
        }
        if (std::isdigit((unsigned char)c)) return QDiffOperator::constant(integer());
        fail(std::string("unexpected character '") + c + "'");
    }

    QDiffOperator factor() {
        QDiffOperator b = base();
        skip();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            return op_pow(b, (int)integer());
        }
        return b;
    }

    QDiffOperator term() {
        QDiffOperator out = factor();
        while (true) {
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                out = out * factor();
            } else {
                break;
            }
        }
        return out;
    }

    QDiffOperator expr() {
        skip();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        QDiffOperator out = term();
        if (neg) out = QDiffOperator::constant(-1) * out;
        while (true) {
            skip();
            if (pos >= text.size()) break;
            if (text[pos] == '+') {
                ++pos;
                out = out + term();
            } else if (text[pos] == '-') {
                ++pos;
                out = out - term();
            } else {
                break;
            }
        }
        return out;
    }
};

}  // namespace ajspec_detail

inline QDiffOperator parse_operator(const std::string& text) {
    ajspec_detail::Parser p{text};
    QDiffOperator out = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return out;
}

// ---------------------------------------------------------------------------
// Specialization at q = 1 under (E, Q) = (L, M^2)
// ---------------------------------------------------------------------------

// The polynomial together with the Laurent-clearing monomial that was
// multiplied in: the operator's true q = 1 value is poly / (M^(2*q_shift) *
// L^(e_shift)). Shifts are the smallest that clear negative exponents.
struct SpecializedOperator {
    SparsePoly poly{std::vector<std::string>{"M", "L"}};
    int q_shift = 0;  // power of Q cleared
    int e_shift = 0;  // power of E cleared
};

inline SpecializedOperator specialize_q1_tracked(const QDiffOperator& op) {
    int min_q = 0, min_e = 0;
    bool any = false;
    std::vector<std::pair<std::pair<int, int>, mpz_class>> live;
    for (const auto& [k, c] : op.terms) {
        mpz_class v = c.at_q1();
        if (v == 0) continue;
        if (!any) {
            min_q = k.first;
            min_e = k.second;
            any = true;
        } else {
            min_q = std::min(min_q, k.first);
            min_e = std::min(min_e, k.second);
        }
        live.push_back({k, v});
    }
    if (!any) throw ZeroOperator("operator vanishes at q = 1");
    SpecializedOperator out;
    out.q_shift = std::max(0, -min_q);
    out.e_shift = std::max(0, -min_e);
    const std::vector<std::string> vars{"M", "L"};
    SparsePoly acc(vars);
    for (const auto& [k, v] : live) {
        SparsePoly mono = var_power(vars, "M", 2 * (k.first + out.q_shift)) *
                          var_power(vars, "L", k.second + out.e_shift);
        acc = acc + SparsePoly::constant(Coef(v), vars) * mono;
    }
    out.poly = acc;
    return out;
}

inline SparsePoly specialize_q1(const QDiffOperator& op) { return specialize_q1_tracked(op).poly; }

// ---------------------------------------------------------------------------
// Comparison against a computed A-polynomial
// ---------------------------------------------------------------------------

enum class AJVerdict { Match, MatchUpToAllowances, Mismatch };

inline std::string to_string(AJVerdict v) {
    switch (v) {
        case AJVerdict::Match: return "Match";
        case AJVerdict::MatchUpToAllowances: return "MatchUpToAllowances";
        case AJVerdict::Mismatch: return "Mismatch";
    }
    return "Mismatch";
}

struct AJFactorRow {
    std::string factor;
    std::string lhs;  // how the factor appears on the specialized side
    std::string rhs;  // how it appears on the A-polynomial side
    std::string note;
};

struct AJCompareReport {
    AJVerdict verdict = AJVerdict::Mismatch;
    std::vector<AJFactorRow> table;
    int lhs_l1_power = 0, rhs_l1_power = 0;
    SparsePoly lhs_core{std::vector<std::string>{"M", "L"}};
    SparsePoly rhs_core{std::vector<std::string>{"M", "L"}};
    bool allowance_unit_monomial = false;
    bool allowance_m_only_factor = false;
    bool allowance_l1_multiplicity = false;
    bool allowance_multiplicity_collapse = false;

    nlohmann::json to_json() const {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : table)
            rows.push_back(
                {{"factor", r.factor}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"note", r.note}});
        return {{"verdict", to_string(verdict)},
                {"table", rows},
                {"l_minus_one_power", {lhs_l1_power, rhs_l1_power}},
                {"core", {lhs_core.to_string(), rhs_core.to_string()}},
                {"allowances",
                 {{"unit_monomial", allowance_unit_monomial},
                  {"m_only_factor", allowance_m_only_factor},
                  {"l_minus_one_multiplicity", allowance_l1_multiplicity},
                  {"multiplicity_collapse", allowance_multiplicity_collapse}}}};
    }
};

namespace ajspec_detail {

struct ReducedSide {
    SparsePoly core{std::vector<std::string>{"M", "L"}};
    int l1_power = 0;
    SparsePoly m_only{std::vector<std::string>{"M"}};  // discarded M-only cofactor
    bool unit_stripped = false;
    bool m_only_nontrivial = false;
    bool multiplicity_dropped = false;
};

inline ReducedSide reduce_side(const SparsePoly& input) {
    if (input.is_zero()) throw ZeroPolynomial("aj_compare on the zero polynomial");
    ReducedSide out;
    SparsePoly p = input.on_vars(SparsePoly::var_union(input.vars(), {"M", "L"}));
    out.unit_stripped = p.min_degree("M") > 0 || p.min_degree("L") > 0;
    p = elim_detail::strip_units(p);

    auto vars = p.vars();
    SparsePoly l1 = var_power(vars, "L", 1) - SparsePoly::constant(1, vars);
    auto [mult, rest] = factor_multiplicity(p, l1);
    out.l1_power = mult;

    if (deg_in(rest, "L") <= 0) {
        out.m_only = rest.compress_vars();
        out.m_only_nontrivial = rest.total_degree() > 0;
        out.core = SparsePoly::constant(1, {"M", "L"});
    } else {
        SparsePoly content = content_in(rest, "L");
        out.m_only = content.compress_vars();
        out.m_only_nontrivial = content.total_degree() > 0;
        SparsePoly core0 = primitive_in(rest, "L").content_primitive().second;
        SparsePoly core1 = radical(core0).content_primitive().second;
        out.multiplicity_dropped = !(core0 - core1).is_zero();
        out.core = core1.on_vars(SparsePoly::var_union(core1.vars(), {"M", "L"}));
    }
    return out;
}

}  // namespace ajspec_detail

inline AJCompareReport aj_compare(const SparsePoly& specialized, const APolyResult& result) {
    auto lhs = ajspec_detail::reduce_side(specialized);
    auto rhs = ajspec_detail::reduce_side(result.full);

    AJCompareReport rep;
    rep.lhs_l1_power = lhs.l1_power;
    rep.rhs_l1_power = rhs.l1_power;
    rep.lhs_core = lhs.core;
    rep.rhs_core = rhs.core;
    rep.allowance_unit_monomial = lhs.unit_stripped || rhs.unit_stripped;
    rep.allowance_m_only_factor = lhs.m_only_nontrivial || rhs.m_only_nontrivial;
    rep.allowance_l1_multiplicity = lhs.l1_power != rhs.l1_power;
    rep.allowance_multiplicity_collapse = lhs.multiplicity_dropped || rhs.multiplicity_dropped;

    bool cores_equal = (lhs.core - rhs.core).is_zero();
    if (!cores_equal)
        rep.verdict = AJVerdict::Mismatch;
    else if (rep.allowance_unit_monomial || rep.allowance_m_only_factor ||
             rep.allowance_l1_multiplicity || rep.allowance_multiplicity_collapse)
        rep.verdict = AJVerdict::MatchUpToAllowances;
    else
        rep.verdict = AJVerdict::Match;

    rep.table.push_back({"core", lhs.core.to_string(), rhs.core.to_string(),
                         cores_equal ? "equal" : "different — drives the verdict"});
    rep.table.push_back({"(L - 1)^k", "k = " + std::to_string(lhs.l1_power),
                         "k = " + std::to_string(rhs.l1_power),
                         rep.allowance_l1_multiplicity ? "multiplicities compared loosely"
                                                       : "equal"});
    if (lhs.m_only_nontrivial || rhs.m_only_nontrivial)
        rep.table.push_back({"M-only cofactor",
                             lhs.m_only_nontrivial ? lhs.m_only.to_string() : "1",
                             rhs.m_only_nontrivial ? rhs.m_only.to_string() : "1",
                             "discarded (polynomials in Q allowance)"});
    if (rep.allowance_unit_monomial)
        rep.table.push_back({"unit monomial", lhs.unit_stripped ? "stripped" : "none",
                             rhs.unit_stripped ? "stripped" : "none", "discarded"});
    if (rep.allowance_multiplicity_collapse)
        rep.table.push_back({"repeated factors",
                             lhs.multiplicity_dropped ? "collapsed" : "squarefree",
                             rhs.multiplicity_dropped ? "collapsed" : "squarefree",
                             "compared squarefree"});
    return rep;
}

}  // namespace apoly
