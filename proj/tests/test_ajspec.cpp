#include <catch2/catch_amalgamated.hpp>

#include "apoly/ajspec.hpp"

using namespace apoly;

namespace {
SparsePoly V(const std::string& n) { return SparsePoly::variable(n); }
SparsePoly C(long c) { return SparsePoly::constant(Coef(c)); }
bool same(const SparsePoly& a, const SparsePoly& b) { return (a - b).is_zero(); }

QDiffOperator term(long coeff, int qexp, int q_pow, int e_pow) {
    return QDiffOperator::monomial(LaurentQ::q_power(qexp) * LaurentQ::constant(coeff), q_pow,
                                   e_pow);
}
}  // namespace

TEST_CASE("Laurent coefficients in q", "[ajspec]") {
    auto q2m1 = LaurentQ::q_power(2) - LaurentQ::constant(1);
    CHECK(q2m1.at_q1() == 0);
    CHECK(q2m1.str() == "-1 + q^2");
    CHECK((q2m1 * q2m1).at_q1() == 0);
    auto prod = LaurentQ::q_power(-1) * LaurentQ::q_power(3);
    REQUIRE(prod.coef.size() == 1);
    CHECK(prod.coef.begin()->first == 2);
    CHECK(LaurentQ::constant(0).is_zero());
    CHECK((q2m1 - q2m1).is_zero());
    CHECK(LaurentQ::q_power(-2).is_unit());
    CHECK_FALSE((LaurentQ::constant(2)).is_unit());
    CHECK(LaurentQ::constant(3).str() == "3");
    CHECK(LaurentQ::q_power(1).str() == "q");
}

TEST_CASE("normal form multiplication", "[ajspec]") {
    auto E = QDiffOperator::E();
    auto Q = QDiffOperator::Q();
    SECTION("the defining relation: E*Q = q*Q*E") {
        auto lhs = E * Q;
        REQUIRE(lhs.terms.size() == 1);
        auto [key, c] = *lhs.terms.begin();
        CHECK(key == std::make_pair(1, 1));
        CHECK(c == LaurentQ::q_power(1));
        CHECK(lhs == QDiffOperator::q() * Q * E);
    }
    SECTION("already-normal products pick up no q") {
        auto qe = Q * E;
        REQUIRE(qe.terms.size() == 1);
        CHECK(qe.terms.begin()->second == LaurentQ::constant(1));
        auto ee = E * E;
        REQUIRE(ee.terms.count({0, 2}) == 1);
    }
    SECTION("powers cross with q^(j*k)") {
        auto lhs = op_pow(E, 2) * op_pow(Q, 3);
        REQUIRE(lhs.terms.size() == 1);
        CHECK(lhs.terms.begin()->first == std::make_pair(3, 2));
        CHECK(lhs.terms.begin()->second == LaurentQ::q_power(6));
    }
    SECTION("q is central") {
        auto a = QDiffOperator::q() * E * Q;
        auto b = E * QDiffOperator::q() * Q;
        auto c = E * Q * QDiffOperator::q();
        CHECK(a == b);
        CHECK(b == c);
    }
    SECTION("cancellation prunes to the zero operator") {
        auto z = E * Q - QDiffOperator::q() * Q * E;
        CHECK(z.is_zero());
    }
}

TEST_CASE("inverses and powers", "[ajspec]") {
    auto E = QDiffOperator::E();
    auto Q = QDiffOperator::Q();
    CHECK(op_pow(E, -1) * E == QDiffOperator::constant(1));
    CHECK(E * op_pow(E, -1) == QDiffOperator::constant(1));
    CHECK(op_pow(Q, -2) * op_pow(Q, 2) == QDiffOperator::constant(1));
    auto m = QDiffOperator::q() * Q * E;  // q*Q*E
    CHECK(op_pow(m, -1) * m == QDiffOperator::constant(1));
    CHECK(m * op_pow(m, -1) == QDiffOperator::constant(1));
    CHECK(op_pow(E + Q, 0) == QDiffOperator::constant(1));
    CHECK_THROWS_AS(op_pow(E + Q, -1), MalformedCode);          // two terms
    CHECK_THROWS_AS(op_pow(term(2, 0, 0, 0), -1), MalformedCode);  // coeff 2 not a unit
}

TEST_CASE("operator text grammar", "[ajspec]") {
    SECTION("the documented example") {
        auto op = parse_operator("(q^2 - 1)*Q^-1*E^2 + 3");
        REQUIRE(op.terms.size() == 2);
        auto it = op.terms.find({-1, 2});
        REQUIRE(it != op.terms.end());
        CHECK(it->second == LaurentQ::q_power(2) - LaurentQ::constant(1));
        CHECK(op.terms.at({0, 0}) == LaurentQ::constant(3));
    }
    SECTION("whitespace insensitivity") {
        CHECK(parse_operator("Q^3*E+1") == parse_operator("  Q^3 * E + 1 "));
        CHECK(parse_operator("E-1") == parse_operator("E - 1"));
    }
    SECTION("unary minus and subtraction") {
        auto op = parse_operator("-Q + 2");
        CHECK(op.terms.at({1, 0}) == LaurentQ::constant(-1));
        CHECK(op.terms.at({0, 0}) == LaurentQ::constant(2));
        CHECK(parse_operator("E - E").is_zero());
    }
    SECTION("parenthesized products normalize") {
        CHECK(parse_operator("E*Q") == parse_operator("q*Q*E"));
        CHECK(parse_operator("(E*Q)^2") == parse_operator("q^3*Q^2*E^2"));
    }
    SECTION("malformed inputs") {
        CHECK_THROWS_AS(parse_operator("E +"), MalformedCode);
        CHECK_THROWS_AS(parse_operator("(Q"), MalformedCode);
        CHECK_THROWS_AS(parse_operator("Q^"), MalformedCode);
        CHECK_THROWS_AS(parse_operator("x + 1"), MalformedCode);
        CHECK_THROWS_AS(parse_operator("3 3"), MalformedCode);
        CHECK_THROWS_AS(parse_operator(""), MalformedCode);
    }
    SECTION("round trip through str") {
        for (const char* text : {"Q^3*E + 1", "E - 1", "(q^2 - 1)*Q^-1*E^2 + 3",
                                 "q*Q*E + Q^2 - 7", "2*E^2 - q^-1*E + 5"}) {
            auto op = parse_operator(text);
            CHECK(parse_operator(op.str()) == op);
        }
    }
}

TEST_CASE("JSON round trip", "[ajspec]") {
    auto op = parse_operator("(q^2 - 1)*Q^-1*E^2 + 3*Q");
    auto back = QDiffOperator::from_json(op.to_json());
    CHECK(back == op);
}

TEST_CASE("specialization at q = 1", "[ajspec]") {
    SECTION("E - 1 becomes L - 1") {
        CHECK(same(specialize_q1(parse_operator("E - 1")), V("L") - C(1)));
    }
    SECTION("Q^3*E + 1 becomes M^6 L + 1") {
        CHECK(same(specialize_q1(parse_operator("Q^3*E + 1")),
                   V("M").pow(6) * V("L") + C(1)));
    }
    SECTION("coefficients vanishing at q = 1 give ZeroOperator") {
        CHECK_THROWS_AS(specialize_q1(parse_operator("(q^2 - q)*E")), ZeroOperator);
        CHECK_THROWS_AS(specialize_q1(QDiffOperator::zero()), ZeroOperator);
    }
    SECTION("negative exponents are cleared by the tracked minimal monomial") {
        auto sp = specialize_q1_tracked(parse_operator("Q^-1*E^2 + 3"));
        CHECK(sp.q_shift == 1);
        CHECK(sp.e_shift == 0);
        CHECK(same(sp.poly, V("L").pow(2) + C(3) * V("M").pow(2)));

        auto sp2 = specialize_q1_tracked(parse_operator("E^-2 + Q"));
        CHECK(sp2.q_shift == 0);
        CHECK(sp2.e_shift == 2);
        CHECK(same(sp2.poly, C(1) + V("M").pow(2) * V("L").pow(2)));
    }
    SECTION("specialization is a ring homomorphism with tracked clearing") {
        auto check_hom = [](const std::string& ta, const std::string& tb) {
            auto a = parse_operator(ta), b = parse_operator(tb);
            auto sa = specialize_q1_tracked(a);
            auto sb = specialize_q1_tracked(b);
            auto sab = specialize_q1_tracked(a * b);
            // poly_ab / (M^2s L^e)_ab = (poly_a / ..a) * (poly_b / ..b), cleared:
            auto lhs = sab.poly * V("M").pow(2 * (sa.q_shift + sb.q_shift)) *
                       V("L").pow(sa.e_shift + sb.e_shift);
            auto rhs = sa.poly * sb.poly * V("M").pow(2 * sab.q_shift) * V("L").pow(sab.e_shift);
            CHECK(same(lhs, rhs));
        };
        check_hom("E - 1", "Q^3*E + 1");
        check_hom("Q^-1*E^2 + 3", "E^-2 + Q");
        check_hom("q*Q*E - 2", "Q^-2*E^-1 + E");
        check_hom("(q^2 - 1)*Q^-1*E^2 + 3", "E + 1");  // q^2-1 dies at q=1
    }
}

TEST_CASE("comparison against computed A-polynomials", "[ajspec]") {
    auto unknot = eliminate(wirtinger(parse_dt({})));
    auto trefoil = eliminate(wirtinger(parse_dt({4, 6, 2})));

    SECTION("E - 1 vs unknot: Match") {
        auto rep = aj_compare(specialize_q1(parse_operator("E - 1")), unknot);
        CHECK(rep.verdict == AJVerdict::Match);
        CHECK(rep.lhs_l1_power == 1);
        CHECK(rep.rhs_l1_power == 1);
    }
    SECTION("Q^3*E + 1 vs trefoil: MatchUpToAllowances") {
        auto rep = aj_compare(specialize_q1(parse_operator("Q^3*E + 1")), trefoil);
        CHECK(rep.verdict == AJVerdict::MatchUpToAllowances);
        CHECK(rep.allowance_l1_multiplicity);
        CHECK_FALSE(rep.allowance_m_only_factor);
        CHECK(same(rep.lhs_core, rep.rhs_core));
    }
    SECTION("E - 1 vs trefoil: Mismatch") {
        auto rep = aj_compare(specialize_q1(parse_operator("E - 1")), trefoil);
        CHECK(rep.verdict == AJVerdict::Mismatch);
    }
    SECTION("L + 1 vs unknot: Mismatch") {
        auto rep = aj_compare(V("L") + C(1), unknot);
        CHECK(rep.verdict == AJVerdict::Mismatch);
    }
    SECTION("unit and M-only cofactors are discarded with a note") {
        auto specialized =
            (V("L") - C(1)) * (V("M").pow(6) * V("L") + C(1)) * V("M").pow(3);
        auto rep = aj_compare(specialized, trefoil);
        CHECK(rep.verdict == AJVerdict::MatchUpToAllowances);
        CHECK(rep.allowance_unit_monomial);
        bool noted = false;
        for (const auto& row : rep.table)
            if (row.factor == "unit monomial") noted = true;
        CHECK(noted);
    }
    SECTION("an M-only polynomial cofactor (not a unit) is discarded too") {
        auto specialized = (V("L") - C(1)) * (V("M").pow(6) * V("L") + C(1)) *
                           (V("M").pow(2) + C(1));
        auto rep = aj_compare(specialized, trefoil);
        CHECK(rep.verdict == AJVerdict::MatchUpToAllowances);
        CHECK(rep.allowance_m_only_factor);
    }
    SECTION("identity embedding matches itself") {
        auto rep = aj_compare(trefoil.full, trefoil);
        CHECK(rep.verdict == AJVerdict::Match);
        auto rep2 = aj_compare(unknot.full, unknot);
        CHECK(rep2.verdict == AJVerdict::Match);
    }
    SECTION("report serializes") {
        auto rep = aj_compare(specialize_q1(parse_operator("Q^3*E + 1")), trefoil);
        auto j = rep.to_json();
        CHECK(j["verdict"] == "MatchUpToAllowances");
        CHECK(j["l_minus_one_power"] == nlohmann::json({0, 1}));
        REQUIRE(j["table"].size() >= 2);
        CHECK(j["table"][0]["factor"] == "core");
    }
}
