#include <catch2/catch_amalgamated.hpp>

#include "apoly/elim.hpp"

using namespace apoly;

namespace {
SparsePoly V(const std::string& n) { return SparsePoly::variable(n); }
SparsePoly C(long c) { return SparsePoly::constant(Coef(c)); }

// canonical representative used by the pipeline: integer-primitive, fixed sign
SparsePoly canon(const SparsePoly& p) { return p.content_primitive().second; }

SparsePoly trefoil_nontrivial() {
    auto M = V("M"), L = V("L");
    return canon(L * M.pow(6) + C(1));
}
SparsePoly fig8_nontrivial() {
    auto M = V("M"), L = V("L");
    return canon(L * L * M.pow(4) -
                 L * (M.pow(8) - M.pow(6) - C(2) * M.pow(4) - M.pow(2) + C(1)) + M.pow(4));
}
bool same(const SparsePoly& a, const SparsePoly& b) { return (a - b).is_zero(); }
}  // namespace

TEST_CASE("braid presentation of the trefoil, eliminated from scratch") {
    // <a, b | aba = bab>, meridian a, longitude (ab)^3 a^-6: (ab)^3 is central
    // so the longitude commutes with a, and its total exponent is zero.
    KnotPresentation pres;
    pres.ngens = 2;
    pres.relators = {{1, 2, 1, -2, -1, -2}};
    pres.longitude = {1, 2, 1, 2, 1, 2, -1, -1, -1, -1, -1, -1};
    pres.writhe = 3;

    auto res = eliminate(pres);
    REQUIRE(res.l_minus_one_power == 1);
    REQUIRE(same(res.nontrivial, trefoil_nontrivial()));
    REQUIRE(same(res.full, canon((V("L") - C(1)) * trefoil_nontrivial())));
    REQUIRE(res.verdict == "certified");
}

TEST_CASE("trefoil from its diagram") {
    auto pres = wirtinger(parse_dt({4, 6, 2}));
    SECTION("default strategy") {
        auto res = eliminate(pres);
        REQUIRE(same(res.nontrivial, trefoil_nontrivial()));
        REQUIRE(res.l_minus_one_power == 1);
        REQUIRE(res.verdict == "certified");
        REQUIRE(same(strip_reducible(res.full), res.nontrivial));
        // certification produced at least one polished representation witness
        bool riley_witness = false;
        for (auto& c : res.certificates)
            if (c.polished && c.branch.find("riley") != std::string::npos) riley_witness = true;
        REQUIRE(riley_witness);
    }
    SECTION("explicit strategies agree") {
        auto g = eliminate(pres, ElimStrategy::groebner);
        auto t = eliminate(pres, ElimStrategy::resultant_tower);
        REQUIRE(same(g.nontrivial, t.nontrivial));
        REQUIRE(g.strategy_used == "groebner");
        REQUIRE(t.strategy_used == "resultant_tower");
        REQUIRE(same(g.nontrivial, trefoil_nontrivial()));
    }
}

TEST_CASE("figure-eight from its diagram") {
    auto pres = wirtinger(parse_dt({4, 6, 8, 2}));
    auto res = eliminate(pres);
    REQUIRE(same(res.nontrivial, fig8_nontrivial()));
    REQUIRE(res.l_minus_one_power == 1);
    REQUIRE(res.verdict == "certified");
    auto tower = eliminate(pres, ElimStrategy::resultant_tower);
    REQUIRE(same(tower.nontrivial, res.nontrivial));
}

TEST_CASE("parabolic polynomials of the lower-triangular branch at M = 1") {
    // Relator constraints of the riley branch, restricted to M = 1, cut out
    // the classical parabolic polynomial in the off-diagonal parameter.
    auto parabolic = [](const std::vector<int>& dt) {
        auto branches = build_branch_systems(tietze_simplify(wirtinger(parse_dt(dt))));
        REQUIRE(branches[0].branch == "riley");
        std::vector<SparsePoly> at_one;
        for (auto& e : branches[0].equations) {
            if (e.degree("L") > 0) continue;  // longitude row: not a relator constraint
            auto s = e.substitute("M", C(1)).compress_vars();
            if (!s.is_zero()) at_one.push_back(s);
        }
        return gcd_poly(at_one);
    };
    auto t = V("t2");
    REQUIRE(same(parabolic({4, 6, 2}), canon(t + C(1))));
    REQUIRE(same(parabolic({4, 6, 8, 2}), canon(t * t - t + C(1))));
}

TEST_CASE("unknot") {
    auto res = eliminate(wirtinger(parse_dt({})));
    REQUIRE(res.l_minus_one_power == 1);
    REQUIRE(same(res.nontrivial, C(1)));
    REQUIRE(same(res.full, V("L") - C(1)));
    REQUIRE(res.verdict == "trivial");
    REQUIRE(res.strategy_used == "none");
}

TEST_CASE("reducible factor stripping") {
    auto L = V("L"), M = V("M");
    auto x = (L - C(1)) * (L - C(1)) * (L * M + C(3));
    REQUIRE(same(strip_reducible(x), L * M + C(3)));
    REQUIRE(same(strip_reducible(L * M + C(3)), L * M + C(3)));
    REQUIRE(strip_reducible(SparsePoly()).is_zero());
}

TEST_CASE("elimination respects the budget") {
    auto pres = wirtinger(parse_dt({4, 6, 8, 2}));
    REQUIRE_THROWS_AS(eliminate(pres, ElimStrategy::automatic, Budget(1e-9)),
                      EliminationTimeout);
}

TEST_CASE("certification can be disabled") {
    auto res = eliminate(wirtinger(parse_dt({4, 6, 2})), ElimStrategy::automatic, Budget(),
                         CertifyOptions{.enabled = false});
    REQUIRE(res.verdict == "unchecked");
    REQUIRE(res.certificates.empty());
    REQUIRE(same(res.nontrivial, trefoil_nontrivial()));
}

TEST_CASE("result serialization") {
    auto res = eliminate(wirtinger(parse_dt({4, 6, 2})));
    auto j = res.to_json();
    REQUIRE(j.contains("A"));
    REQUIRE(j["l_minus_one_power"] == 1);
    REQUIRE(j["verdict"] == "certified");
    REQUIRE(same(SparsePoly::from_json(j["A"]), res.full));
    REQUIRE(same(SparsePoly::from_json(j["nontrivial"]), res.nontrivial));
    REQUIRE(!j["A_text"].get<std::string>().empty());
    REQUIRE(j["branch_parts"].is_array());
    REQUIRE(j["certificates"].size() == res.certificates.size());
}

TEST_CASE("strategy names") {
    REQUIRE(parse_strategy("auto") == ElimStrategy::automatic);
    REQUIRE(parse_strategy("groebner") == ElimStrategy::groebner);
    REQUIRE(parse_strategy("tower") == ElimStrategy::resultant_tower);
    REQUIRE(to_string(parse_strategy("resultant_tower")) == "resultant_tower");
    REQUIRE_THROWS_AS(parse_strategy("magic"), MalformedCode);
}
