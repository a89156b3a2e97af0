#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <map>

#include "apoly/knotio.hpp"

using namespace apoly;

namespace {

// Frozen invariants for every table row: ascending Alexander coefficients
// (normalized to positive constant term) and the knot determinant.
const std::map<std::string, std::vector<long>> kAlex = {
    {"3_1", {1, -1, 1}},
    {"4_1", {1, -3, 1}},
    {"5_1", {1, -1, 1, -1, 1}},
    {"5_2", {2, -3, 2}},
    {"6_1", {2, -5, 2}},
    {"6_2", {1, -3, 3, -3, 1}},
    {"6_3", {1, -3, 5, -3, 1}},
    {"7_1", {1, -1, 1, -1, 1, -1, 1}},
    {"7_2", {3, -5, 3}},
    {"7_3", {2, -3, 3, -3, 2}},
    {"7_4", {4, -7, 4}},
    {"7_5", {2, -4, 5, -4, 2}},
    {"7_6", {1, -5, 7, -5, 1}},
    {"7_7", {1, -5, 9, -5, 1}},
    {"8_1", {3, -7, 3}},
    {"8_2", {1, -3, 3, -3, 3, -3, 1}},
    {"8_3", {4, -9, 4}},
    {"8_4", {2, -5, 5, -5, 2}},
    {"8_5", {1, -3, 4, -5, 4, -3, 1}},
    {"8_6", {2, -6, 7, -6, 2}},
    {"8_7", {1, -3, 5, -5, 5, -3, 1}},
    {"8_8", {2, -6, 9, -6, 2}},
    {"8_9", {1, -3, 5, -7, 5, -3, 1}},
    {"8_10", {1, -3, 6, -7, 6, -3, 1}},
    {"8_11", {2, -7, 9, -7, 2}},
    {"8_12", {1, -7, 13, -7, 1}},
    {"8_13", {2, -7, 11, -7, 2}},
    {"8_14", {2, -8, 11, -8, 2}},
    {"8_15", {3, -8, 11, -8, 3}},
    {"8_16", {1, -4, 8, -9, 8, -4, 1}},
    {"8_17", {1, -4, 8, -11, 8, -4, 1}},
    {"8_18", {1, -5, 10, -13, 10, -5, 1}},
    {"8_19", {1, -1, 0, 1, 0, -1, 1}},
    {"8_20", {1, -2, 3, -2, 1}},
    {"8_21", {1, -4, 5, -4, 1}},
};

std::vector<NamedKnot> load_table() {
    std::ifstream f(std::string(KNOT_DATA_DIR) + "/knots_dt.txt");
    REQUIRE(f.good());
    return load_knot_table(f);
}

}  // namespace

TEST_CASE("DT parsing basics") {
    REQUIRE(parse_dt({}).n == 0);
    REQUIRE_THROWS_AS(parse_dt({2}), MalformedCode);
    REQUIRE_THROWS_AS(parse_dt({4, 6, 3}), MalformedCode);    // odd entry
    REQUIRE_THROWS_AS(parse_dt({4, 4, 2}), MalformedCode);    // repeated entry
    REQUIRE_THROWS_AS(parse_dt({4, 6, 10}), MalformedCode);   // out of range
    auto d = parse_dt({4, 6, 2});
    REQUIRE(d.n == 3);
    REQUIRE(d.writhe() == 3);  // realized right-handed trefoil
    for (auto& c : d.crossings) {
        REQUIRE(c.under_in != c.under_out);
        REQUIRE(c.over != c.under_in);
        REQUIRE(c.over != c.under_out);
    }
}

TEST_CASE("trefoil Wirtinger presentation and longitude") {
    auto pres = wirtinger(parse_dt({4, 6, 2}));
    REQUIRE(pres.ngens == 3);
    REQUIRE(pres.relators.size() == 3);
    REQUIRE(pres.writhe == 3);
    REQUIRE(presentation_well_formed(pres));
    // longitude = conjugators in reverse walk order, then meridian^-writhe
    REQUIRE(pres.longitude.size() == 3 + 3);
    for (std::size_t i = 3; i < 6; ++i) REQUIRE(pres.longitude[i] == -1);

    auto simp = tietze_simplify(pres);
    REQUIRE(simp.ngens == 2);
    REQUIRE(presentation_well_formed(simp));
    // frozen from the realized diagram: the braid relator, its (redundant)
    // Wirtinger companion, and the longitude
    REQUIRE(simp.relators ==
            std::vector<Word>{{-2, 1, 2, 1, -2, -1}, {-1, 2, 1, 2, -1, -2}});
    REQUIRE(simp.longitude == Word{2, 1, -2, 1, 2, -1, -1, -1});
}

TEST_CASE("figure-eight simplification") {
    auto pres = wirtinger(parse_dt({4, 6, 8, 2}));
    REQUIRE(pres.writhe == 0);
    auto simp = tietze_simplify(pres);
    REQUIRE(simp.ngens == 2);
    REQUIRE(simp.relators == std::vector<Word>{{-2, 1, -2, -1, 2, 1, -2, 1, 2, -1},
                                               {-1, 2, -1, -2, 1, 2, -1, 2, 1, -2}});
    REQUIRE(simp.longitude == Word{2, -1, -2, 1, 1, -2, -1, 2});
    // longitude is nontrivial in the free group after reduction
    REQUIRE_FALSE(free_reduce(simp.longitude).empty());
}

TEST_CASE("unknot presentation") {
    auto pres = wirtinger(parse_dt({}));
    REQUIRE(pres.ngens == 1);
    REQUIRE(pres.relators.empty());
    REQUIRE(pres.longitude.empty());
    REQUIRE(alexander_coefficients(pres) == std::vector<long>{1});
}

TEST_CASE("every table row reproduces its frozen invariants") {
    auto table = load_table();
    REQUIRE(table.size() == 35);
    for (auto& k : table) {
        INFO("knot " << k.name);
        auto dia = parse_dt(k.dt);
        auto pres = wirtinger(dia);
        REQUIRE(presentation_well_formed(pres));
        auto alex = alexander_coefficients(pres);
        REQUIRE(kAlex.count(k.name) == 1);
        REQUIRE(alex == kAlex.at(k.name));
        // determinant = |Alexander(-1)|, and 3-colorings = 9 iff 3 | det
        long det = knot_determinant(pres);
        long col = tricoloring_count(dia);
        REQUIRE(col >= 3);
        REQUIRE((det % 3 == 0) == (col > 3));
        // simplification preserves the Alexander polynomial
        auto simp = tietze_simplify(pres);
        REQUIRE(simp.ngens <= 3);
        REQUIRE(alexander_coefficients(simp) == alex);
    }
}

TEST_CASE("PD code of the trefoil matches its DT realization") {
    auto dia = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
    REQUIRE(dia.n == 3);
    REQUIRE(dia.writhe() == -3);  // this standard PD is the left-handed trefoil
    auto pres = wirtinger(dia);
    REQUIRE(alexander_coefficients(pres) == std::vector<long>{1, -1, 1});
    REQUIRE(knot_determinant(pres) == 3);
    REQUIRE(tricoloring_count(dia) == 9);
}

TEST_CASE("PD error handling") {
    REQUIRE(parse_pd("").n == 0);
    REQUIRE_THROWS_AS(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6]"), MalformedCode);
    REQUIRE_THROWS_AS(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]"), InconsistentArcs);
    REQUIRE_THROWS_AS(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,2]"), InconsistentArcs);
    // two-component link (Hopf): every label twice but two walk cycles
    REQUIRE_THROWS_AS(parse_pd("X[1,3,2,4] X[3,1,4,2]"), LinkNotKnot);
}

TEST_CASE("figure-eight PD agrees with its DT code") {
    // standard 4_1 PD code
    auto dia = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]");
    REQUIRE(dia.n == 4);
    REQUIRE(dia.writhe() == 0);
    auto pres = wirtinger(dia);
    REQUIRE(alexander_coefficients(pres) == std::vector<long>{1, -3, 1});
    REQUIRE(knot_determinant(pres) == 5);
}

TEST_CASE("braid closures") {
    SECTION("trefoil from sigma_1^3") {
        auto dia = parse_braid({1, 1, 1});
        REQUIRE(dia.n == 3);
        auto pres = wirtinger(dia);
        REQUIRE(alexander_coefficients(pres) == std::vector<long>{1, -1, 1});
    }
    SECTION("figure-eight from (s1 s2^-1)^2") {
        auto dia = parse_braid({1, -2, 1, -2});
        REQUIRE(dia.n == 4);
        REQUIRE(alexander_coefficients(wirtinger(dia)) == std::vector<long>{1, -3, 1});
    }
    SECTION("torus knot T(3,4) = 8_19 from (s1 s2)^4") {
        auto dia = parse_braid({1, 2, 1, 2, 1, 2, 1, 2});
        REQUIRE(dia.n == 8);
        REQUIRE(alexander_coefficients(wirtinger(dia)) ==
                std::vector<long>{1, -1, 0, 1, 0, -1, 1});
    }
    SECTION("links rejected") {
        REQUIRE_THROWS_AS(parse_braid({1, 1}), LinkNotKnot);        // Hopf link
        REQUIRE_THROWS_AS(parse_braid({2}), LinkNotKnot);           // + split strand
    }
    SECTION("empty and malformed words") {
        REQUIRE(parse_braid({}).n == 0);
        REQUIRE(parse_braid({1}).n == 0);  // one kink closes to the unknot
        REQUIRE_THROWS_AS(parse_braid({1, 0}), MalformedCode);
    }
}

TEST_CASE("filled presentations") {
    auto simp = tietze_simplify(wirtinger(parse_dt({4, 6, 2})));
    auto filled = filled_presentation(simp, 3, 1);
    REQUIRE(filled.relators.size() == simp.relators.size() + 1);
    REQUIRE_THROWS_AS(filled_presentation(simp, 2, 4), NonCoprime);
    REQUIRE_THROWS_AS(filled_presentation(simp, 0, 0), NonCoprime);
    REQUIRE(filled_presentation(simp, 1, 0).relators.back() == Word{1});
    // (0,1) filling appends the longitude itself
    REQUIRE(filled_presentation(simp, 0, 1).relators.back() == free_reduce(simp.longitude));
}

TEST_CASE("word utilities") {
    REQUIRE(free_reduce({1, -1, 2}) == Word{2});
    REQUIRE(free_reduce({1, 2, -2, -1}) == Word{});
    REQUIRE(cyclic_reduce({2, 1, 3, -2}) == Word{1, 3});
    REQUIRE(invert_word({1, -2, 3}) == Word{-3, 2, -1});
    // substitution free-reduces its output
    REQUIRE(substitute_word({1, 2, -1}, 2, {1, 1}) == Word{1, 1});
    REQUIRE(substitute_word({3, 2, -3}, 2, {-1}) == Word{3, -1, -3});
    REQUIRE(exponent_sum({1, 2, -1, 2}) == 2);
    REQUIRE(exponent_sum({1, 2, -1, 2}, 2) == 2);
    REQUIRE(exponent_sum({1, 2, -1, 2}, 1) == 0);
}

TEST_CASE("table loader validates input") {
    std::istringstream ok("# comment\n3_1 4 6 2\n\n4_1 4 6 8 2 # trailing\n");
    auto t = load_knot_table(ok);
    REQUIRE(t.size() == 2);
    REQUIRE(t[0].name == "3_1");
    REQUIRE(t[1].dt == std::vector<int>{4, 6, 8, 2});
    std::istringstream bad("5_1\n");
    REQUIRE_THROWS_AS(load_knot_table(bad), MalformedCode);
}
