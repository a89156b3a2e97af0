#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "apoly/lattice.hpp"

using namespace apoly;

namespace {

// Independent membership oracle: exhaustive search for integer coefficients
// c1, c2 with c1*g1 + c2*g2 = v, over a coefficient range large enough to
// contain a solution whenever one exists (norm bound on Cramer coefficients,
// Bezout shift in the rank-deficient cases).
bool brute_force_member(const LatticeSubgroup& K, const Vec2& v) {
    Vec2 g1 = K.gen1(), g2 = K.gen2();
    long long maxg = std::max({std::abs(g1.x), std::abs(g1.y), std::abs(g2.x), std::abs(g2.y)});
    long long R = (std::abs(v.x) + std::abs(v.y) + 1) * (maxg + 1);
    for (long long c1 = -R; c1 <= R; ++c1) {
        Vec2 w{v.x - c1 * g1.x, v.y - c1 * g1.y};
        if (g2.x != 0) {
            if (w.x % g2.x != 0) continue;
            long long c2 = w.x / g2.x;
            if (w.y == c2 * g2.y) return true;
        } else if (g2.y != 0) {
            if (w.x != 0 || w.y % g2.y != 0) continue;
            return true;
        } else {
            if (w.x == 0 && w.y == 0) return true;
        }
    }
    return false;
}

LatticeFamily line_x1(std::vector<LatticeSubgroup> subgroups, Vec2 excluded) {
    return {{1, 0}, {0, 1}, std::move(subgroups), excluded};
}

}  // namespace

TEST_CASE("exact membership in subgroups of Z^2", "[lattice]") {
    SECTION("full lattice contains everything") {
        LatticeSubgroup all;  // identity matrix
        CHECK(lattice_member(all, {0, 0}));
        CHECK(lattice_member(all, {17, -23}));
    }
    SECTION("even sublattice") {
        LatticeSubgroup even{2, 0, 0, 2};
        CHECK(lattice_member(even, {2, 4}));
        CHECK(lattice_member(even, {-6, 0}));
        CHECK_FALSE(lattice_member(even, {1, 2}));
        CHECK_FALSE(lattice_member(even, {2, 3}));
    }
    SECTION("rank-1 subgroup generated by (2,4)") {
        LatticeSubgroup K{2, 0, 4, 0};
        REQUIRE(K.rank() == 1);
        CHECK(lattice_member(K, {2, 4}));
        CHECK(lattice_member(K, {-4, -8}));
        CHECK(lattice_member(K, {0, 0}));
        CHECK_FALSE(lattice_member(K, {1, 2}));
        CHECK_FALSE(lattice_member(K, {3, 6}));
        CHECK_FALSE(lattice_member(K, {2, 5}));
    }
    SECTION("rank-1 subgroup from two parallel generators") {
        LatticeSubgroup K{2, 3, 2, 3};  // columns (2,2), (3,3): group = Z*(1,1)
        REQUIRE(K.rank() == 1);
        CHECK(lattice_member(K, {5, 5}));
        CHECK(lattice_member(K, {-1, -1}));
        CHECK_FALSE(lattice_member(K, {5, 4}));
    }
    SECTION("zero subgroup contains only the origin") {
        LatticeSubgroup K{0, 0, 0, 0};
        REQUIRE(K.rank() == 0);
        CHECK(lattice_member(K, {0, 0}));
        CHECK_FALSE(lattice_member(K, {1, 0}));
    }
    SECTION("index-6 sublattice") {
        LatticeSubgroup K{1, 0, 1, 6};  // columns (1,1), (0,6)
        CHECK(lattice_member(K, {1, 1}));
        CHECK(lattice_member(K, {1, 7}));
        CHECK(lattice_member(K, {2, 8}));
        CHECK_FALSE(lattice_member(K, {1, 2}));
        CHECK_FALSE(lattice_member(K, {0, 3}));
    }
}

TEST_CASE("line validation", "[lattice]") {
    LatticeSubgroup all;
    SECTION("line through the origin is rejected") {
        LatticeFamily f{{2, 4}, {1, 2}, {all}, {0, 0}};
        CHECK_THROWS_AS(lattice_lemma_check(f, 10), LineThroughOrigin);
        LatticeFamily g{{0, 0}, {0, 1}, {all}, {0, 0}};
        CHECK_THROWS_AS(lattice_lemma_check(g, 10), LineThroughOrigin);
    }
    SECTION("direction must be primitive and nonzero") {
        LatticeFamily f{{1, 0}, {0, 2}, {all}, {0, 0}};
        CHECK_THROWS_AS(lattice_lemma_check(f, 10), ApolyError);
        LatticeFamily g{{1, 0}, {0, 0}, {all}, {0, 0}};
        CHECK_THROWS_AS(lattice_lemma_check(g, 10), ApolyError);
    }
    SECTION("window must be positive") {
        LatticeFamily f{{1, 0}, {0, 1}, {all}, {0, 0}};
        CHECK_THROWS_AS(lattice_lemma_check(f, 0), ApolyError);
    }
}

TEST_CASE("rank-1 family: each subgroup meets the line exactly once", "[lattice]") {
    // line x = 1 with subgroups <(1,n)> for n = 1..5
    std::vector<LatticeSubgroup> subs;
    for (long long n = 1; n <= 5; ++n) subs.push_back({1, 0, n, 0});
    auto rep = lattice_lemma_check(line_x1(subs, {1, 0}), 10);

    REQUIRE(rep.per_subgroup_hits.size() == 5);
    for (auto hits : rep.per_subgroup_hits) CHECK(hits == 1);
    CHECK(rep.covered == std::vector<long long>{1, 2, 3, 4, 5});
    CHECK(rep.uncovered_count == 21 - 5);
    CHECK(rep.uncovered_grows);
    CHECK(rep.excluded_outside_all);  // (1,0) = t*(1,n) forces n = 0
    CHECK_FALSE(rep.all_rank2);
    // rank-1 groups along other directions never contain the line direction
    CHECK(rep.h_step == 0);
    CHECK_FALSE(rep.h_infinite);
}

TEST_CASE("full-lattice family covers everything and excludes nothing", "[lattice]") {
    for (Vec2 candidate : {Vec2{1, 0}, Vec2{0, 1}, Vec2{5, 7}, Vec2{-3, 2}, Vec2{0, 0}}) {
        auto rep = lattice_lemma_check(line_x1({LatticeSubgroup{}}, candidate), 25);
        CHECK_FALSE(rep.excluded_outside_all);
        CHECK(rep.excluded_member_of == std::vector<std::size_t>{0});
        CHECK(rep.uncovered_count == 0);
        CHECK_FALSE(rep.uncovered_grows);
        CHECK(rep.per_subgroup_hits[0] == 51);
    }
}

TEST_CASE("two index-finite subgroups leave the line largely uncovered", "[lattice]") {
    // subgroups <(1,1),(0,2)> and <(1,2),(0,3)>, excluded point (1,0)
    std::vector<LatticeSubgroup> subs = {{1, 0, 1, 2}, {1, 0, 2, 3}};

    auto rep100 = lattice_lemma_check(line_x1(subs, {1, 0}), 100);
    auto rep50 = lattice_lemma_check(line_x1(subs, {1, 0}), 50);

    // (1,0) fails the parity condition in the first and the mod-3 condition
    // in the second
    CHECK(rep100.excluded_outside_all);
    CHECK(rep100.excluded_member_of.empty());

    // line point (1,k) lies in the first subgroup iff k is odd, in the
    // second iff k = 2 (mod 3); exact uncovered counts follow
    CHECK(rep100.uncovered_count == 67);
    CHECK(rep50.uncovered_count == 34);
    CHECK(rep100.uncovered_count > rep50.uncovered_count);
    CHECK(rep100.uncovered_grows);

    CHECK(rep100.all_rank2);
    CHECK(rep100.h_infinite);
    CHECK(rep100.h_step == 6);  // 6*(0,1) is the first common multiple
    for (long long k : rep100.covered) {
        bool odd = (k % 2 + 2) % 2 == 1;
        bool mod3 = (k % 3 + 3) % 3 == 2;
        CHECK((odd || mod3));
    }
}

TEST_CASE("membership agrees with brute force on randomized families", "[lattice]") {
    std::mt19937 rng(660316);
    std::uniform_int_distribution<long long> entry(-3, 3);
    const std::vector<Vec2> directions = {{0, 1}, {1, 0}, {1, 1}, {1, -1}, {1, 2}, {2, 1}};
    const long long window = 200;

    long long checked = 0;
    for (int fam = 0; fam < 100; ++fam) {
        LatticeFamily f;
        f.direction = directions[rng() % directions.size()];
        do {
            f.base = {entry(rng), entry(rng)};
        } while (det2(f.base, f.direction) == 0);
        int nsub = 1 + (int)(rng() % 3);
        for (int s = 0; s < nsub; ++s)
            f.subgroups.push_back({entry(rng), entry(rng), entry(rng), entry(rng)});
        f.excluded_point = {entry(rng), entry(rng)};

        // oracle agreement on every window point of the line and on the
        // excluded point, for every subgroup
        for (long long k = -window; k <= window; ++k) {
            Vec2 v = f.base + k * f.direction;
            for (const auto& K : f.subgroups) {
                REQUIRE(lattice_member(K, v) == brute_force_member(K, v));
                ++checked;
            }
        }
        for (const auto& K : f.subgroups)
            REQUIRE(lattice_member(K, f.excluded_point) ==
                    brute_force_member(K, f.excluded_point));

        // the report itself runs on the full window without error
        auto rep = lattice_lemma_check(f, window);
        CHECK(rep.uncovered_count + (long long)rep.covered.size() == 2 * window + 1);
    }
    CHECK(checked > 10000);
}

TEST_CASE("report serializes to JSON", "[lattice]") {
    std::vector<LatticeSubgroup> subs = {{1, 0, 1, 2}, {1, 0, 2, 3}};
    auto rep = lattice_lemma_check(line_x1(subs, {1, 0}), 20);
    auto j = rep.to_json();
    CHECK(j["window"] == 20);
    CHECK(j["excluded_outside_all"] == true);
    CHECK(j["h_step"] == 6);
    CHECK(j["uncovered_grows"] == true);
    CHECK(j["per_subgroup_hits"].size() == 2);
}
