#include <doctest.h>

#include <random>

#include "anonkit/hierarchy.hpp"
#include "test_util.hpp"

using namespace anonkit;
using testutil::make_db;
using testutil::random_db;

namespace {

// root(cost 2) -> m1(1){a,b}, m2(1){c,d}
GeneralizationHierarchy three_level() {
    return GeneralizationHierarchy({"root", "m1", "m2", "a", "b", "c", "d"}, {2, 1, 1, 0, 0, 0, 0},
                                   {-1, 0, 0, 1, 1, 2, 2});
}

}  // namespace

TEST_CASE("star hierarchy validates against its alphabet") {
    Alphabet sigma;
    sigma.intern("0");
    sigma.intern("1");
    const GeneralizationHierarchy star = star_hierarchy(sigma);
    CHECK(validate_hierarchy(star, &sigma));
    CHECK(star.node(star.root()).cost == 1);
}

TEST_CASE("cost monotonicity violations are reported") {
    const GeneralizationHierarchy bad({"r", "a"}, {0, 5}, {-1, 0});
    const auto violations = bad.violations();
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("costs more than its parent") != std::string::npos);
}

TEST_CASE("a single-node hierarchy is valid for a one-symbol alphabet") {
    Alphabet sigma;
    sigma.intern("a");
    const GeneralizationHierarchy h({"a"}, {0}, {-1});
    CHECK(validate_hierarchy(h, &sigma));
}

TEST_CASE("leaf bijection violations are reported") {
    Alphabet sigma;
    sigma.intern("0");
    sigma.intern("1");
    sigma.intern("2");
    const GeneralizationHierarchy star = star_hierarchy(sigma);
    Alphabet bigger = sigma;
    bigger.intern("3");
    CHECK_FALSE(validate_hierarchy(star, &bigger));
}

TEST_CASE("lowest common ancestor") {
    const GeneralizationHierarchy h = three_level();
    const Database db = make_db({"ab", "cd"});
    const Token a = *db.alphabet.find("a");
    const Token b = *db.alphabet.find("b");
    const Token c = *db.alphabet.find("c");
    CHECK(h.node(h.lowest_common_ancestor(db.alphabet, {a})).symbol == "a");
    CHECK(h.node(h.lowest_common_ancestor(db.alphabet, {a, b})).symbol == "m1");
    CHECK(h.node(h.lowest_common_ancestor(db.alphabet, {a, c})).symbol == "root");
    CHECK(h.node(h.lowest_common_ancestor(db.alphabet, {a, b, c})).symbol == "root");
    CHECK_THROWS_AS(h.lowest_common_ancestor(db.alphabet, {}), std::invalid_argument);
}

TEST_CASE("generalized group cost") {
    const GeneralizationHierarchy h = three_level();
    SUBCASE("identical rows are free") {
        const Database db = make_db({"ab", "ab", "cd"});
        CHECK(generalized_group_cost(db, {0, 1}, h) == 0);
    }
    SUBCASE("mid-level merge charges the mid cost per row") {
        const Database db = make_db({"ab", "bb", "cd"});
        // column 0 disagrees {a, b}: lca m1 costs 1; two rows -> 2
        CHECK(generalized_group_cost(db, {0, 1}, h) == 2);
        CHECK(generalized_group_row(db, {0, 1}, h) == std::vector<std::string>{"m1", "b"});
    }
    SUBCASE("cross-subtree merge pays the root") {
        const Database db = make_db({"ab", "cb", "cd"});
        CHECK(generalized_group_cost(db, {0, 1}, h) == 4);  // {a,c} -> root, cost 2 per row
        CHECK(generalized_group_cost(db, {0, 1, 2}, h) == 12);  // both columns hit the root
    }
}

TEST_CASE("star hierarchy reproduces suppression costs") {
    std::mt19937 rng(77u);
    for (int round = 0; round < 200; ++round) {
        const Database db = random_db(rng, 1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 3));
        const GeneralizationHierarchy star = star_hierarchy(db.alphabet);
        const int n = db.row_count();
        for (int mask = 1; mask < (1 << n); ++mask) {
            RowGroup group;
            for (int r = 0; r < n; ++r) {
                if (mask & (1 << r)) group.push_back(r);
            }
            CHECK(generalized_group_cost(db, group, star) == group_cost(db, group));
        }
    }
}

TEST_CASE("lca cost of three values dominates lca cost of any two") {
    const GeneralizationHierarchy h = three_level();
    const Database db = make_db({"ab", "cd"});
    const std::vector<Token> tokens = {*db.alphabet.find("a"), *db.alphabet.find("b"),
                                       *db.alphabet.find("c"), *db.alphabet.find("d")};
    for (Token x : tokens) {
        for (Token y : tokens) {
            for (Token z : tokens) {
                const long long three = h.node(h.lowest_common_ancestor(db.alphabet, {x, y, z})).cost;
                CHECK(three >= h.node(h.lowest_common_ancestor(db.alphabet, {x, y})).cost);
                CHECK(three >= h.node(h.lowest_common_ancestor(db.alphabet, {y, z})).cost);
                CHECK(three >= h.node(h.lowest_common_ancestor(db.alphabet, {x, z})).cost);
            }
        }
    }
}
