#include <doctest.h>

#include "anonkit/diversity.hpp"
#include "anonkit/oracles.hpp"
#include "anonkit/reductions.hpp"
#include "test_util.hpp"

using namespace anonkit;
using testutil::make_db;

namespace {

TripartiteGraph triangle() {
    TripartiteGraph tg;
    tg.graph.vertex_count = 3;
    tg.graph.add_edge(0, 1);
    tg.graph.add_edge(1, 2);
    tg.graph.add_edge(0, 2);
    tg.part = {0, 1, 2};
    return tg;
}

TripartiteGraph four_star() {
    TripartiteGraph tg;
    tg.graph.vertex_count = 4;
    tg.graph.add_edge(0, 1);
    tg.graph.add_edge(0, 2);
    tg.graph.add_edge(0, 3);
    tg.part = {0, 1, 1, 2};
    return tg;
}

}  // namespace

TEST_CASE("instance validation") {
    DiversityInstance inst;
    inst.db = make_db({"ab", "cd"});
    inst.q_columns = {0};
    inst.s_columns = {1};
    CHECK_NOTHROW(inst.validate());

    inst.s_columns = {};
    inst.q_columns = {0, 1};
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);

    inst.q_columns = {0};
    inst.s_columns = {0};
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}

TEST_CASE("is_l_diverse") {
    DiversityInstance inst;
    inst.db = make_db({"ax", "ax", "ay"});
    inst.q_columns = {0};
    inst.s_columns = {1};

    SUBCASE("l=1 always holds") {
        CHECK(is_l_diverse(inst, inst.db, 1));
    }
    SUBCASE("a third row with a fresh sensitive value rescues the class") {
        CHECK(is_l_diverse(inst, inst.db, 2));
    }
    SUBCASE("two rows with equal Q and equal sensitive value are not 2-diverse") {
        DiversityInstance two;
        two.db = make_db({"ax", "ax"});
        two.q_columns = {0};
        two.s_columns = {1};
        CHECK_FALSE(is_l_diverse(two, two.db, 2));
    }
    SUBCASE("distinct sensitive values pass") {
        DiversityInstance ok;
        ok.db = make_db({"ax", "ay"});
        ok.q_columns = {0};
        ok.s_columns = {1};
        CHECK(is_l_diverse(ok, ok.db, 2));
    }
    SUBCASE("l < 1 is an error") {
        CHECK_THROWS_AS(is_l_diverse(inst, inst.db, 0), std::invalid_argument);
    }
}

TEST_CASE("triangle incidence rows are 2-diverse once Q is starred") {
    const DiversityInstance inst = tripartite_to_2div(triangle());
    const Database released = diversity_release(inst, {{0, 1, 2}});
    CHECK(is_l_diverse(inst, released, 2));
    // all three Q columns disagree inside the group: 3 stars per row
    CHECK(diversity_cost(inst, {{0, 1, 2}}) == 9);
}

TEST_CASE("diversity cost counts only Q columns") {
    DiversityInstance inst;
    inst.db = make_db({"aax", "aay", "aaz"});
    inst.q_columns = {0, 1};
    inst.s_columns = {2};
    CHECK(diversity_cost(inst, {{0, 1, 2}}) == 0);  // groups disagree only on S

    DiversityInstance q3;
    q3.db = make_db({"000x", "011y", "101z"});
    q3.q_columns = {0, 1, 2};
    q3.s_columns = {3};
    CHECK(diversity_cost(q3, {{0, 1, 2}}) == 9);  // 3 disagreeing Q columns, 3 rows
}

TEST_CASE("brute force diversity solver") {
    SUBCASE("a shared binary sensitive column is infeasible for l=2") {
        DiversityInstance inst;
        inst.db = make_db({"ax", "bx", "cx"});
        inst.q_columns = {0};
        inst.s_columns = {1};
        CHECK_FALSE(solve_l_diversity_bruteforce(inst, 2).has_value());
    }
    SUBCASE("a single triangle costs exactly nine stars") {
        const DiversityInstance inst = tripartite_to_2div(triangle());
        const auto best = solve_l_diversity_bruteforce(inst, 2);
        REQUIRE(best.has_value());
        CHECK(best->total_cost == 9);
        const Database released = diversity_release(inst, best->groups);
        CHECK(is_l_diverse(inst, released, 2));
    }
    SUBCASE("a 4-star cannot be grouped: costs exceed 9 or nothing passes") {
        const DiversityInstance inst = tripartite_to_2div(four_star());
        const auto best = solve_l_diversity_bruteforce(inst, 2);
        CHECK_FALSE(best.has_value());  // every 3-row group shares a sensitive value
    }
}

TEST_CASE("any two rows of a 2-diversity reduction share a sensitive value") {
    for (const TripartiteGraph& tg : {triangle(), four_star()}) {
        const DiversityInstance inst = tripartite_to_2div(tg);
        const int m = inst.db.row_count();
        for (int a = 0; a < m; ++a) {
            for (int b = a + 1; b < m; ++b) {
                bool share = false;
                for (int c : inst.s_columns) {
                    if (inst.db.rows[a][c] == inst.db.rows[b][c]) share = true;
                }
                CHECK(share);
            }
        }
    }
}
