#include <doctest.h>

#include <functional>
#include <random>

#include "anonkit/simplex.hpp"
#include "test_util.hpp"

using namespace anonkit;
using testutil::make_db;
using testutil::random_db;

namespace {

// Enumeration oracle: cheapest partition of all vertices into pairs and
// triples, straight from the edge costs.
long long enumerate_matching_cost(const CostHypergraph& hg) {
    const int n = hg.vertex_count();
    long long best = -1;
    std::vector<int> left;
    for (int v = 0; v < n; ++v) left.push_back(v);
    std::function<void(std::vector<int>&, long long)> go = [&](std::vector<int>& rest,
                                                               long long acc) {
        if (rest.empty()) {
            if (best == -1 || acc < best) best = acc;
            return;
        }
        const int v = rest[0];
        for (size_t i = 1; i < rest.size(); ++i) {
            const int a = rest[i];
            if (auto c = hg.pair_cost(v, a)) {
                std::vector<int> next;
                for (size_t j = 1; j < rest.size(); ++j) {
                    if (j != i) next.push_back(rest[j]);
                }
                go(next, acc + *c);
            }
            for (size_t j = i + 1; j < rest.size(); ++j) {
                const int b = rest[j];
                if (auto c = hg.triple_cost(v, a, b)) {
                    std::vector<int> next;
                    for (size_t l = 1; l < rest.size(); ++l) {
                        if (l != i && l != j) next.push_back(rest[l]);
                    }
                    go(next, acc + *c);
                }
            }
        }
    };
    go(left, 0);
    return best;
}

CostHypergraph random_simplex_instance(std::mt19937& rng, int n) {
    CostHypergraph hg(n);
    std::uniform_int_distribution<long long> pair_cost(0, 10);
    std::uniform_int_distribution<long long> slack(0, 5);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            hg.set_pair_cost(i, j, pair_cost(rng));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const long long base =
                    *hg.pair_cost(i, j) + *hg.pair_cost(j, k) + *hg.pair_cost(i, k);
                hg.set_triple_cost(i, j, k, (base + 1) / 2 + slack(rng));
            }
        }
    }
    return hg;
}

}  // namespace

TEST_CASE("anonymity hypergraph carries the pairwise and triple star counts") {
    SUBCASE("identical rows") {
        const Database db = make_db({"ab", "ab", "ab"});
        const CostHypergraph hg = build_anonymity_hypergraph(db);
        CHECK(*hg.pair_cost(0, 1) == 0);
        CHECK(*hg.triple_cost(0, 1, 2) == 0);
    }
    SUBCASE("the 00/01/11 triangle") {
        const Database db = make_db({"00", "01", "11"});
        const CostHypergraph hg = build_anonymity_hypergraph(db);
        CHECK(*hg.pair_cost(0, 1) == 2);
        CHECK(*hg.pair_cost(1, 2) == 2);
        CHECK(*hg.pair_cost(0, 2) == 4);
        CHECK(*hg.triple_cost(0, 1, 2) == 6);
    }
    SUBCASE("single row is infeasible") {
        CHECK_THROWS_AS(build_anonymity_hypergraph(make_db({"a"})), InfeasibleError);
    }
}

TEST_CASE("simplex conditions hold for anonymity hypergraphs") {
    std::mt19937 rng(31337u);
    for (int round = 0; round < 100; ++round) {
        const Database db = random_db(rng, 2 + static_cast<int>(rng() % 7),
                                      1 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 3));
        CHECK(check_simplex_conditions(build_anonymity_hypergraph(db)).empty());
    }
}

TEST_CASE("violations are reported") {
    const Database db = make_db({"00", "01", "11"});
    CostHypergraph hg = build_anonymity_hypergraph(db);
    SUBCASE("triple too cheap") {
        hg.set_triple_cost(0, 1, 2, 3);  // pairs sum to 8 > 2*3
        const auto violations = check_simplex_conditions(hg);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].find("pair costs sum") != std::string::npos);
    }
    SUBCASE("missing sub-pair") {
        CostHypergraph partial(3);
        partial.set_pair_cost(0, 1, 1);
        partial.set_pair_cost(1, 2, 1);
        partial.set_triple_cost(0, 1, 2, 5);
        const auto violations = check_simplex_conditions(partial);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].find("missing a sub-pair") != std::string::npos);
    }
}

TEST_CASE("matching solver handles the forced cases") {
    SUBCASE("two vertices, one pair") {
        CostHypergraph hg(2);
        hg.set_pair_cost(0, 1, 5);
        const SimplexMatching m = solve_simplex_matching(hg);
        CHECK(m.cost == 5);
        REQUIRE(m.chosen_edges.size() == 1);
        CHECK(m.chosen_edges[0] == std::vector<int>{0, 1});
    }
    SUBCASE("three vertices force the triple") {
        CostHypergraph hg(3);
        hg.set_pair_cost(0, 1, 2);
        hg.set_pair_cost(1, 2, 2);
        hg.set_pair_cost(0, 2, 4);
        hg.set_triple_cost(0, 1, 2, 6);
        const SimplexMatching m = solve_simplex_matching(hg);
        CHECK(m.cost == 6);
        REQUIRE(m.chosen_edges.size() == 1);
        CHECK(m.chosen_edges[0].size() == 3);
    }
    SUBCASE("no cover is infeasible") {
        CostHypergraph hg(3);
        hg.set_pair_cost(0, 1, 1);
        CHECK_THROWS_AS(solve_simplex_matching(hg), InfeasibleError);
        CostHypergraph one(1);
        CHECK_THROWS_AS(solve_simplex_matching(one), InfeasibleError);
    }
}

TEST_CASE("matching solver equals exhaustive enumeration") {
    std::mt19937 rng(5150u);
    for (int round = 0; round < 60; ++round) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const CostHypergraph hg = random_simplex_instance(rng, n);
        const long long oracle = enumerate_matching_cost(hg);
        if (oracle == -1) {
            CHECK_THROWS_AS(solve_simplex_matching(hg), InfeasibleError);
            continue;
        }
        const SimplexMatching m = solve_simplex_matching(hg);
        CHECK(m.cost == oracle);

        long long recomputed = 0;
        std::vector<char> covered(n, 0);
        for (const auto& edge : m.chosen_edges) {
            if (edge.size() == 2) {
                recomputed += *hg.pair_cost(edge[0], edge[1]);
            } else {
                recomputed += *hg.triple_cost(edge[0], edge[1], edge[2]);
            }
            for (int v : edge) {
                CHECK(!covered[v]);
                covered[v] = 1;
            }
        }
        CHECK(recomputed == m.cost);
        for (int v = 0; v < n; ++v) {
            CHECK(covered[v]);
        }
    }
}

TEST_CASE("ties break toward the lexicographically smallest edge list") {
    // Four vertices, all pairs cost 1, all triples cost 2: pairings tie.
    CostHypergraph hg(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            hg.set_pair_cost(i, j, 1);
            for (int k = j + 1; k < 4; ++k) {
                hg.set_triple_cost(i, j, k, 2);
            }
        }
    }
    const SimplexMatching m = solve_simplex_matching(hg);
    CHECK(m.cost == 2);
    REQUIRE(m.chosen_edges.size() == 2);
    CHECK(m.chosen_edges[0] == std::vector<int>{0, 1});
    CHECK(m.chosen_edges[1] == std::vector<int>{2, 3});
}
