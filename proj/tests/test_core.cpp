#include <doctest.h>

#include <random>

#include "anonkit/core.hpp"
#include "test_util.hpp"

using namespace anonkit;
using testutil::make_db;
using testutil::random_db;

TEST_CASE("disagreement columns") {
    const Database db = make_db({"abc", "abd", "abc"});
    CHECK(disagreement_columns(db, {0}).empty());
    CHECK(disagreement_columns(db, {0, 2}).empty());
    CHECK(disagreement_columns(db, {0, 1}) == std::vector<int>{2});
    CHECK_THROWS_AS(disagreement_columns(db, {}), std::invalid_argument);
    CHECK_THROWS_AS(disagreement_columns(db, {7}), std::invalid_argument);
}

TEST_CASE("group cost counts stars for the whole group") {
    const Database db = make_db({"abc", "abd"});
    CHECK(group_cost(db, {0, 1}) == 2);  // one disagreeing column, both cells starred
    const Database three = make_db({"ab", "ab", "cb"});
    CHECK(group_cost(three, {0, 1, 2}) == 3);
}

TEST_CASE("anonymize_partition") {
    SUBCASE("identical rows cost nothing") {
        const Database db = make_db({"ab", "ab", "ab"});
        const auto solution = anonymize_partition(db, {{0, 1, 2}});
        CHECK(solution.total_cost == 0);
        CHECK(solution.anonymized_rows[0] == db.rows[0]);
    }
    SUBCASE("two clean pairs cost nothing") {
        const Database db = make_db({"ab", "cd", "ab", "cd"});
        const auto solution = anonymize_partition(db, {{0, 2}, {1, 3}});
        CHECK(solution.total_cost == 0);
    }
    SUBCASE("fully conflicting group suppresses everything") {
        const Database db = make_db({"00", "01", "10"});
        const auto solution = anonymize_partition(db, {{0, 1, 2}});
        CHECK(solution.total_cost == 6);
        CHECK(solution.anonymized_rows[0] == Row{kStar, kStar});
    }
    SUBCASE("rejects non-partitions") {
        const Database db = make_db({"a", "b"});
        CHECK_THROWS_AS(anonymize_partition(db, {{0}}), std::invalid_argument);
        CHECK_THROWS_AS(anonymize_partition(db, {{0, 1}, {1}}), std::invalid_argument);
    }
}

TEST_CASE("is_k_anonymous") {
    CHECK(is_k_anonymous(make_db({"ab", "cd"}), 1));
    CHECK(is_k_anonymous(make_db({"ab", "ab", "ab"}), 3));
    CHECK_FALSE(is_k_anonymous(make_db({"ab", "cd"}), 2));
    CHECK_THROWS_AS(is_k_anonymous(make_db({"ab"}), 0), std::invalid_argument);

    // Star cells compare equal to stars only.
    Database released = make_db({"ab", "ab", "cb"});
    released.rows[0][0] = kStar;
    released.rows[1][0] = kStar;
    CHECK_FALSE(is_k_anonymous(released, 2));  // third row is alone
    released.rows[2][0] = kStar;
    CHECK(is_k_anonymous(released, 3));
}

TEST_CASE("anonymized partitions are k-anonymous for k = min group size") {
    std::mt19937 rng(9001u);
    std::uniform_int_distribution<int> n_pick(2, 7), m_pick(1, 4), c_pick(2, 3);
    for (int round = 0; round < 200; ++round) {
        const Database db = random_db(rng, n_pick(rng), m_pick(rng), c_pick(rng));
        // random partition
        std::vector<RowGroup> groups;
        std::uniform_int_distribution<int> coin(0, 1);
        for (int r = 0; r < db.row_count(); ++r) {
            if (groups.empty() || coin(rng) == 0) {
                groups.push_back({r});
            } else {
                groups[rng() % groups.size()].push_back(r);
            }
        }
        const auto solution = anonymize_partition(db, groups);
        const Database released = released_database(db, solution);
        CHECK(is_k_anonymous(released, min_group_size(groups)));
    }
}

TEST_CASE("per-row cost never drops when a pair grows to a triple") {
    std::mt19937 rng(4242u);
    for (int round = 0; round < 100; ++round) {
        const Database db = random_db(rng, 3, 4, 2);
        const long long c01 = group_cost(db, {0, 1});
        const long long c02 = group_cost(db, {0, 2});
        const long long c12 = group_cost(db, {1, 2});
        const long long c012 = group_cost(db, {0, 1, 2});
        CHECK(2 * c012 >= 3 * c01);
        CHECK(2 * c012 >= 3 * c02);
        CHECK(2 * c012 >= 3 * c12);
    }
}

TEST_CASE("splitting a large group into halves of size >= k never costs more") {
    std::mt19937 rng(515u);
    for (int round = 0; round < 100; ++round) {
        const int k = 2 + static_cast<int>(rng() % 2);
        const Database db = random_db(rng, 2 * k + static_cast<int>(rng() % 3), 3, 2);
        const int n = db.row_count();
        RowGroup whole(n);
        for (int i = 0; i < n; ++i) whole[i] = i;
        const long long big = group_cost(db, whole);

        long long best_split = big + 1;
        for (int cut = k; cut + k <= n; ++cut) {
            RowGroup left(whole.begin(), whole.begin() + cut);
            RowGroup right(whole.begin() + cut, whole.end());
            best_split = std::min(best_split, group_cost(db, left) + group_cost(db, right));
        }
        CHECK(best_split <= big);
    }
}
