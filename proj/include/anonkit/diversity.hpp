#pragma once

#include <optional>
#include <vector>

#include "anonkit/core.hpp"

namespace anonkit {

/// A database whose columns are split into quasi-identifiers Q and sensitive
/// attributes S. Stars are only ever written into Q columns; S columns are
/// released intact and are the only ones exempt from cost.
struct DiversityInstance {
    Database db;
    std::vector<int> q_columns;
    std::vector<int> s_columns;

    /// Throws std::invalid_argument unless q/s partition the columns and S is
    /// non-empty.
    void validate() const;
};

/// True iff for every row u0 of `anonymized` and every sensitive column s,
/// there are l-1 rows agreeing with u0 on every Q column whose s values,
/// together with u0's, are pairwise distinct. Equivalently: each Q-equivalence
/// class exhibits at least l distinct values in every sensitive column (the
/// witnesses may differ from column to column). Star cells compare equal to
/// stars, so the check runs on the literal released table.
bool is_l_diverse(const DiversityInstance& inst, const Database& anonymized, int l);

/// Stars introduced among Q columns only: sum over groups of
/// |group| * |disagreeing Q columns|.
long long diversity_cost(const DiversityInstance& inst, const std::vector<RowGroup>& groups);

/// Releases the table for a grouping: Q columns suppressed where a group
/// disagrees, S columns untouched.
Database diversity_release(const DiversityInstance& inst, const std::vector<RowGroup>& groups);

struct DiversitySolution {
    std::vector<RowGroup> groups;
    long long total_cost = 0;
};

/// Exact minimum Q-star cost over all partitions into groups of size >= l
/// whose release passes is_l_diverse; nullopt when no partition passes.
/// Exhaustive over partitions, intended for n <= ~10.
std::optional<DiversitySolution> solve_l_diversity_bruteforce(const DiversityInstance& inst, int l);

}  // namespace anonkit
