#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace anonkit {

/// Interned cell symbol. Nonnegative values index into an Alphabet; kStar is
/// the distinguished suppression symbol and is never part of the alphabet.
using Token = int32_t;

constexpr Token kStar = -1;

/// Thrown when an instance admits no solution (n < k, no perfect cover, ...).
/// CLI maps it to exit code 1, as opposed to usage/parse errors (exit 2).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Finite ordered symbol set. Symbols are interned strings; the star symbol
/// is represented out-of-band by kStar and may not be interned.
class Alphabet {
public:
    Alphabet() = default;

    /// Interns a symbol, returning its token. Idempotent.
    Token intern(const std::string& symbol);

    std::optional<Token> find(const std::string& symbol) const;

    const std::string& name(Token t) const;

    int size() const { return static_cast<int>(names_.size()); }

    bool operator==(const Alphabet& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Token> index_;
};

using Row = std::vector<Token>;

/// An n x m matrix of tokens over a shared alphabet. Input databases carry no
/// stars; anonymized (released) databases may. Row order and duplicates are
/// preserved: the database is a multiset realized as a sequence.
struct Database {
    Alphabet alphabet;
    std::vector<Row> rows;

    int row_count() const { return static_cast<int>(rows.size()); }
    int column_count() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }

    /// Checks rectangular shape, token range, and (unless allow_stars) the
    /// no-star input invariant. Throws std::invalid_argument on violation.
    void validate(bool allow_stars = false) const;
};

/// One anonymization group: a set of row indices, kept sorted and unique.
using RowGroup = std::vector<int>;

/// A partition of the row indices together with the suppression-model
/// anonymized row of each group and the total star count.
struct AnonymizationSolution {
    std::vector<RowGroup> groups;
    std::vector<Row> anonymized_rows;  // one per group, kStar on disagreeing columns
    long long total_cost = 0;
};

/// Columns on which the group members do not all agree.
std::vector<int> disagreement_columns(const Database& db, const RowGroup& group);

/// |group| * |disagreement_columns|: the stars needed to make the group
/// identical. For pairs this is C_{i,j}, for triples C_{i,j,k}.
long long group_cost(const Database& db, const RowGroup& group);

/// Suppresses every disagreeing column within each group. Throws
/// std::invalid_argument if `groups` is not a partition of the row indices.
AnonymizationSolution anonymize_partition(const Database& db, const std::vector<RowGroup>& groups);

/// The database released by a solution: each row replaced by its group's
/// anonymized row, original row order preserved.
Database released_database(const Database& db, const AnonymizationSolution& solution);

/// True iff every row is cell-wise identical (star equals star) to at least
/// k-1 other rows.
bool is_k_anonymous(const Database& db, int k);

/// Smallest group size of a partition; used when checking solutions.
int min_group_size(const std::vector<RowGroup>& groups);

}  // namespace anonkit
