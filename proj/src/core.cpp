#include "anonkit/core.hpp"

#include <algorithm>
#include <map>

namespace anonkit {

Token Alphabet::intern(const std::string& symbol) {
    if (symbol == "*") {
        throw std::invalid_argument("the star symbol cannot be part of an alphabet");
    }
    auto it = index_.find(symbol);
    if (it != index_.end()) {
        return it->second;
    }
    Token t = static_cast<Token>(names_.size());
    names_.push_back(symbol);
    index_.emplace(symbol, t);
    return t;
}

std::optional<Token> Alphabet::find(const std::string& symbol) const {
    auto it = index_.find(symbol);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const std::string& Alphabet::name(Token t) const {
    static const std::string star = "*";
    if (t == kStar) {
        return star;
    }
    if (t < 0 || t >= static_cast<Token>(names_.size())) {
        throw std::out_of_range("token outside alphabet");
    }
    return names_[t];
}

void Database::validate(bool allow_stars) const {
    const int m = column_count();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != m) {
            throw std::invalid_argument("ragged database: row " + std::to_string(i) +
                                        " has " + std::to_string(rows[i].size()) +
                                        " cells, expected " + std::to_string(m));
        }
        for (Token t : rows[i]) {
            if (t == kStar) {
                if (!allow_stars) {
                    throw std::invalid_argument("input database contains a star cell in row " +
                                                std::to_string(i));
                }
            } else if (t < 0 || t >= alphabet.size()) {
                throw std::invalid_argument("row " + std::to_string(i) +
                                            " contains a token outside the alphabet");
            }
        }
    }
}

namespace {

void check_group(const Database& db, const RowGroup& group) {
    if (group.empty()) {
        throw std::invalid_argument("empty group");
    }
    for (int idx : group) {
        if (idx < 0 || idx >= db.row_count()) {
            throw std::invalid_argument("row index " + std::to_string(idx) + " out of range");
        }
    }
}

}  // namespace

std::vector<int> disagreement_columns(const Database& db, const RowGroup& group) {
    check_group(db, group);
    std::vector<int> columns;
    const int m = db.column_count();
    for (int col = 0; col < m; ++col) {
        const Token first = db.rows[group[0]][col];
        for (size_t i = 1; i < group.size(); ++i) {
            if (db.rows[group[i]][col] != first) {
                columns.push_back(col);
                break;
            }
        }
    }
    return columns;
}

long long group_cost(const Database& db, const RowGroup& group) {
    return static_cast<long long>(group.size()) *
           static_cast<long long>(disagreement_columns(db, group).size());
}

AnonymizationSolution anonymize_partition(const Database& db, const std::vector<RowGroup>& groups) {
    std::vector<char> seen(db.row_count(), 0);
    int covered = 0;
    for (const RowGroup& g : groups) {
        check_group(db, g);
        for (int idx : g) {
            if (seen[idx]) {
                throw std::invalid_argument("not a partition: row " + std::to_string(idx) +
                                            " appears twice");
            }
            seen[idx] = 1;
            ++covered;
        }
    }
    if (covered != db.row_count()) {
        throw std::invalid_argument("not a partition: some rows are uncovered");
    }

    AnonymizationSolution solution;
    solution.groups = groups;
    for (RowGroup& g : solution.groups) {
        std::sort(g.begin(), g.end());
    }
    for (const RowGroup& g : solution.groups) {
        Row anon = db.rows[g[0]];
        const std::vector<int> bad = disagreement_columns(db, g);
        for (int col : bad) {
            anon[col] = kStar;
        }
        solution.total_cost += static_cast<long long>(g.size()) * static_cast<long long>(bad.size());
        solution.anonymized_rows.push_back(std::move(anon));
    }
    return solution;
}

Database released_database(const Database& db, const AnonymizationSolution& solution) {
    Database out;
    out.alphabet = db.alphabet;
    out.rows.resize(db.row_count());
    for (size_t g = 0; g < solution.groups.size(); ++g) {
        for (int idx : solution.groups[g]) {
            out.rows[idx] = solution.anonymized_rows[g];
        }
    }
    return out;
}

bool is_k_anonymous(const Database& db, int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be positive");
    }
    std::map<Row, int> multiplicity;
    for (const Row& r : db.rows) {
        ++multiplicity[r];
    }
    for (const auto& [row, count] : multiplicity) {
        if (count < k) {
            return false;
        }
    }
    return true;
}

int min_group_size(const std::vector<RowGroup>& groups) {
    int best = 0;
    for (const RowGroup& g : groups) {
        if (best == 0 || static_cast<int>(g.size()) < best) {
            best = static_cast<int>(g.size());
        }
    }
    return best;
}

}  // namespace anonkit
