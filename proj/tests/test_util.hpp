#pragma once

#include <random>
#include <string>
#include <vector>

#include "anonkit/core.hpp"

namespace anonkit::testutil {

// Builds a database from rows of single-character cells, e.g. {"ab", "ad"}.
inline Database make_db(const std::vector<std::string>& rows) {
    Database db;
    for (const std::string& r : rows) {
        for (char c : r) {
            db.alphabet.intern(std::string(1, c));
        }
    }
    for (const std::string& r : rows) {
        Row row;
        for (char c : r) {
            row.push_back(*db.alphabet.find(std::string(1, c)));
        }
        db.rows.push_back(std::move(row));
    }
    return db;
}

inline Database random_db(std::mt19937& rng, int n, int m, int c) {
    Database db;
    for (int i = 0; i < c; ++i) {
        db.alphabet.intern(std::to_string(i));
    }
    std::uniform_int_distribution<int> pick(0, c - 1);
    for (int r = 0; r < n; ++r) {
        Row row(m);
        for (int col = 0; col < m; ++col) {
            row[col] = pick(rng);
        }
        db.rows.push_back(std::move(row));
    }
    return db;
}

}  // namespace anonkit::testutil
