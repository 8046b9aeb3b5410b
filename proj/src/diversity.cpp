#include "anonkit/diversity.hpp"

#include <algorithm>
#include <functional>

namespace anonkit {

void DiversityInstance::validate() const {
    db.validate(true);
    const int m = db.column_count();
    std::vector<int> owner(m, -1);
    auto mark = [&](const std::vector<int>& cols, int who) {
        for (int c : cols) {
            if (c < 0 || c >= m) {
                throw std::invalid_argument("column index " + std::to_string(c) + " out of range");
            }
            if (owner[c] != -1) {
                throw std::invalid_argument("column " + std::to_string(c) +
                                            " assigned to both Q and S");
            }
            owner[c] = who;
        }
    };
    mark(q_columns, 0);
    mark(s_columns, 1);
    for (int c = 0; c < m; ++c) {
        if (owner[c] == -1) {
            throw std::invalid_argument("column " + std::to_string(c) + " is neither Q nor S");
        }
    }
    if (s_columns.empty()) {
        throw std::invalid_argument("a diversity instance needs at least one sensitive column");
    }
}

namespace {

bool q_equal(const DiversityInstance& inst, const Database& table, int a, int b) {
    for (int c : inst.q_columns) {
        if (table.rows[a][c] != table.rows[b][c]) return false;
    }
    return true;
}

}  // namespace

bool is_l_diverse(const DiversityInstance& inst, const Database& anonymized, int l) {
    if (l < 1) {
        throw std::invalid_argument("l must be positive");
    }
    inst.validate();
    if (anonymized.row_count() != inst.db.row_count() ||
        anonymized.column_count() != inst.db.column_count()) {
        throw std::invalid_argument("anonymized table shape differs from the instance");
    }
    if (l == 1) return true;

    const int n = anonymized.row_count();
    for (int u0 = 0; u0 < n; ++u0) {
        std::vector<int> q_class;
        for (int v = 0; v < n; ++v) {
            if (q_equal(inst, anonymized, u0, v)) q_class.push_back(v);
        }
        for (int c : inst.s_columns) {
            std::vector<Token> values;
            for (int v : q_class) {
                const Token t = anonymized.rows[v][c];
                if (std::find(values.begin(), values.end(), t) == values.end()) {
                    values.push_back(t);
                }
            }
            if (static_cast<int>(values.size()) < l) {
                return false;
            }
        }
    }
    return true;
}

long long diversity_cost(const DiversityInstance& inst, const std::vector<RowGroup>& groups) {
    long long total = 0;
    for (const RowGroup& g : groups) {
        if (g.empty()) {
            throw std::invalid_argument("empty group");
        }
        int bad = 0;
        for (int c : inst.q_columns) {
            const Token first = inst.db.rows[g[0]][c];
            for (size_t i = 1; i < g.size(); ++i) {
                if (inst.db.rows[g[i]][c] != first) {
                    ++bad;
                    break;
                }
            }
        }
        total += static_cast<long long>(g.size()) * bad;
    }
    return total;
}

Database diversity_release(const DiversityInstance& inst, const std::vector<RowGroup>& groups) {
    Database out = inst.db;
    for (const RowGroup& g : groups) {
        for (int c : inst.q_columns) {
            const Token first = inst.db.rows[g[0]][c];
            bool agrees = true;
            for (size_t i = 1; i < g.size(); ++i) {
                if (inst.db.rows[g[i]][c] != first) {
                    agrees = false;
                    break;
                }
            }
            if (!agrees) {
                for (int idx : g) {
                    out.rows[idx][c] = kStar;
                }
            }
        }
    }
    return out;
}

namespace {

void enumerate_partitions(int n, int l, std::vector<RowGroup>& current, int next,
                          const std::function<void(const std::vector<RowGroup>&)>& visit) {
    if (next == n) {
        for (const RowGroup& g : current) {
            if (static_cast<int>(g.size()) < l) return;
        }
        visit(current);
        return;
    }
    // Row `next` joins an existing group or opens a new one; groups are thus
    // canonically ordered by smallest member, avoiding duplicate partitions.
    // Indexed access: recursion grows `current`, invalidating references.
    const size_t group_count = current.size();
    for (size_t gi = 0; gi < group_count; ++gi) {
        current[gi].push_back(next);
        enumerate_partitions(n, l, current, next + 1, visit);
        current[gi].pop_back();
    }
    current.push_back({next});
    enumerate_partitions(n, l, current, next + 1, visit);
    current.pop_back();
}

}  // namespace

std::optional<DiversitySolution> solve_l_diversity_bruteforce(const DiversityInstance& inst,
                                                              int l) {
    if (l < 1) {
        throw std::invalid_argument("l must be positive");
    }
    inst.validate();
    const int n = inst.db.row_count();
    if (n < l) {
        return std::nullopt;
    }
    if (n > 12) {
        throw std::invalid_argument("diversity brute force is limited to 12 rows");
    }

    std::optional<DiversitySolution> best;
    std::vector<RowGroup> current;
    enumerate_partitions(n, l, current, 0, [&](const std::vector<RowGroup>& groups) {
        const long long cost = diversity_cost(inst, groups);
        if (best && cost >= best->total_cost) {
            return;
        }
        const Database released = diversity_release(inst, groups);
        if (is_l_diverse(inst, released, l)) {
            best = DiversitySolution{groups, cost};
        }
    });
    return best;
}

}  // namespace anonkit
