#include "anonkit/solvers.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

#include "anonkit/simplex.hpp"

namespace anonkit {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}

AnonymizationSolution solve_2_anonymity(const Database& db, const GeneralizationHierarchy* h) {
    if (db.row_count() < 2) {
        throw InfeasibleError("2-anonymity needs at least two rows");
    }
    const CostHypergraph hg = build_anonymity_hypergraph(db, h);
    const SimplexMatching matching = solve_simplex_matching(hg);

    std::vector<RowGroup> groups;
    groups.reserve(matching.chosen_edges.size());
    for (const auto& edge : matching.chosen_edges) {
        groups.emplace_back(edge.begin(), edge.end());
    }
    AnonymizationSolution solution = anonymize_partition(db, groups);
    if (h != nullptr) {
        long long cost = 0;
        for (const RowGroup& g : solution.groups) {
            cost += generalized_group_cost(db, g, *h);
        }
        solution.total_cost = cost;
    }
    return solution;
}

AnonymizationSolution brute_force_k_anonymity(const Database& db, int k) {
    const int n = db.row_count();
    if (k < 1) {
        throw std::invalid_argument("k must be positive");
    }
    if (n < k) {
        throw InfeasibleError("fewer rows than k");
    }
    if (n > 22) {
        throw std::invalid_argument("brute force solver is limited to 22 rows");
    }
    const uint32_t full = (1u << n) - 1;
    std::vector<long long> dp(full + 1, kInf);
    std::vector<uint32_t> choice(full + 1, 0);
    dp[0] = 0;

    RowGroup scratch;
    for (uint32_t mask = 1; mask <= full; ++mask) {
        const uint32_t low = mask & -mask;
        // Enumerate the group containing the lowest row of the mask.
        const uint32_t rest = mask ^ low;
        for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
            const uint32_t g = sub | low;
            const int size = __builtin_popcount(g);
            if (size >= k && size <= 2 * k - 1) {
                scratch.clear();
                for (int i = 0; i < n; ++i) {
                    if (g & (1u << i)) scratch.push_back(i);
                }
                const long long c = dp[mask ^ g] + group_cost(db, scratch);
                if (c < dp[mask]) {
                    dp[mask] = c;
                    choice[mask] = g;
                }
            }
            if (sub == 0) break;
        }
    }
    if (dp[full] >= kInf) {
        throw InfeasibleError("no partition into groups of size k..2k-1 exists");
    }

    std::vector<RowGroup> groups;
    for (uint32_t mask = full; mask != 0;) {
        const uint32_t g = choice[mask];
        RowGroup group;
        for (int i = 0; i < n; ++i) {
            if (g & (1u << i)) group.push_back(i);
        }
        groups.push_back(std::move(group));
        mask ^= g;
    }
    return anonymize_partition(db, groups);
}

namespace {

// --- divide-and-conquer solver over the multiset of row contents ---
//
// Rows are deduplicated into a palette of distinct contents; a subproblem is
// a count vector over the palette. Keying the memo on contents rather than
// index sets is what keeps heavily duplicated inputs (the kernelization
// regime) tractable; witnesses are later rebound to concrete row indices.
class DncSolver {
public:
    DncSolver(const Database& db, int k) : db_(db), k_(k) {
        std::map<Row, int> palette_index;
        for (int i = 0; i < db.row_count(); ++i) {
            auto [it, fresh] = palette_index.emplace(db.rows[i], static_cast<int>(palette_.size()));
            if (fresh) {
                palette_.push_back(db.rows[i]);
                palette_rows_.emplace_back();
            }
            palette_rows_[it->second].push_back(i);
        }
        root_.resize(palette_.size());
        for (size_t p = 0; p < palette_.size(); ++p) {
            root_[p] = static_cast<int>(palette_rows_[p].size());
        }
    }

    std::vector<RowGroup> solve() {
        if (solve_cost(root_) >= kInf) {
            throw InfeasibleError("no k-anonymous partition exists");
        }
        cursor_.assign(palette_.size(), 0);
        std::vector<RowGroup> groups;
        rebuild(root_, groups);
        return groups;
    }

private:
    using Counts = std::vector<int>;

    struct Entry {
        long long cost = kInf;
        Counts split;  // empty: the whole state is one group
    };

    static std::string key_of(const Counts& c) {
        return std::string(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(int));
    }

    long long base_group_cost(const Counts& state, int total) const {
        int disagreements = 0;
        for (int col = 0; col < db_.column_count(); ++col) {
            Token seen = kStar;
            bool first = true;
            for (size_t p = 0; p < state.size(); ++p) {
                if (state[p] == 0) continue;
                if (first) {
                    seen = palette_[p][col];
                    first = false;
                } else if (palette_[p][col] != seen) {
                    ++disagreements;
                    break;
                }
            }
        }
        return static_cast<long long>(total) * disagreements;
    }

    long long solve_cost(const Counts& state) {
        int total = 0;
        for (int c : state) total += c;
        if (total < k_) return kInf;
        if (total <= 2 * k_ - 1) {
            return base_group_cost(state, total);
        }
        const std::string key = key_of(state);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second.cost;

        Entry entry;
        const int lo = (total + 1) / 2;
        const int hi = std::min(lo + 2 * k_, total - k_);
        Counts part(state.size(), 0);
        enumerate_splits(state, part, 0, 0, lo, hi, entry);

        const auto pos = memo_.emplace(key, std::move(entry)).first;
        return pos->second.cost;
    }

    void enumerate_splits(const Counts& state, Counts& part, size_t idx, int taken, int lo, int hi,
                          Entry& entry) {
        if (taken > hi) return;
        if (idx == state.size()) {
            if (taken < lo) return;
            Counts rest(state.size());
            for (size_t p = 0; p < state.size(); ++p) rest[p] = state[p] - part[p];
            const long long a = solve_cost(part);
            if (a >= kInf) return;
            const long long b = solve_cost(rest);
            if (b >= kInf) return;
            if (a + b < entry.cost) {
                entry.cost = a + b;
                entry.split = part;
            }
            return;
        }
        int remaining_cap = 0;
        for (size_t p = idx; p < state.size(); ++p) remaining_cap += state[p];
        if (taken + remaining_cap < lo) return;
        for (int c = 0; c <= state[idx] && taken + c <= hi; ++c) {
            part[idx] = c;
            enumerate_splits(state, part, idx + 1, taken + c, lo, hi, entry);
        }
        part[idx] = 0;
    }

    void rebuild(const Counts& state, std::vector<RowGroup>& groups) {
        int total = 0;
        for (int c : state) total += c;
        if (total == 0) return;
        if (total <= 2 * k_ - 1) {
            groups.push_back(take_rows(state));
            return;
        }
        const auto it = memo_.find(key_of(state));
        if (it == memo_.end() || it->second.split.empty()) {
            throw std::logic_error("divide-and-conquer witness reconstruction failed");
        }
        const Counts part = it->second.split;
        Counts rest(state.size());
        for (size_t p = 0; p < state.size(); ++p) rest[p] = state[p] - part[p];
        rebuild(part, groups);
        rebuild(rest, groups);
    }

    RowGroup take_rows(const Counts& state) {
        RowGroup group;
        for (size_t p = 0; p < state.size(); ++p) {
            for (int c = 0; c < state[p]; ++c) {
                group.push_back(palette_rows_[p][cursor_[p]++]);
            }
        }
        std::sort(group.begin(), group.end());
        return group;
    }

    const Database& db_;
    int k_;
    std::vector<Row> palette_;
    std::vector<std::vector<int>> palette_rows_;
    Counts root_;
    std::vector<int> cursor_;
    std::unordered_map<std::string, Entry> memo_;
};

}  // namespace

AnonymizationSolution solve_k_anonymity_dnc(const Database& db, int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be positive");
    }
    if (db.row_count() < k) {
        throw InfeasibleError("fewer rows than k");
    }
    DncSolver solver(db, k);
    return anonymize_partition(db, solver.solve());
}

KernelizationResult kernelize(const Database& db, int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be positive");
    }
    const int n = db.row_count();
    const int columns = db.column_count();

    KernelizationResult result;
    result.kernel.alphabet = db.alphabet;

    // T = k * 2k * 2^columns, saturated so wide tables never extract.
    long long threshold = static_cast<long long>(k) * (2 * k);
    for (int i = 0; i < columns && threshold <= n; ++i) {
        threshold *= 2;
    }

    std::map<Row, long long> count;  // row hashing walks all cells once
    for (const Row& r : db.rows) {
        ++count[r];
        result.cells_touched += columns;
    }

    std::map<Row, long long> to_drop;
    for (const Row& r : db.rows) {
        long long& c = count[r];
        if (c > threshold) {
            c -= k;
            to_drop[r] += k;
        }
    }

    std::map<Row, std::vector<int>> dropped_rows;
    for (int i = 0; i < n; ++i) {
        auto it = to_drop.find(db.rows[i]);
        if (it != to_drop.end() && it->second > 0) {
            --it->second;
            dropped_rows[db.rows[i]].push_back(i);
        } else {
            result.kernel.rows.push_back(db.rows[i]);
            result.kernel_row_origin.push_back(i);
            result.cells_touched += columns;
        }
    }
    for (auto& [row, indices] : dropped_rows) {
        for (size_t at = 0; at < indices.size(); at += k) {
            result.extracted_groups.emplace_back(indices.begin() + at, indices.begin() + at + k);
        }
        result.cells_touched += columns;  // each content serialized once for output
    }
    return result;
}

AnonymizationSolution solve_k_anonymity_kernelized(const Database& db, int k) {
    if (db.row_count() < k) {
        throw InfeasibleError("fewer rows than k");
    }
    KernelizationResult kr = kernelize(db, k);
    AnonymizationSolution kernel_solution = solve_k_anonymity_dnc(kr.kernel, k);

    std::vector<RowGroup> groups;
    for (const RowGroup& g : kernel_solution.groups) {
        RowGroup mapped;
        mapped.reserve(g.size());
        for (int idx : g) {
            mapped.push_back(kr.kernel_row_origin[idx]);
        }
        groups.push_back(std::move(mapped));
    }
    groups.insert(groups.end(), kr.extracted_groups.begin(), kr.extracted_groups.end());
    return anonymize_partition(db, groups);
}

}  // namespace anonkit
