#include "anonkit/simplex.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace anonkit {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}

CostHypergraph::CostHypergraph(int vertex_count) : vertex_count_(vertex_count) {
    if (vertex_count < 1) {
        throw std::invalid_argument("hypergraph needs at least one vertex");
    }
}

uint64_t CostHypergraph::pair_key(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) {
        throw std::invalid_argument("bad pair edge");
    }
    if (u > v) std::swap(u, v);
    return static_cast<uint64_t>(u) * vertex_count_ + v;
}

uint64_t CostHypergraph::triple_key(int u, int v, int w) const {
    std::array<int, 3> t = {u, v, w};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2] || t[0] < 0 || t[2] >= vertex_count_) {
        throw std::invalid_argument("bad triple edge");
    }
    return (static_cast<uint64_t>(t[0]) * vertex_count_ + t[1]) * vertex_count_ + t[2];
}

void CostHypergraph::set_pair_cost(int u, int v, long long cost) {
    pairs_[pair_key(u, v)] = cost;
}

void CostHypergraph::set_triple_cost(int u, int v, int w, long long cost) {
    triples_[triple_key(u, v, w)] = cost;
}

std::optional<long long> CostHypergraph::pair_cost(int u, int v) const {
    auto it = pairs_.find(pair_key(u, v));
    if (it == pairs_.end()) return std::nullopt;
    return it->second;
}

std::optional<long long> CostHypergraph::triple_cost(int u, int v, int w) const {
    auto it = triples_.find(triple_key(u, v, w));
    if (it == triples_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::array<int, 3>> CostHypergraph::triples() const {
    std::vector<std::array<int, 3>> out;
    out.reserve(triples_.size());
    for (const auto& [key, cost] : triples_) {
        const int w = static_cast<int>(key % vertex_count_);
        const int v = static_cast<int>((key / vertex_count_) % vertex_count_);
        const int u = static_cast<int>(key / vertex_count_ / vertex_count_);
        out.push_back({u, v, w});
    }
    std::sort(out.begin(), out.end());
    return out;
}

CostHypergraph build_anonymity_hypergraph(const Database& db, const GeneralizationHierarchy* h) {
    const int n = db.row_count();
    if (n < 2) {
        throw InfeasibleError("no 2-anonymous solution exists for fewer than two rows");
    }
    CostHypergraph hg(n);
    auto cost_of = [&](const RowGroup& g) {
        return h != nullptr ? generalized_group_cost(db, g, *h) : group_cost(db, g);
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            hg.set_pair_cost(i, j, cost_of({i, j}));
            for (int k = j + 1; k < n; ++k) {
                hg.set_triple_cost(i, j, k, cost_of({i, j, k}));
            }
        }
    }
    return hg;
}

std::vector<std::string> check_simplex_conditions(const CostHypergraph& hg) {
    std::vector<std::string> violations;
    for (const auto& t : hg.triples()) {
        const auto [u, v, w] = t;
        const std::string label =
            "{" + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(w) + "}";
        const auto cuv = hg.pair_cost(u, v);
        const auto cvw = hg.pair_cost(v, w);
        const auto cuw = hg.pair_cost(u, w);
        if (!cuv || !cvw || !cuw) {
            violations.push_back("triple " + label + " is missing a sub-pair edge");
            continue;
        }
        const long long triple = *hg.triple_cost(u, v, w);
        if (*cuv + *cvw + *cuw > 2 * triple) {
            violations.push_back("triple " + label + ": pair costs sum to " +
                                 std::to_string(*cuv + *cvw + *cuw) + " > 2*" +
                                 std::to_string(triple));
        }
    }
    return violations;
}

SimplexMatching solve_simplex_matching(const CostHypergraph& hg) {
    const int n = hg.vertex_count();
    if (n < 2) {
        throw InfeasibleError("infeasible: a single vertex cannot be covered");
    }
    if (n > 24) {
        throw std::invalid_argument("simplex matching solver is limited to 24 vertices");
    }
    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<long long> dp(full + 1, kInf);
    dp[0] = 0;

    // dp[mask] = cheapest cover of exactly the vertices in mask. The lowest
    // set vertex is covered by a pair or triple edge inside the mask; edges
    // are tried in lexicographic order so the first optimum found during
    // reconstruction is the lexicographically smallest edge list.
    for (uint32_t mask = 1; mask <= full; ++mask) {
        const int v = __builtin_ctz(mask);
        long long best = kInf;
        for (int a = v + 1; a < n; ++a) {
            if (!(mask & (1u << a))) continue;
            if (auto c = hg.pair_cost(v, a)) {
                const long long rest = dp[mask & ~((1u << v) | (1u << a))];
                if (rest < kInf && rest + *c < best) best = rest + *c;
            }
            for (int b = a + 1; b < n; ++b) {
                if (!(mask & (1u << b))) continue;
                if (auto c = hg.triple_cost(v, a, b)) {
                    const long long rest = dp[mask & ~((1u << v) | (1u << a) | (1u << b))];
                    if (rest < kInf && rest + *c < best) best = rest + *c;
                }
            }
        }
        dp[mask] = best;
    }
    if (dp[full] >= kInf) {
        throw InfeasibleError("infeasible: no perfect cover by pair and triple edges");
    }

    SimplexMatching matching;
    matching.cost = dp[full];
    uint32_t mask = full;
    while (mask != 0) {
        const int v = __builtin_ctz(mask);
        bool placed = false;
        for (int a = v + 1; a < n && !placed; ++a) {
            if (!(mask & (1u << a))) continue;
            if (auto c = hg.pair_cost(v, a)) {
                const uint32_t rest = mask & ~((1u << v) | (1u << a));
                if (dp[rest] < kInf && dp[rest] + *c == dp[mask]) {
                    matching.chosen_edges.push_back({v, a});
                    mask = rest;
                    placed = true;
                    break;
                }
            }
            for (int b = a + 1; b < n; ++b) {
                if (!(mask & (1u << b))) continue;
                if (auto c = hg.triple_cost(v, a, b)) {
                    const uint32_t rest = mask & ~((1u << v) | (1u << a) | (1u << b));
                    if (dp[rest] < kInf && dp[rest] + *c == dp[mask]) {
                        matching.chosen_edges.push_back({v, a, b});
                        mask = rest;
                        placed = true;
                        break;
                    }
                }
            }
        }
        if (!placed) {
            throw std::logic_error("simplex matching reconstruction failed");
        }
    }
    return matching;
}

}  // namespace anonkit
