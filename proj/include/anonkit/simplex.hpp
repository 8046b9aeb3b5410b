#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "anonkit/core.hpp"
#include "anonkit/hierarchy.hpp"

namespace anonkit {

/// Hypergraph with weighted 2-edges and 3-edges. A well-formed instance
/// satisfies closure (every triple's three sub-pairs exist) and the simplex
/// inequality c(u,v) + c(v,w) + c(u,w) <= 2 c(u,v,w).
class CostHypergraph {
public:
    explicit CostHypergraph(int vertex_count);

    int vertex_count() const { return vertex_count_; }

    void set_pair_cost(int u, int v, long long cost);
    void set_triple_cost(int u, int v, int w, long long cost);

    std::optional<long long> pair_cost(int u, int v) const;
    std::optional<long long> triple_cost(int u, int v, int w) const;

    size_t pair_edge_count() const { return pairs_.size(); }
    size_t triple_edge_count() const { return triples_.size(); }

    /// Sorted triples, each as {u, v, w} with u < v < w.
    std::vector<std::array<int, 3>> triples() const;

private:
    uint64_t pair_key(int u, int v) const;
    uint64_t triple_key(int u, int v, int w) const;

    int vertex_count_;
    std::unordered_map<uint64_t, long long> pairs_;
    std::unordered_map<uint64_t, long long> triples_;
};

/// A perfect cover of the vertices by chosen 2- and 3-edges.
struct SimplexMatching {
    std::vector<std::vector<int>> chosen_edges;  // each sorted, size 2 or 3
    long long cost = 0;
};

/// The 2-anonymity hypergraph: one vertex per row, pair edges costing
/// C_{i,j}, triple edges costing C_{i,j,k}. Costs come from the suppression
/// model, or from the hierarchy when one is given.
CostHypergraph build_anonymity_hypergraph(const Database& db,
                                          const GeneralizationHierarchy* h = nullptr);

/// Closure and inequality violations; empty means the conditions hold.
std::vector<std::string> check_simplex_conditions(const CostHypergraph& hg);

/// Exact minimum-cost simplex matching via dynamic programming over subsets
/// of uncovered vertices (the lowest uncovered vertex is always covered
/// next). O(2^n n^2); fine for desk-scale instances. Ties are broken toward
/// the lexicographically smallest sorted edge list. Throws InfeasibleError
/// when no perfect cover exists.
SimplexMatching solve_simplex_matching(const CostHypergraph& hg);

}  // namespace anonkit
