#pragma once

#include <string>
#include <vector>

#include "anonkit/core.hpp"

namespace anonkit {

/// A rooted tree over an extended symbol set. Leaves correspond one-to-one
/// with the database alphabet; every node carries a cost, monotone toward the
/// root (a parent never costs less than a child). Suppression is the special
/// case of a star tree whose center costs 1 and whose leaves cost 0.
class GeneralizationHierarchy {
public:
    struct Node {
        std::string symbol;
        long long cost = 0;
        int parent = -1;           // -1 for the root
        std::vector<int> children;
        int depth = 0;
    };

    /// Builds a tree from parallel arrays; parents[i] == -1 marks the root.
    GeneralizationHierarchy(std::vector<std::string> symbols, std::vector<long long> costs,
                            std::vector<int> parents);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int id) const { return nodes_.at(id); }
    int root() const { return root_; }
    bool is_leaf(int id) const { return nodes_.at(id).children.empty(); }

    /// Leaf node carrying the given symbol, or -1.
    int leaf_of(const std::string& symbol) const;

    /// All structural violations: disconnected/cyclic parent links, duplicate
    /// symbols, non-monotone costs, and (when an alphabet is supplied) a
    /// broken leaf bijection. Empty result means the hierarchy is valid.
    std::vector<std::string> violations(const Alphabet* alphabet = nullptr) const;

    /// Deepest node that is an ancestor-or-self of every token's leaf.
    /// Tokens must be alphabet symbols (no stars).
    int lowest_common_ancestor(const Alphabet& alphabet, const std::vector<Token>& tokens) const;

private:
    std::vector<Node> nodes_;
    int root_ = -1;
};

/// Convenience wrapper returning true iff violations() is empty.
bool validate_hierarchy(const GeneralizationHierarchy& h, const Alphabet* alphabet = nullptr);

/// The suppression model as a hierarchy: a star tree whose center is the star
/// symbol with cost 1 and whose leaves are the alphabet symbols with cost 0.
GeneralizationHierarchy star_hierarchy(const Alphabet& alphabet);

/// Cheapest cost of making the group identical under the hierarchy: agreeing
/// columns stay untouched (cost 0); each disagreeing column is rewritten to
/// the lowest common ancestor of its values, charged |group| * cost(lca).
long long generalized_group_cost(const Database& db, const RowGroup& group,
                                 const GeneralizationHierarchy& h);

/// The generalized record of a group, one symbol per column (the column value
/// where the group agrees, the LCA symbol where it does not).
std::vector<std::string> generalized_group_row(const Database& db, const RowGroup& group,
                                               const GeneralizationHierarchy& h);

}  // namespace anonkit
