#include "anonkit/hierarchy.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace anonkit {

GeneralizationHierarchy::GeneralizationHierarchy(std::vector<std::string> symbols,
                                                 std::vector<long long> costs,
                                                 std::vector<int> parents) {
    const size_t n = symbols.size();
    if (costs.size() != n || parents.size() != n) {
        throw std::invalid_argument("hierarchy arrays must have equal length");
    }
    if (n == 0) {
        throw std::invalid_argument("hierarchy must contain at least one node");
    }
    nodes_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        nodes_[i].symbol = std::move(symbols[i]);
        nodes_[i].cost = costs[i];
        nodes_[i].parent = parents[i];
        if (parents[i] == -1) {
            if (root_ != -1) {
                throw std::invalid_argument("hierarchy has more than one root");
            }
            root_ = static_cast<int>(i);
        } else if (parents[i] < 0 || parents[i] >= static_cast<int>(n)) {
            throw std::invalid_argument("hierarchy parent index out of range");
        }
    }
    if (root_ == -1) {
        throw std::invalid_argument("hierarchy has no root");
    }
    for (size_t i = 0; i < n; ++i) {
        if (nodes_[i].parent != -1) {
            nodes_[nodes_[i].parent].children.push_back(static_cast<int>(i));
        }
    }
    // Depths via iterative walk; also detects parent cycles (unreached nodes).
    std::vector<int> stack = {root_};
    size_t visited = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++visited;
        for (int c : nodes_[v].children) {
            nodes_[c].depth = nodes_[v].depth + 1;
            stack.push_back(c);
        }
    }
    if (visited != n) {
        throw std::invalid_argument("hierarchy parent links do not form a tree");
    }
}

int GeneralizationHierarchy::leaf_of(const std::string& symbol) const {
    for (int i = 0; i < node_count(); ++i) {
        if (is_leaf(i) && nodes_[i].symbol == symbol) {
            return i;
        }
    }
    return -1;
}

std::vector<std::string> GeneralizationHierarchy::violations(const Alphabet* alphabet) const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const Node& node : nodes_) {
        if (!seen.insert(node.symbol).second) {
            out.push_back("duplicate symbol '" + node.symbol + "'");
        }
    }
    for (int i = 0; i < node_count(); ++i) {
        const Node& node = nodes_[i];
        if (node.parent != -1 && nodes_[node.parent].cost < node.cost) {
            out.push_back("node '" + node.symbol + "' (cost " + std::to_string(node.cost) +
                          ") costs more than its parent '" + nodes_[node.parent].symbol +
                          "' (cost " + std::to_string(nodes_[node.parent].cost) + ")");
        }
        if (node.cost < 0) {
            out.push_back("node '" + node.symbol + "' has negative cost");
        }
    }
    if (alphabet != nullptr) {
        std::unordered_set<std::string> leaves;
        for (int i = 0; i < node_count(); ++i) {
            if (is_leaf(i)) {
                leaves.insert(nodes_[i].symbol);
            } else if (alphabet->find(nodes_[i].symbol).has_value()) {
                out.push_back("internal node '" + nodes_[i].symbol + "' is an alphabet symbol");
            }
        }
        for (int t = 0; t < alphabet->size(); ++t) {
            if (leaves.erase(alphabet->name(t)) == 0) {
                out.push_back("alphabet symbol '" + alphabet->name(t) + "' has no leaf");
            }
        }
        for (const std::string& extra : leaves) {
            out.push_back("leaf '" + extra + "' is not an alphabet symbol");
        }
    }
    return out;
}

int GeneralizationHierarchy::lowest_common_ancestor(const Alphabet& alphabet,
                                                    const std::vector<Token>& tokens) const {
    if (tokens.empty()) {
        throw std::invalid_argument("lowest_common_ancestor of an empty token set");
    }
    int lca = -1;
    for (Token t : tokens) {
        if (t == kStar) {
            throw std::invalid_argument("lowest_common_ancestor of a star cell");
        }
        int leaf = leaf_of(alphabet.name(t));
        if (leaf == -1) {
            throw std::invalid_argument("token '" + alphabet.name(t) + "' has no hierarchy leaf");
        }
        if (lca == -1) {
            lca = leaf;
            continue;
        }
        // Walk both nodes up to equal depth, then in lockstep.
        int a = lca;
        int b = leaf;
        while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
        while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
        while (a != b) {
            a = nodes_[a].parent;
            b = nodes_[b].parent;
        }
        lca = a;
    }
    return lca;
}

bool validate_hierarchy(const GeneralizationHierarchy& h, const Alphabet* alphabet) {
    return h.violations(alphabet).empty();
}

GeneralizationHierarchy star_hierarchy(const Alphabet& alphabet) {
    std::vector<std::string> symbols = {"*"};
    std::vector<long long> costs = {1};
    std::vector<int> parents = {-1};
    for (int t = 0; t < alphabet.size(); ++t) {
        symbols.push_back(alphabet.name(t));
        costs.push_back(0);
        parents.push_back(0);
    }
    return GeneralizationHierarchy(std::move(symbols), std::move(costs), std::move(parents));
}

namespace {

std::vector<Token> column_tokens(const Database& db, const RowGroup& group, int col) {
    std::vector<Token> tokens;
    for (int idx : group) {
        Token t = db.rows[idx][col];
        if (std::find(tokens.begin(), tokens.end(), t) == tokens.end()) {
            tokens.push_back(t);
        }
    }
    return tokens;
}

}  // namespace

long long generalized_group_cost(const Database& db, const RowGroup& group,
                                 const GeneralizationHierarchy& h) {
    if (group.empty()) {
        throw std::invalid_argument("empty group");
    }
    long long total = 0;
    for (int col = 0; col < db.column_count(); ++col) {
        std::vector<Token> tokens = column_tokens(db, group, col);
        if (tokens.size() <= 1) {
            continue;  // untouched cells cost nothing regardless of leaf cost
        }
        int lca = h.lowest_common_ancestor(db.alphabet, tokens);
        total += static_cast<long long>(group.size()) * h.node(lca).cost;
    }
    return total;
}

std::vector<std::string> generalized_group_row(const Database& db, const RowGroup& group,
                                               const GeneralizationHierarchy& h) {
    if (group.empty()) {
        throw std::invalid_argument("empty group");
    }
    std::vector<std::string> row;
    for (int col = 0; col < db.column_count(); ++col) {
        std::vector<Token> tokens = column_tokens(db, group, col);
        if (tokens.size() <= 1) {
            row.push_back(db.alphabet.name(tokens[0]));
        } else {
            row.push_back(h.node(h.lowest_common_ancestor(db.alphabet, tokens)).symbol);
        }
    }
    return row;
}

}  // namespace anonkit
