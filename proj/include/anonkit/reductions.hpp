#pragma once

#include <array>
#include <string>
#include <vector>

#include "anonkit/core.hpp"
#include "anonkit/diversity.hpp"

namespace anonkit {

/// Simple undirected graph: no loops, no parallel edges.
struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;  // normalized u < v

    int edge_count() const { return static_cast<int>(edges.size()); }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    /// Throws std::invalid_argument on loops, duplicates, or range errors.
    void validate() const;
    std::vector<std::vector<int>> adjacency() const;
};

/// Graph plus a 3-coloring of its vertices such that every edge crosses two
/// distinct parts.
struct TripartiteGraph {
    Graph graph;
    std::vector<int> part;  // 0, 1 or 2 per vertex

    void validate() const;
};

/// Max 3-dimensional matching instance with the occurrence bound of 3.
struct ThreeDMInstance {
    int w_size = 0;
    int x_size = 0;
    int y_size = 0;
    std::vector<std::array<int, 3>> triples;  // (w, x, y), 0-based per part

    int element_count() const { return w_size + x_size + y_size; }
    /// Throws std::invalid_argument on bad indices, duplicate triples, or an
    /// element occurring in more than three triples.
    void validate() const;
};

struct Literal {
    int variable = 0;
    bool negated = false;
};

/// 3-CNF with exactly three literals per clause.
struct CnfFormula {
    int variable_count = 0;
    std::vector<std::array<Literal, 3>> clauses;

    void validate() const;
};

struct GadgetEdge {
    int u = 0;
    int v = 0;  // normalized u < v
    bool operator==(const GadgetEdge& o) const { return u == o.u && v == o.v; }
};

/// Bookkeeping that ties final-graph edges back to the gadget they realize.
/// Shared-edge lists hold the post-merge edges: star-merged edges and hub
/// edges, attributed to the tree side they came from.
struct VariableGadget {
    int variable = 0;
    int depth = 0;
    std::vector<int> vertices;  // both trees' surviving vertices (no hubs)
    std::vector<GadgetEdge> top_shared;
    std::vector<GadgetEdge> bottom_shared;
    std::vector<GadgetEdge> cross_edges;
};

struct ClauseStar {
    int clause = 0;
    int slot = 0;  // which of the clause's three stars
    int center = 0;
    GadgetEdge private_edge;
    std::vector<GadgetEdge> shared_edges;  // one per literal, clause order
};

struct HubRecord {
    int hub = 0;
    int variable = 0;
    bool top = false;
    std::vector<GadgetEdge> edges;
};

struct GadgetRegistry {
    std::vector<VariableGadget> variables;
    std::vector<ClauseStar> stars;
    std::vector<HubRecord> hubs;

    const VariableGadget* find_variable(int variable) const;
};

/// The 27-attribute 3-anonymity database of a 3DM-3 instance: one row per
/// element, patterned so three rows agree in exactly one column precisely
/// when they form a triple of M. Elements contained in fewer than three
/// triples are padded with fresh one-off symbols. Rows are ordered all of W,
/// then X, then Y.
Database tdm3_to_db27(const ThreeDMInstance& inst);

/// Row index of an element in the tdm3_to_db27 layout (part 0 = W, 1 = X,
/// 2 = Y).
int db27_row_of(const ThreeDMInstance& inst, int part, int element);

struct Map3dmResult {
    AnonymizationSolution solution;
    long long cost = 0;           // stars of the produced 3-anonymity solution
    int realized_triples = 0;     // groups that are triples of M
    double c_3dm = 0.0;           // 3|M'| / n
    double c_3anon = 0.0;         // 1 - cost / 27n
};

/// Maps a feasible matching to a 3-anonymity solution: matched triples become
/// 3-row groups; the remaining rows are packed into groups of three to five,
/// avoiding groups that accidentally form triples of M whenever possible.
Map3dmResult map_3dm_solution(const ThreeDMInstance& inst, const std::vector<int>& matching);

struct ThreeBinaryTree {
    Graph graph;
    std::vector<int> depth;
    std::vector<int> parent;  // -1 for the root
    std::vector<int> leaves;  // vertices at the deepest level, ascending
};

/// Complete tree whose root has three children and every other internal node
/// two; 3 * 2^(d-1) leaves at depth d.
ThreeBinaryTree build_3binary_tree(int d);

struct GdGadget {
    Graph graph;
    std::vector<int> depth;          // per vertex, within its own tree
    std::vector<bool> in_top_tree;   // per vertex
    std::vector<bool> is_leaf;       // per vertex (surviving leaves)
    std::vector<GadgetEdge> shared_top;
    std::vector<GadgetEdge> shared_bottom;
    std::vector<GadgetEdge> cross_edges;
};

/// The variable gadget: two 3-binary trees of depth d, one leaf deleted from
/// each of the three first depth-(d-1) parents per tree, deprived parents
/// matched pairwise by three cross edges. Shared edges are those incident to
/// the surviving leaves; everything else is private.
GdGadget build_gadget_Gd(int d);

struct FormulaGraph {
    Graph graph;
    GadgetRegistry registry;
};

/// The 1-in-3-SAT reduction graph: one G_d copy per occurring variable, three
/// S_5 stars per clause, positive literals merged into top trees and negated
/// ones into bottom trees, leftover shared edges absorbed by fresh hub
/// vertices three at a time. All choices are deterministic.
FormulaGraph formula_to_graph(const CnfFormula& phi);

/// The edge-vertex incidence matrix of a graph as a binary database: row i
/// has a 1 in column j iff vertex j lies on edge i.
Database graph_to_incidence_db(const Graph& g);

/// 2-diversity reduction: Q = incidence columns, S = three binary columns
/// recording which parts each edge touches.
DiversityInstance tripartite_to_2div(const TripartiteGraph& g);

/// 3-diversity reduction: Q = incidence columns, S = one ternary column
/// naming the pair of parts the edge spans.
DiversityInstance tripartite_to_3div(const TripartiteGraph& g);

}  // namespace anonkit
