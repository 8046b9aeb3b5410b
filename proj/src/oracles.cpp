#include "anonkit/oracles.hpp"

#include <algorithm>
#include <set>

namespace anonkit {

bool is_1in3_satisfied(const CnfFormula& phi, const std::vector<bool>& assignment) {
    for (const auto& clause : phi.clauses) {
        int true_literals = 0;
        for (const Literal& lit : clause) {
            const bool value = assignment[lit.variable] != lit.negated;
            if (value) ++true_literals;
        }
        if (true_literals != 1) return false;
    }
    return true;
}

std::vector<std::vector<bool>> enumerate_1in3_sat(const CnfFormula& phi) {
    phi.validate();
    if (phi.variable_count > 24) {
        throw std::invalid_argument("1-in-3 enumeration is limited to 24 variables");
    }
    std::vector<std::vector<bool>> satisfying;
    const uint32_t limit = 1u << phi.variable_count;
    for (uint32_t bits = 0; bits < limit; ++bits) {
        std::vector<bool> assignment(phi.variable_count);
        for (int v = 0; v < phi.variable_count; ++v) {
            assignment[v] = (bits >> v) & 1;
        }
        if (is_1in3_satisfied(phi, assignment)) {
            satisfying.push_back(std::move(assignment));
        }
    }
    return satisfying;
}

namespace {

bool matching_compatible(const ThreeDMInstance& inst, const std::vector<int>& chosen, int idx) {
    for (int other : chosen) {
        for (int part = 0; part < 3; ++part) {
            if (inst.triples[other][part] == inst.triples[idx][part]) return false;
        }
    }
    return true;
}

void grow_matchings(const ThreeDMInstance& inst, std::vector<int>& chosen, int from,
                    const std::function<void(const std::vector<int>&)>& visit) {
    visit(chosen);
    for (int idx = from; idx < static_cast<int>(inst.triples.size()); ++idx) {
        if (matching_compatible(inst, chosen, idx)) {
            chosen.push_back(idx);
            grow_matchings(inst, chosen, idx + 1, visit);
            chosen.pop_back();
        }
    }
}

}  // namespace

std::vector<int> max_3dm_bruteforce(const ThreeDMInstance& inst) {
    inst.validate();
    std::vector<int> best;
    std::vector<int> chosen;
    grow_matchings(inst, chosen, 0, [&](const std::vector<int>& m) {
        if (m.size() > best.size()) best = m;
    });
    return best;
}

std::vector<std::vector<int>> enumerate_3dm_matchings(const ThreeDMInstance& inst) {
    inst.validate();
    std::vector<std::vector<int>> all;
    std::vector<int> chosen;
    grow_matchings(inst, chosen, 0, [&](const std::vector<int>& m) { all.push_back(m); });
    return all;
}

// ---------------------------------------------------------------------------
// Edge partition search
// ---------------------------------------------------------------------------

namespace {

struct PartitionSearch {
    const Graph& g;
    bool allow_stars;
    bool allow_triangles;
    const std::function<bool(const EdgePartition&)>& visit;

    std::vector<std::vector<std::pair<int, int>>> incident;  // vertex -> (edge, other)
    std::vector<char> covered;
    std::vector<int> rem_deg;
    int uncovered = 0;
    std::vector<PartitionBlock> blocks;
    bool stopped = false;

    PartitionSearch(const Graph& graph, bool stars, bool triangles,
                    const std::function<bool(const EdgePartition&)>& v)
        : g(graph), allow_stars(stars), allow_triangles(triangles), visit(v) {
        incident.resize(g.vertex_count);
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto& [a, b] = g.edges[e];
            incident[a].emplace_back(e, b);
            incident[b].emplace_back(e, a);
        }
        covered.assign(g.edge_count(), 0);
        rem_deg.assign(g.vertex_count, 0);
        for (int v2 = 0; v2 < g.vertex_count; ++v2) {
            rem_deg[v2] = static_cast<int>(incident[v2].size());
        }
        uncovered = g.edge_count();
    }

    void place(const PartitionBlock& block) {
        blocks.push_back(block);
        for (int e : block.edge_ids) {
            covered[e] = 1;
            rem_deg[g.edges[e].first]--;
            rem_deg[g.edges[e].second]--;
        }
        uncovered -= 3;
    }

    void unplace() {
        const PartitionBlock block = blocks.back();
        blocks.pop_back();
        for (int e : block.edge_ids) {
            covered[e] = 0;
            rem_deg[g.edges[e].first]++;
            rem_deg[g.edges[e].second]++;
        }
        uncovered += 3;
    }

    // Stars centered at `center` that cover `edge`: pick two more uncovered
    // edges at the center, in ascending edge order.
    void try_stars_at(int center, int edge) {
        if (!allow_stars || rem_deg[center] < 3) return;
        std::vector<int> pool;
        for (const auto& [e, other] : incident[center]) {
            if (!covered[e] && e != edge) pool.push_back(e);
        }
        std::sort(pool.begin(), pool.end());
        for (size_t i = 0; i < pool.size() && !stopped; ++i) {
            for (size_t j = i + 1; j < pool.size() && !stopped; ++j) {
                PartitionBlock block;
                block.kind = BlockKind::Star;
                block.center = center;
                block.edge_ids = {edge, pool[i], pool[j]};
                std::sort(block.edge_ids.begin(), block.edge_ids.end());
                place(block);
                dfs();
                unplace();
            }
        }
    }

    void try_triangles_at(int edge) {
        if (!allow_triangles) return;
        const auto& [a, b] = g.edges[edge];
        // Third vertices adjacent to both endpoints through uncovered edges.
        for (const auto& [ea, w] : incident[a]) {
            if (covered[ea] || ea == edge) continue;
            for (const auto& [eb, w2] : incident[b]) {
                if (covered[eb] || w2 != w) continue;
                PartitionBlock block;
                block.kind = BlockKind::Triangle;
                block.center = -1;
                block.edge_ids = {edge, ea, eb};
                std::sort(block.edge_ids.begin(), block.edge_ids.end());
                place(block);
                dfs();
                unplace();
                if (stopped) return;
            }
        }
    }

    void dfs() {
        if (stopped) return;
        if (uncovered == 0) {
            EdgePartition result;
            result.blocks = blocks;
            if (!visit(result)) stopped = true;
            return;
        }
        // Forced move: a vertex left with one uncovered edge can only be a
        // star leaf, so the other endpoint must center that edge's star.
        for (int v = 0; v < g.vertex_count; ++v) {
            if (rem_deg[v] != 1) continue;
            int edge = -1;
            for (const auto& [e, other] : incident[v]) {
                if (!covered[e]) {
                    edge = e;
                    break;
                }
            }
            const auto& [a, b] = g.edges[edge];
            const int center = a == v ? b : a;
            if (!allow_stars || rem_deg[center] < 3) return;  // dead branch
            try_stars_at(center, edge);
            return;
        }
        int edge = 0;
        while (covered[edge]) ++edge;
        const auto& [a, b] = g.edges[edge];
        try_stars_at(a, edge);
        if (stopped) return;
        try_stars_at(b, edge);
        if (stopped) return;
        try_triangles_at(edge);
    }

    void run() {
        if (g.edge_count() % 3 != 0) return;
        dfs();
    }
};

std::optional<EdgePartition> first_partition(const Graph& g, bool stars, bool triangles) {
    g.validate();
    std::optional<EdgePartition> found;
    const std::function<bool(const EdgePartition&)> grab = [&](const EdgePartition& p) {
        found = p;
        return false;
    };
    PartitionSearch search(g, stars, triangles, grab);
    search.run();
    return found;
}

}  // namespace

std::optional<EdgePartition> edge_partition_search(const Graph& g, bool allow_triangles) {
    return first_partition(g, true, allow_triangles);
}

std::optional<EdgePartition> triangle_partition_search(const Graph& g) {
    return first_partition(g, false, true);
}

void enumerate_edge_partitions(const Graph& g, bool allow_triangles,
                               const std::function<bool(const EdgePartition&)>& visit) {
    g.validate();
    PartitionSearch search(g, true, allow_triangles, visit);
    search.run();
}

bool verify_edge_partition(const Graph& g, const EdgePartition& partition) {
    std::vector<char> covered(g.edge_count(), 0);
    for (const PartitionBlock& block : partition.blocks) {
        std::set<int> vertices;
        for (int e : block.edge_ids) {
            if (e < 0 || e >= g.edge_count() || covered[e]) return false;
            covered[e] = 1;
            vertices.insert(g.edges[e].first);
            vertices.insert(g.edges[e].second);
        }
        if (block.kind == BlockKind::Star) {
            // Three edges, one common center, three distinct leaves.
            if (vertices.size() != 4) return false;
            for (int e : block.edge_ids) {
                if (g.edges[e].first != block.center && g.edges[e].second != block.center) {
                    return false;
                }
            }
        } else {
            if (vertices.size() != 3) return false;  // K_3 on three vertices
        }
    }
    for (char c : covered) {
        if (!c) return false;
    }
    return true;
}

namespace {

int covering_block(const Graph& g, const EdgePartition& partition, const GadgetEdge& e) {
    for (size_t b = 0; b < partition.blocks.size(); ++b) {
        for (int id : partition.blocks[b].edge_ids) {
            if (g.edges[id].first == e.u && g.edges[id].second == e.v) {
                return static_cast<int>(b);
            }
        }
    }
    return -1;
}

}  // namespace

GadgetClassification classify_gadget_partition(const Graph& g, const GadgetRegistry& registry,
                                               const EdgePartition& partition, int variable) {
    const VariableGadget* vg = registry.find_variable(variable);
    if (vg == nullptr) {
        throw std::invalid_argument("variable " + std::to_string(variable) + " has no gadget");
    }
    const std::set<int> inside(vg->vertices.begin(), vg->vertices.end());

    auto centered_inside = [&](const GadgetEdge& e) -> std::optional<bool> {
        const int b = covering_block(g, partition, e);
        if (b == -1 || partition.blocks[b].kind != BlockKind::Star) {
            return std::nullopt;
        }
        return inside.count(partition.blocks[b].center) > 0;
    };

    int top_inside = 0, top_outside = 0, bottom_inside = 0, bottom_outside = 0;
    for (const GadgetEdge& e : vg->top_shared) {
        const auto in = centered_inside(e);
        if (!in) return GadgetClassification::Invalid;
        (*in ? top_inside : top_outside)++;
    }
    for (const GadgetEdge& e : vg->bottom_shared) {
        const auto in = centered_inside(e);
        if (!in) return GadgetClassification::Invalid;
        (*in ? bottom_inside : bottom_outside)++;
    }
    if (top_outside == 0 && bottom_inside == 0) {
        return GadgetClassification::TruePartitioned;
    }
    if (top_inside == 0 && bottom_outside == 0) {
        return GadgetClassification::FalsePartitioned;
    }
    return GadgetClassification::Invalid;
}

std::optional<std::vector<bool>> partition_assignment(const Graph& g,
                                                      const GadgetRegistry& registry,
                                                      const EdgePartition& partition,
                                                      int variable_count) {
    std::vector<bool> assignment(variable_count, false);
    for (const VariableGadget& vg : registry.variables) {
        const GadgetClassification c =
            classify_gadget_partition(g, registry, partition, vg.variable);
        if (c == GadgetClassification::Invalid) {
            return std::nullopt;
        }
        assignment[vg.variable] = (c == GadgetClassification::TruePartitioned);
    }
    return assignment;
}

}  // namespace anonkit
