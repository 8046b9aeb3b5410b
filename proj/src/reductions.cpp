#include "anonkit/reductions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace anonkit {

void Graph::add_edge(int u, int v) {
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::find(edges.begin(), edges.end(), std::make_pair(u, v)) != edges.end();
}

void Graph::validate() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : edges) {
        if (u < 0 || v >= vertex_count || u >= v) {
            if (u == v) {
                throw std::invalid_argument("graph has a loop at vertex " + std::to_string(u));
            }
            throw std::invalid_argument("graph edge endpoint out of range");
        }
        if (!seen.emplace(u, v).second) {
            throw std::invalid_argument("graph has a parallel edge {" + std::to_string(u) + "," +
                                        std::to_string(v) + "}");
        }
    }
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

void TripartiteGraph::validate() const {
    graph.validate();
    if (static_cast<int>(part.size()) != graph.vertex_count) {
        throw std::invalid_argument("tripartition must assign every vertex a part");
    }
    for (int p : part) {
        if (p < 0 || p > 2) {
            throw std::invalid_argument("tripartition parts must be 0, 1 or 2");
        }
    }
    for (const auto& [u, v] : graph.edges) {
        if (part[u] == part[v]) {
            throw std::invalid_argument("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                        "} stays inside part " + std::to_string(part[u]));
        }
    }
}

void ThreeDMInstance::validate() const {
    std::map<std::pair<int, int>, int> occurrences;  // (part, element) -> count
    std::set<std::array<int, 3>> seen;
    const std::array<int, 3> sizes = {w_size, x_size, y_size};
    for (const auto& t : triples) {
        for (int part = 0; part < 3; ++part) {
            if (t[part] < 0 || t[part] >= sizes[part]) {
                throw std::invalid_argument("triple element out of range");
            }
            if (++occurrences[{part, t[part]}] > 3) {
                throw std::invalid_argument("element occurs in more than three triples");
            }
        }
        if (!seen.insert(t).second) {
            throw std::invalid_argument("duplicate triple");
        }
    }
}

void CnfFormula::validate() const {
    for (const auto& clause : clauses) {
        for (const Literal& lit : clause) {
            if (lit.variable < 0 || lit.variable >= variable_count) {
                throw std::invalid_argument("literal variable out of range");
            }
        }
    }
}

const VariableGadget* GadgetRegistry::find_variable(int variable) const {
    for (const VariableGadget& vg : variables) {
        if (vg.variable == variable) return &vg;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// 3DM-3 -> 27-attribute 3-anonymity
// ---------------------------------------------------------------------------

Database tdm3_to_db27(const ThreeDMInstance& inst) {
    inst.validate();
    Database db;

    std::vector<Token> triple_tokens;
    triple_tokens.reserve(inst.triples.size());
    for (size_t i = 0; i < inst.triples.size(); ++i) {
        triple_tokens.push_back(db.alphabet.intern("t" + std::to_string(i)));
    }
    static const char* kPartName[3] = {"w", "x", "y"};
    for (int part = 0; part < 3; ++part) {
        const int size = part == 0 ? inst.w_size : part == 1 ? inst.x_size : inst.y_size;
        for (int e = 0; e < size; ++e) {
            db.alphabet.intern(std::string(kPartName[part]) + std::to_string(e));
        }
    }

    int pad_counter = 0;
    auto slots_for = [&](int part, int element) {
        std::vector<Token> slots;
        for (size_t i = 0; i < inst.triples.size(); ++i) {
            if (inst.triples[i][part] == element) {
                slots.push_back(triple_tokens[i]);
            }
        }
        while (slots.size() < 3) {
            slots.push_back(db.alphabet.intern("pad" + std::to_string(pad_counter++)));
        }
        return slots;
    };

    // Column patterns: W rows vary the slot every 9 columns, X rows every 3,
    // Y rows every column, so each (a, b, c) slot combination meets in
    // exactly one of the 27 columns.
    for (int part = 0; part < 3; ++part) {
        const int size = part == 0 ? inst.w_size : part == 1 ? inst.x_size : inst.y_size;
        for (int e = 0; e < size; ++e) {
            const std::vector<Token> slots = slots_for(part, e);
            Row row(27);
            for (int col = 0; col < 27; ++col) {
                int slot = 0;
                if (part == 0) slot = col / 9;
                if (part == 1) slot = (col / 3) % 3;
                if (part == 2) slot = col % 3;
                row[col] = slots[slot];
            }
            db.rows.push_back(std::move(row));
        }
    }
    return db;
}

int db27_row_of(const ThreeDMInstance& inst, int part, int element) {
    if (part == 0) return element;
    if (part == 1) return inst.w_size + element;
    return inst.w_size + inst.x_size + element;
}

namespace {

// Partitions `rows` into blocks of size 3..5 while minimizing the number of
// blocks that accidentally coincide with a triple of M. Exhaustive; callers
// keep |rows| small.
void pack_leftovers_exhaustive(const std::vector<int>& rows,
                               const std::set<std::array<int, 3>>& triple_rows,
                               std::vector<RowGroup>& current, size_t assigned, int accidents,
                               std::vector<RowGroup>& best, int& best_accidents) {
    if (accidents >= best_accidents) return;
    if (assigned == rows.size()) {
        bool sizes_ok = true;
        for (const RowGroup& g : current) {
            if (g.size() < 3) {
                sizes_ok = false;
                break;
            }
        }
        if (sizes_ok) {
            best = current;
            best_accidents = accidents;
        }
        return;
    }
    const int row = rows[assigned];
    // Indexed access: recursion grows `current`, invalidating references.
    const size_t group_count = current.size();
    for (size_t gi = 0; gi < group_count; ++gi) {
        if (current[gi].size() == 5) continue;
        current[gi].push_back(row);
        const RowGroup& g = current[gi];
        int extra = 0;
        if (g.size() == 3 || g.size() == 4) {
            std::array<int, 3> key = {g[0], g[1], g[2]};
            std::sort(key.begin(), key.end());
            if (triple_rows.count(key)) {
                extra = g.size() == 3 ? 1 : -1;  // growing past 3 un-does an accident
            }
        }
        pack_leftovers_exhaustive(rows, triple_rows, current, assigned + 1, accidents + extra,
                                  best, best_accidents);
        current[gi].pop_back();
    }
    current.push_back({row});
    pack_leftovers_exhaustive(rows, triple_rows, current, assigned + 1, accidents, best,
                              best_accidents);
    current.pop_back();
}

// Large-instance fallback: blocks of two-from-one-part plus one, or three
// from a single part; such blocks are never triples of M.
std::vector<RowGroup> pack_leftovers_greedy(std::array<std::vector<int>, 3> by_part) {
    std::vector<RowGroup> groups;
    auto total = [&] {
        return by_part[0].size() + by_part[1].size() + by_part[2].size();
    };
    while (total() > 0) {
        std::array<int, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return by_part[a].size() > by_part[b].size();
        });
        RowGroup g;
        auto take = [&](int part, int count) {
            for (int i = 0; i < count; ++i) {
                g.push_back(by_part[part].back());
                by_part[part].pop_back();
            }
        };
        int smallest_nonzero = -1;
        for (int i = 2; i >= 0; --i) {
            if (!by_part[order[i]].empty()) {
                smallest_nonzero = order[i];
                break;
            }
        }
        if (by_part[order[0]].size() >= 2 && order[0] != smallest_nonzero &&
            !by_part[smallest_nonzero].empty()) {
            take(order[0], 2);
            take(smallest_nonzero, 1);
        } else {
            take(order[0], 3);
        }
        std::sort(g.begin(), g.end());
        groups.push_back(std::move(g));
    }
    return groups;
}

}  // namespace

Map3dmResult map_3dm_solution(const ThreeDMInstance& inst, const std::vector<int>& matching) {
    inst.validate();
    const int n = inst.element_count();
    std::set<std::pair<int, int>> used;  // (part, element)
    std::set<int> chosen;
    for (int idx : matching) {
        if (idx < 0 || idx >= static_cast<int>(inst.triples.size())) {
            throw std::invalid_argument("matching refers to a triple outside M");
        }
        if (!chosen.insert(idx).second) {
            throw std::invalid_argument("matching repeats a triple");
        }
        for (int part = 0; part < 3; ++part) {
            if (!used.emplace(part, inst.triples[idx][part]).second) {
                throw std::invalid_argument("matching triples agree in a coordinate");
            }
        }
    }

    const Database db = tdm3_to_db27(inst);
    std::set<std::array<int, 3>> triple_rows;
    for (const auto& t : inst.triples) {
        std::array<int, 3> key = {db27_row_of(inst, 0, t[0]), db27_row_of(inst, 1, t[1]),
                                  db27_row_of(inst, 2, t[2])};
        std::sort(key.begin(), key.end());
        triple_rows.insert(key);
    }

    std::vector<RowGroup> groups;
    std::vector<char> covered(n, 0);
    for (int idx : matching) {
        const auto& t = inst.triples[idx];
        RowGroup g = {db27_row_of(inst, 0, t[0]), db27_row_of(inst, 1, t[1]),
                      db27_row_of(inst, 2, t[2])};
        std::sort(g.begin(), g.end());
        for (int r : g) covered[r] = 1;
        groups.push_back(std::move(g));
    }

    std::vector<int> leftover;
    std::array<std::vector<int>, 3> leftover_by_part;
    for (int r = 0; r < n; ++r) {
        if (!covered[r]) {
            leftover.push_back(r);
            const int part = r < inst.w_size ? 0 : r < inst.w_size + inst.x_size ? 1 : 2;
            leftover_by_part[part].push_back(r);
        }
    }

    if (leftover.size() == 1 || leftover.size() == 2) {
        if (groups.empty()) {
            throw InfeasibleError("too few rows to form any group of three");
        }
        // No room for a standalone group; absorb into matched groups.
        for (size_t i = 0; i < leftover.size(); ++i) {
            groups[i].push_back(leftover[i]);
            std::sort(groups[i].begin(), groups[i].end());
        }
    } else if (!leftover.empty()) {
        std::vector<RowGroup> packed;
        if (leftover.size() <= 12) {
            std::vector<RowGroup> current;
            int best_accidents = static_cast<int>(leftover.size());
            pack_leftovers_exhaustive(leftover, triple_rows, current, 0, 0, packed,
                                      best_accidents);
            if (packed.empty()) {
                throw std::logic_error("leftover packing failed");
            }
        } else {
            packed = pack_leftovers_greedy(leftover_by_part);
        }
        groups.insert(groups.end(), packed.begin(), packed.end());
    }

    Map3dmResult result;
    result.solution = anonymize_partition(db, groups);
    result.cost = result.solution.total_cost;
    for (const RowGroup& g : result.solution.groups) {
        if (g.size() == 3 && triple_rows.count({g[0], g[1], g[2]})) {
            ++result.realized_triples;
        }
    }
    result.c_3dm = n == 0 ? 0.0 : 3.0 * static_cast<double>(matching.size()) / n;
    result.c_3anon = n == 0 ? 0.0 : 1.0 - static_cast<double>(result.cost) / (27.0 * n);
    return result;
}

// ---------------------------------------------------------------------------
// Trees and gadgets
// ---------------------------------------------------------------------------

ThreeBinaryTree build_3binary_tree(int d) {
    if (d < 1) {
        throw std::invalid_argument("a 3-binary tree needs depth at least 1");
    }
    ThreeBinaryTree tree;
    tree.depth.push_back(0);
    tree.parent.push_back(-1);
    std::vector<int> frontier = {0};
    for (int level = 1; level <= d; ++level) {
        std::vector<int> next;
        for (int v : frontier) {
            const int fanout = (level == 1) ? 3 : 2;
            for (int c = 0; c < fanout; ++c) {
                const int id = static_cast<int>(tree.depth.size());
                tree.depth.push_back(level);
                tree.parent.push_back(v);
                tree.graph.add_edge(v, id);
                next.push_back(id);
            }
        }
        frontier = std::move(next);
    }
    tree.graph.vertex_count = static_cast<int>(tree.depth.size());
    tree.leaves = frontier;
    return tree;
}

namespace {

// One tree of a G_d instance, with its leaf-edge "slots" that later become
// shared edges. Vertex ids are global (offset applies).
struct GadgetTree {
    std::vector<int> depth;
    std::vector<int> parent;
    std::vector<std::pair<int, int>> internal_edges;  // all non-leaf edges
    std::vector<std::pair<int, int>> slots;           // (parent, leaf), surviving leaves
    std::vector<int> deprived_parents;                // three of them
    std::vector<int> vertices;                        // every allocated vertex
};

GadgetTree build_gadget_tree(int d, int& next_id) {
    const ThreeBinaryTree local = build_3binary_tree(d);
    const int offset = next_id;
    next_id += local.graph.vertex_count;

    GadgetTree tree;
    tree.depth = local.depth;
    tree.parent = local.parent;
    for (int v = 0; v < local.graph.vertex_count; ++v) {
        tree.vertices.push_back(offset + v);
    }

    // Deprive the three lexicographically first depth-(d-1) parents of their
    // first leaf.
    std::vector<int> leaf_parents;
    for (int v = 0; v < local.graph.vertex_count; ++v) {
        if (local.depth[v] == d - 1) leaf_parents.push_back(v);
    }
    if (leaf_parents.size() < 3) {
        throw std::invalid_argument("gadget depth must be at least 2");
    }
    std::set<int> deleted;
    for (int i = 0; i < 3; ++i) {
        const int parent = leaf_parents[i];
        for (int leaf : local.leaves) {
            if (local.parent[leaf] == parent) {
                deleted.insert(leaf);
                break;
            }
        }
        tree.deprived_parents.push_back(offset + parent);
    }

    for (const auto& [u, v] : local.graph.edges) {
        const int child = local.depth[u] > local.depth[v] ? u : v;
        if (deleted.count(child)) continue;
        if (local.depth[child] == d) {
            tree.slots.emplace_back(offset + local.parent[child], offset + child);
        } else {
            tree.internal_edges.emplace_back(offset + u, offset + v);
        }
    }
    std::sort(tree.slots.begin(), tree.slots.end());
    return tree;
}

}  // namespace

GdGadget build_gadget_Gd(int d) {
    if (d < 2) {
        throw std::invalid_argument("G_d requires d >= 2: three distinct leaf parents must exist");
    }
    int next_id = 0;
    const GadgetTree top = build_gadget_tree(d, next_id);
    const GadgetTree bottom = build_gadget_tree(d, next_id);

    GdGadget gd;
    gd.depth.resize(next_id);
    gd.in_top_tree.assign(next_id, false);
    gd.is_leaf.assign(next_id, false);

    std::vector<char> alive(next_id, 0);
    auto absorb = [&](const GadgetTree& tree, bool is_top, std::vector<GadgetEdge>& shared) {
        for (const auto& [u, v] : tree.internal_edges) {
            gd.graph.edges.emplace_back(std::min(u, v), std::max(u, v));
            alive[u] = alive[v] = 1;
        }
        for (const auto& [parent, leaf] : tree.slots) {
            gd.graph.edges.emplace_back(std::min(parent, leaf), std::max(parent, leaf));
            shared.push_back({std::min(parent, leaf), std::max(parent, leaf)});
            alive[parent] = alive[leaf] = 1;
            gd.is_leaf[leaf] = true;
        }
        for (int v : tree.vertices) {
            const int local = is_top ? v : v - static_cast<int>(top.vertices.size());
            gd.depth[v] = tree.depth[local];
            gd.in_top_tree[v] = is_top;
        }
    };
    absorb(top, true, gd.shared_top);
    absorb(bottom, false, gd.shared_bottom);
    for (int i = 0; i < 3; ++i) {
        const int u = top.deprived_parents[i];
        const int v = bottom.deprived_parents[i];
        gd.graph.edges.emplace_back(std::min(u, v), std::max(u, v));
        gd.cross_edges.push_back({std::min(u, v), std::max(u, v)});
        alive[u] = alive[v] = 1;
    }

    // Deleted leaves leave id gaps; remap to a dense vertex range.
    std::vector<int> remap(next_id, -1);
    int dense = 0;
    for (int v = 0; v < next_id; ++v) {
        if (alive[v]) remap[v] = dense++;
    }
    gd.graph.vertex_count = dense;
    for (auto& [u, v] : gd.graph.edges) {
        u = remap[u];
        v = remap[v];
        if (u > v) std::swap(u, v);
    }
    auto remap_edges = [&](std::vector<GadgetEdge>& list) {
        for (GadgetEdge& e : list) {
            e.u = remap[e.u];
            e.v = remap[e.v];
            if (e.u > e.v) std::swap(e.u, e.v);
        }
    };
    remap_edges(gd.shared_top);
    remap_edges(gd.shared_bottom);
    remap_edges(gd.cross_edges);
    std::vector<int> new_depth(dense), new_top(dense), new_leaf(dense);
    for (int v = 0; v < next_id; ++v) {
        if (remap[v] != -1) {
            new_depth[remap[v]] = gd.depth[v];
            new_top[remap[v]] = gd.in_top_tree[v];
            new_leaf[remap[v]] = gd.is_leaf[v];
        }
    }
    gd.depth = std::move(new_depth);
    gd.in_top_tree.assign(new_top.begin(), new_top.end());
    gd.is_leaf.assign(new_leaf.begin(), new_leaf.end());
    gd.graph.validate();
    return gd;
}

// ---------------------------------------------------------------------------
// 1-in-3 SAT -> edge partition into 4-stars
// ---------------------------------------------------------------------------

namespace {

// Mutable per-tree merge state inside formula_to_graph.
struct TreeSlots {
    std::vector<int> parents;                 // depth-(d-1) parents, ascending
    std::map<int, std::vector<int>> open;     // parent -> unused leaf ids, ascending
    std::map<int, int> cross_partner;         // deprived parent -> partner in other tree
};

}  // namespace

FormulaGraph formula_to_graph(const CnfFormula& phi) {
    phi.validate();

    struct VarState {
        int variable = 0;
        int depth = 0;
        std::vector<int> vertices;
        TreeSlots top;
        TreeSlots bottom;
        std::vector<GadgetEdge> cross;
    };

    int next_id = 0;
    std::vector<std::pair<int, int>> edges;  // grows as we build

    // Variable gadgets for occurring variables.
    std::vector<int> positive(phi.variable_count, 0);
    std::vector<int> negative(phi.variable_count, 0);
    for (const auto& clause : phi.clauses) {
        for (const Literal& lit : clause) {
            (lit.negated ? negative : positive)[lit.variable]++;
        }
    }

    std::map<int, VarState> vars;
    for (int v = 0; v < phi.variable_count; ++v) {
        const int k = std::max(positive[v], negative[v]);
        if (k == 0) continue;
        int d = 2;
        while ((1 << (d - 1)) < k + 1) ++d;

        VarState state;
        state.variable = v;
        state.depth = d;
        const GadgetTree top = build_gadget_tree(d, next_id);
        const GadgetTree bottom = build_gadget_tree(d, next_id);

        auto load = [&](const GadgetTree& tree, TreeSlots& slots) {
            for (const auto& [parent, leaf] : tree.slots) {
                slots.open[parent].push_back(leaf);
                if (slots.parents.empty() || slots.parents.back() != parent) {
                    slots.parents.push_back(parent);
                }
            }
            for (const auto& [u, w] : tree.internal_edges) {
                edges.emplace_back(std::min(u, w), std::max(u, w));
            }
        };
        load(top, state.top);
        load(bottom, state.bottom);
        for (int i = 0; i < 3; ++i) {
            const int a = top.deprived_parents[i];
            const int b = bottom.deprived_parents[i];
            edges.emplace_back(std::min(a, b), std::max(a, b));
            state.cross.push_back({std::min(a, b), std::max(a, b)});
            state.top.cross_partner[a] = b;
            state.bottom.cross_partner[b] = a;
        }
        // Every internal vertex survives; every leaf is consumed by a merge
        // or a hub, so only internal vertices belong to the gadget.
        for (int u : top.vertices) {
            if (top.depth[u - top.vertices.front()] < d) state.vertices.push_back(u);
        }
        for (int u : bottom.vertices) {
            if (bottom.depth[u - bottom.vertices.front()] < d) state.vertices.push_back(u);
        }
        vars.emplace(v, std::move(state));
    }

    // Clause stars: center plus a private degree-1 leaf each.
    GadgetRegistry registry;
    struct StarState {
        int center;
        std::set<int> adjacent;  // merged neighbors, to keep the graph simple
    };
    std::vector<std::vector<StarState>> stars(phi.clauses.size());
    for (size_t c = 0; c < phi.clauses.size(); ++c) {
        for (int s = 0; s < 3; ++s) {
            const int center = next_id++;
            const int leaf = next_id++;
            edges.emplace_back(std::min(center, leaf), std::max(center, leaf));
            stars[c].push_back({center, {}});
            ClauseStar record;
            record.clause = static_cast<int>(c);
            record.slot = s;
            record.center = center;
            record.private_edge = {std::min(center, leaf), std::max(center, leaf)};
            registry.stars.push_back(std::move(record));
        }
    }

    std::map<int, std::vector<GadgetEdge>> top_shared_of, bottom_shared_of;

    // Merge one shared edge from each of the clause's three stars per
    // literal: the tree leaf disappears and the surviving edge joins the star
    // center to the leaf's parent. The three parents are chosen jointly by a
    // tiny backtracking pass: a star may not reuse a parent (parallel edge)
    // or take both endpoints of a cross edge (triangle), and when a clause
    // repeats a variable the greedy choice can paint itself into a corner.
    for (size_t c = 0; c < phi.clauses.size(); ++c) {
        for (int j = 0; j < 3; ++j) {
            const Literal lit = phi.clauses[c][j];
            VarState& var = vars.at(lit.variable);
            TreeSlots& slots = lit.negated ? var.bottom : var.top;

            std::array<int, 3> chosen = {-1, -1, -1};
            std::map<int, int> tentative;  // parent -> slots claimed below
            std::function<bool(int)> assign = [&](int s) -> bool {
                if (s == 3) return true;
                const StarState& star = stars[c][s];
                // Parents with a spare shared edge first, then by index.
                std::vector<int> order;
                for (int pass = 0; pass < 2; ++pass) {
                    for (int parent : slots.parents) {
                        const int remaining = static_cast<int>(slots.open[parent].size()) -
                                              tentative[parent];
                        if (remaining < 1 || (pass == 0) != (remaining >= 2)) continue;
                        if (star.adjacent.count(parent)) continue;
                        auto partner = slots.cross_partner.find(parent);
                        if (partner != slots.cross_partner.end() &&
                            star.adjacent.count(partner->second)) {
                            continue;  // would close a triangle over a cross edge
                        }
                        order.push_back(parent);
                    }
                }
                for (int parent : order) {
                    ++tentative[parent];
                    chosen[s] = parent;
                    if (assign(s + 1)) return true;
                    --tentative[parent];
                }
                chosen[s] = -1;
                return false;
            };
            if (!assign(0)) {
                throw std::logic_error("variable gadget ran out of shared edges");
            }
            for (int s = 0; s < 3; ++s) {
                const int parent = chosen[s];
                StarState& star = stars[c][s];
                slots.open[parent].erase(slots.open[parent].begin());
                star.adjacent.insert(parent);
                const GadgetEdge merged = {std::min(parent, star.center),
                                           std::max(parent, star.center)};
                edges.emplace_back(merged.u, merged.v);
                registry.stars[c * 3 + s].shared_edges.push_back(merged);
                (lit.negated ? bottom_shared_of : top_shared_of)[lit.variable].push_back(merged);
            }
        }
    }

    // Leftover shared edges, three at a time from distinct parents, absorb
    // their leaves into a fresh hub vertex.
    for (auto& [v, var] : vars) {
        for (int side = 0; side < 2; ++side) {
            TreeSlots& slots = side == 0 ? var.top : var.bottom;
            auto remaining = [&] {
                int r = 0;
                for (const auto& [p, leaves] : slots.open) r += static_cast<int>(leaves.size());
                return r;
            };
            while (remaining() > 0) {
                std::vector<int> order;
                for (int parent : slots.parents) {
                    if (!slots.open[parent].empty()) order.push_back(parent);
                }
                std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                    return slots.open[a].size() > slots.open[b].size();
                });
                if (order.size() < 3) {
                    throw std::logic_error("hub grouping needs three distinct parents");
                }
                const int hub = next_id++;
                HubRecord record;
                record.hub = hub;
                record.variable = v;
                record.top = side == 0;
                for (int i = 0; i < 3; ++i) {
                    const int parent = order[i];
                    slots.open[parent].erase(slots.open[parent].begin());
                    const GadgetEdge e = {std::min(parent, hub), std::max(parent, hub)};
                    edges.emplace_back(e.u, e.v);
                    record.edges.push_back(e);
                    (side == 0 ? top_shared_of : bottom_shared_of)[v].push_back(e);
                }
                registry.hubs.push_back(std::move(record));
            }
        }
    }

    // Compact vertex ids. Consumed and deleted leaves touch no final edge,
    // so keeping exactly the edge endpoints drops them.
    std::vector<char> alive(next_id, 0);
    for (const auto& [u, w] : edges) {
        alive[u] = alive[w] = 1;
    }
    std::vector<int> remap(next_id, -1);
    int dense = 0;
    for (int u = 0; u < next_id; ++u) {
        if (alive[u]) remap[u] = dense++;
    }
    auto fix = [&](GadgetEdge& e) {
        e.u = remap[e.u];
        e.v = remap[e.v];
        if (e.u > e.v) std::swap(e.u, e.v);
    };

    FormulaGraph out;
    out.graph.vertex_count = dense;
    for (auto& [u, w] : edges) {
        out.graph.add_edge(remap[u], remap[w]);
    }
    out.registry = std::move(registry);
    for (auto& star : out.registry.stars) {
        star.center = remap[star.center];
        fix(star.private_edge);
        for (GadgetEdge& e : star.shared_edges) fix(e);
    }
    for (auto& hub : out.registry.hubs) {
        hub.hub = remap[hub.hub];
        for (GadgetEdge& e : hub.edges) fix(e);
    }
    for (auto& [v, var] : vars) {
        VariableGadget vg;
        vg.variable = v;
        vg.depth = var.depth;
        for (int u : var.vertices) vg.vertices.push_back(remap[u]);
        vg.top_shared = top_shared_of[v];
        vg.bottom_shared = bottom_shared_of[v];
        vg.cross_edges = var.cross;
        for (GadgetEdge& e : vg.top_shared) fix(e);
        for (GadgetEdge& e : vg.bottom_shared) fix(e);
        for (GadgetEdge& e : vg.cross_edges) fix(e);
        out.registry.variables.push_back(std::move(vg));
    }
    out.graph.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Incidence databases and diversity labelings
// ---------------------------------------------------------------------------

Database graph_to_incidence_db(const Graph& g) {
    g.validate();
    Database db;
    const Token zero = db.alphabet.intern("0");
    const Token one = db.alphabet.intern("1");
    for (const auto& [u, v] : g.edges) {
        Row row(g.vertex_count, zero);
        row[u] = one;
        row[v] = one;
        db.rows.push_back(std::move(row));
    }
    return db;
}

DiversityInstance tripartite_to_2div(const TripartiteGraph& g) {
    g.validate();
    DiversityInstance inst;
    inst.db = graph_to_incidence_db(g.graph);
    const Token zero = *inst.db.alphabet.find("0");
    const Token one = *inst.db.alphabet.find("1");
    for (int c = 0; c < g.graph.vertex_count; ++c) {
        inst.q_columns.push_back(c);
    }
    for (int j = 0; j < 3; ++j) {
        inst.s_columns.push_back(g.graph.vertex_count + j);
    }
    for (int i = 0; i < g.graph.edge_count(); ++i) {
        const auto& [u, v] = g.graph.edges[i];
        for (int j = 0; j < 3; ++j) {
            inst.db.rows[i].push_back(g.part[u] == j || g.part[v] == j ? one : zero);
        }
    }
    inst.validate();
    return inst;
}

DiversityInstance tripartite_to_3div(const TripartiteGraph& g) {
    g.validate();
    DiversityInstance inst;
    inst.db = graph_to_incidence_db(g.graph);
    std::array<Token, 4> label = {0, 0, 0, 0};
    label[1] = inst.db.alphabet.intern("1");
    label[2] = inst.db.alphabet.intern("2");
    label[3] = inst.db.alphabet.intern("3");
    for (int c = 0; c < g.graph.vertex_count; ++c) {
        inst.q_columns.push_back(c);
    }
    inst.s_columns.push_back(g.graph.vertex_count);
    for (int i = 0; i < g.graph.edge_count(); ++i) {
        const auto& [u, v] = g.graph.edges[i];
        const int lo = std::min(g.part[u], g.part[v]);
        const int hi = std::max(g.part[u], g.part[v]);
        int value = 0;
        if (lo == 0 && hi == 1) value = 1;
        if (lo == 0 && hi == 2) value = 2;
        if (lo == 1 && hi == 2) value = 3;
        inst.db.rows[i].push_back(label[value]);
    }
    inst.validate();
    return inst;
}

}  // namespace anonkit
