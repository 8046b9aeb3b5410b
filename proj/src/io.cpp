#include "anonkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace anonkit {

namespace {

struct Line {
    int number;
    std::string text;
};

// Strips comments ('#' and DIMACS 'c' lines) and blank lines.
std::vector<Line> content_lines(const std::string& text, bool dimacs_comments) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (const size_t hash = raw.find('#'); hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        size_t end = raw.find_last_not_of(" \t\r");
        if (end == std::string::npos) continue;
        raw = raw.substr(0, end + 1);
        if (dimacs_comments) {
            const size_t first = raw.find_first_not_of(" \t");
            if (raw[first] == 'c' && (first + 1 == raw.size() || std::isspace(raw[first + 1]))) {
                continue;
            }
        }
        lines.push_back({number, raw});
    }
    return lines;
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

int parse_int(const std::string& word, int line) {
    try {
        size_t used = 0;
        const int value = std::stoi(word, &used);
        if (used != word.size()) throw std::invalid_argument(word);
        return value;
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + word + "'");
    }
}

}  // namespace

Database parse_database(const std::string& text, bool allow_stars) {
    const std::vector<Line> lines = content_lines(text, false);
    if (lines.empty()) {
        throw ParseError(1, "empty database file");
    }
    std::vector<std::string> header = split_words(lines[0].text);
    if (header.empty() || header[0] != "alphabet:") {
        throw ParseError(lines[0].number, "expected an 'alphabet:' header line");
    }
    Database db;
    for (size_t i = 1; i < header.size(); ++i) {
        if (header[i] == "*") {
            throw ParseError(lines[0].number, "the star symbol cannot be declared");
        }
        if (db.alphabet.find(header[i])) {
            throw ParseError(lines[0].number, "duplicate alphabet symbol '" + header[i] + "'");
        }
        db.alphabet.intern(header[i]);
    }

    int width = -1;
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> cells = split_words(lines[i].text);
        if (width == -1) {
            width = static_cast<int>(cells.size());
        } else if (static_cast<int>(cells.size()) != width) {
            throw ParseError(lines[i].number,
                             "ragged row: expected " + std::to_string(width) + " cells, got " +
                                 std::to_string(cells.size()));
        }
        Row row;
        for (const std::string& cell : cells) {
            if (cell == "*") {
                if (!allow_stars) {
                    throw ParseError(lines[i].number, "star cell in an input database");
                }
                row.push_back(kStar);
            } else if (auto t = db.alphabet.find(cell)) {
                row.push_back(*t);
            } else {
                throw ParseError(lines[i].number, "unknown token '" + cell + "'");
            }
        }
        db.rows.push_back(std::move(row));
    }
    return db;
}

std::string serialize_database(const Database& db) {
    std::ostringstream out;
    out << "alphabet:";
    for (int t = 0; t < db.alphabet.size(); ++t) {
        out << ' ' << db.alphabet.name(t);
    }
    out << '\n';
    for (const Row& row : db.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c != 0) out << ' ';
            out << db.alphabet.name(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

ParsedGraph parse_graph(const std::string& text) {
    const std::vector<Line> lines = content_lines(text, true);
    if (lines.empty()) {
        throw ParseError(1, "empty graph file");
    }
    ParsedGraph parsed;
    bool have_header = false;
    int declared_edges = 0;
    std::vector<int> parts;
    for (const Line& line : lines) {
        const std::vector<std::string> w = split_words(line.text);
        if (w[0] == "p") {
            if (have_header || w.size() != 4 || w[1] != "edge") {
                throw ParseError(line.number, "expected a single 'p edge <n> <m>' header");
            }
            parsed.graph.vertex_count = parse_int(w[2], line.number);
            declared_edges = parse_int(w[3], line.number);
            parts.assign(parsed.graph.vertex_count, -1);
            have_header = true;
        } else if (w[0] == "e") {
            if (!have_header || w.size() != 3) {
                throw ParseError(line.number, "edge line must be 'e <u> <v>' after the header");
            }
            const int u = parse_int(w[1], line.number) - 1;
            const int v = parse_int(w[2], line.number) - 1;
            if (u < 0 || v < 0 || u >= parsed.graph.vertex_count ||
                v >= parsed.graph.vertex_count) {
                throw ParseError(line.number, "edge endpoint out of range");
            }
            if (u == v) {
                throw ParseError(line.number, "loops are not allowed");
            }
            if (parsed.graph.has_edge(u, v)) {
                throw ParseError(line.number, "duplicate edge");
            }
            parsed.graph.add_edge(u, v);
        } else if (w[0] == "v") {
            if (!have_header || w.size() != 3) {
                throw ParseError(line.number, "part line must be 'v <vertex> <part>'");
            }
            const int u = parse_int(w[1], line.number) - 1;
            const int p = parse_int(w[2], line.number);
            if (u < 0 || u >= parsed.graph.vertex_count) {
                throw ParseError(line.number, "vertex out of range");
            }
            if (p < 0 || p > 2) {
                throw ParseError(line.number, "parts must be 0, 1 or 2");
            }
            parts[u] = p;
        } else {
            throw ParseError(line.number, "unrecognized line '" + w[0] + "'");
        }
    }
    if (!have_header) {
        throw ParseError(lines[0].number, "missing 'p edge' header");
    }
    if (parsed.graph.edge_count() != declared_edges) {
        throw ParseError(lines.back().number,
                         "header declared " + std::to_string(declared_edges) + " edges, found " +
                             std::to_string(parsed.graph.edge_count()));
    }
    if (std::any_of(parts.begin(), parts.end(), [](int p) { return p != -1; })) {
        for (size_t u = 0; u < parts.size(); ++u) {
            if (parts[u] == -1) {
                throw ParseError(lines.back().number,
                                 "vertex " + std::to_string(u + 1) + " has no part");
            }
        }
        parsed.parts = std::move(parts);
    }
    return parsed;
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.vertex_count << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges) {
        out << "e " << u + 1 << ' ' << v + 1 << '\n';
    }
    return out.str();
}

std::string serialize_tripartite(const TripartiteGraph& g) {
    std::ostringstream out;
    out << serialize_graph(g.graph);
    for (int u = 0; u < g.graph.vertex_count; ++u) {
        out << "v " << u + 1 << ' ' << g.part[u] << '\n';
    }
    return out.str();
}

TripartiteGraph require_tripartite(const ParsedGraph& parsed) {
    if (!parsed.parts) {
        throw std::invalid_argument("graph file carries no tripartition ('v <vertex> <part>')");
    }
    TripartiteGraph tg{parsed.graph, *parsed.parts};
    tg.validate();
    return tg;
}

CnfFormula parse_cnf(const std::string& text) {
    const std::vector<Line> lines = content_lines(text, true);
    if (lines.empty()) {
        throw ParseError(1, "empty formula file");
    }
    CnfFormula phi;
    bool have_header = false;
    int declared_clauses = 0;
    for (const Line& line : lines) {
        const std::vector<std::string> w = split_words(line.text);
        if (w[0] == "p") {
            if (have_header || w.size() != 4 || w[1] != "cnf") {
                throw ParseError(line.number, "expected a single 'p cnf <vars> <clauses>' header");
            }
            phi.variable_count = parse_int(w[2], line.number);
            declared_clauses = parse_int(w[3], line.number);
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw ParseError(line.number, "clause before the 'p cnf' header");
        }
        if (w.size() != 4 || w[3] != "0") {
            throw ParseError(line.number, "clauses must hold exactly three literals and end in 0");
        }
        std::array<Literal, 3> clause;
        for (int i = 0; i < 3; ++i) {
            const int lit = parse_int(w[i], line.number);
            if (lit == 0 || std::abs(lit) > phi.variable_count) {
                throw ParseError(line.number, "literal out of range");
            }
            clause[i] = Literal{std::abs(lit) - 1, lit < 0};
        }
        phi.clauses.push_back(clause);
    }
    if (static_cast<int>(phi.clauses.size()) != declared_clauses) {
        throw ParseError(lines.back().number, "clause count differs from the header");
    }
    return phi;
}

std::string serialize_cnf(const CnfFormula& phi) {
    std::ostringstream out;
    out << "p cnf " << phi.variable_count << ' ' << phi.clauses.size() << '\n';
    for (const auto& clause : phi.clauses) {
        for (const Literal& lit : clause) {
            out << (lit.negated ? -(lit.variable + 1) : lit.variable + 1) << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

ThreeDMInstance parse_3dm(const std::string& text) {
    const std::vector<Line> lines = content_lines(text, true);
    if (lines.empty()) {
        throw ParseError(1, "empty 3dm file");
    }
    ThreeDMInstance inst;
    bool have_header = false;
    for (const Line& line : lines) {
        const std::vector<std::string> w = split_words(line.text);
        if (w[0] == "p") {
            if (have_header || w.size() != 5 || w[1] != "3dm") {
                throw ParseError(line.number, "expected a single 'p 3dm <|W|> <|X|> <|Y|>' header");
            }
            inst.w_size = parse_int(w[2], line.number);
            inst.x_size = parse_int(w[3], line.number);
            inst.y_size = parse_int(w[4], line.number);
            have_header = true;
            continue;
        }
        if (!have_header || w.size() != 4 || w[0] != "t") {
            throw ParseError(line.number, "triples must be 't <w> <x> <y>' after the header");
        }
        inst.triples.push_back({parse_int(w[1], line.number) - 1, parse_int(w[2], line.number) - 1,
                                parse_int(w[3], line.number) - 1});
    }
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines.back().number, e.what());
    }
    return inst;
}

std::string serialize_3dm(const ThreeDMInstance& inst) {
    std::ostringstream out;
    out << "p 3dm " << inst.w_size << ' ' << inst.x_size << ' ' << inst.y_size << '\n';
    for (const auto& t : inst.triples) {
        out << "t " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
    return out.str();
}

GeneralizationHierarchy parse_hierarchy(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int number = 0;

    std::vector<std::string> symbols;
    std::vector<long long> costs;
    std::vector<int> parents;
    std::vector<int> stack;  // node index per indentation level

    while (std::getline(in, raw)) {
        ++number;
        if (const size_t hash = raw.find('#'); hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        size_t indent = 0;
        while (indent < raw.size() && raw[indent] == ' ') ++indent;
        if (indent % 2 != 0) {
            throw ParseError(number, "indentation must use two spaces per level");
        }
        const int level = static_cast<int>(indent / 2);
        const std::vector<std::string> w = split_words(raw);
        if (w.size() != 2) {
            throw ParseError(number, "expected '<symbol> <cost>'");
        }
        if (level > static_cast<int>(stack.size())) {
            throw ParseError(number, "indentation skips a level");
        }
        long long cost = 0;
        try {
            cost = std::stoll(w[1]);
        } catch (const std::exception&) {
            throw ParseError(number, "expected an integer cost, got '" + w[1] + "'");
        }
        const int id = static_cast<int>(symbols.size());
        if (level == 0 && !symbols.empty()) {
            throw ParseError(number, "hierarchy must have a single root");
        }
        symbols.push_back(w[0]);
        costs.push_back(cost);
        parents.push_back(level == 0 ? -1 : stack[level - 1]);
        stack.resize(level);
        stack.push_back(id);
    }
    if (symbols.empty()) {
        throw ParseError(1, "empty hierarchy file");
    }
    try {
        return GeneralizationHierarchy(std::move(symbols), std::move(costs), std::move(parents));
    } catch (const std::invalid_argument& e) {
        throw ParseError(number, e.what());
    }
}

namespace {

void serialize_hierarchy_node(const GeneralizationHierarchy& h, int id, int level,
                              std::ostringstream& out) {
    out << std::string(static_cast<size_t>(level) * 2, ' ') << h.node(id).symbol << ' '
        << h.node(id).cost << '\n';
    for (int c : h.node(id).children) {
        serialize_hierarchy_node(h, c, level + 1, out);
    }
}

}  // namespace

std::string serialize_hierarchy(const GeneralizationHierarchy& h) {
    std::ostringstream out;
    serialize_hierarchy_node(h, h.root(), 0, out);
    return out.str();
}

std::string serialize_registry(const GadgetRegistry& registry) {
    std::ostringstream out;
    auto edges = [&](const std::vector<GadgetEdge>& list) {
        for (const GadgetEdge& e : list) {
            out << ' ' << e.u + 1 << ' ' << e.v + 1;
        }
        out << '\n';
    };
    for (const VariableGadget& vg : registry.variables) {
        out << "var " << vg.variable + 1 << " depth " << vg.depth << '\n';
        out << "vertices";
        for (int v : vg.vertices) out << ' ' << v + 1;
        out << '\n';
        out << "topshared";
        edges(vg.top_shared);
        out << "bottomshared";
        edges(vg.bottom_shared);
        out << "cross";
        edges(vg.cross_edges);
    }
    for (const ClauseStar& star : registry.stars) {
        out << "star " << star.clause + 1 << ' ' << star.slot + 1 << " center " << star.center + 1
            << " private " << star.private_edge.u + 1 << ' ' << star.private_edge.v + 1
            << " shared";
        edges(star.shared_edges);
    }
    for (const HubRecord& hub : registry.hubs) {
        out << "hub " << hub.hub + 1 << " var " << hub.variable + 1 << ' '
            << (hub.top ? "top" : "bottom") << " edges";
        edges(hub.edges);
    }
    return out.str();
}

GadgetRegistry parse_registry(const std::string& text) {
    const std::vector<Line> lines = content_lines(text, false);
    GadgetRegistry registry;

    auto read_edges = [](const std::vector<std::string>& w, size_t from, int line) {
        if ((w.size() - from) % 2 != 0) {
            throw ParseError(line, "edge list needs an even number of vertex ids");
        }
        std::vector<GadgetEdge> list;
        for (size_t i = from; i + 1 < w.size(); i += 2) {
            GadgetEdge e{parse_int(w[i], line) - 1, parse_int(w[i + 1], line) - 1};
            if (e.u > e.v) std::swap(e.u, e.v);
            list.push_back(e);
        }
        return list;
    };

    for (size_t i = 0; i < lines.size(); ++i) {
        const std::vector<std::string> w = split_words(lines[i].text);
        if (w[0] == "var") {
            if (w.size() != 4 || w[2] != "depth") {
                throw ParseError(lines[i].number, "expected 'var <v> depth <d>'");
            }
            VariableGadget vg;
            vg.variable = parse_int(w[1], lines[i].number) - 1;
            vg.depth = parse_int(w[3], lines[i].number);
            for (const char* section : {"vertices", "topshared", "bottomshared", "cross"}) {
                if (++i >= lines.size()) {
                    throw ParseError(lines.back().number,
                                     std::string("missing '") + section + "' line");
                }
                const std::vector<std::string> sw = split_words(lines[i].text);
                if (sw[0] != section) {
                    throw ParseError(lines[i].number, std::string("expected '") + section + "'");
                }
                if (sw[0] == std::string("vertices")) {
                    for (size_t j = 1; j < sw.size(); ++j) {
                        vg.vertices.push_back(parse_int(sw[j], lines[i].number) - 1);
                    }
                } else if (sw[0] == std::string("topshared")) {
                    vg.top_shared = read_edges(sw, 1, lines[i].number);
                } else if (sw[0] == std::string("bottomshared")) {
                    vg.bottom_shared = read_edges(sw, 1, lines[i].number);
                } else {
                    vg.cross_edges = read_edges(sw, 1, lines[i].number);
                }
            }
            registry.variables.push_back(std::move(vg));
        } else if (w[0] == "star") {
            if (w.size() < 10 || w[3] != "center" || w[5] != "private" || w[8] != "shared") {
                throw ParseError(lines[i].number, "malformed star line");
            }
            ClauseStar star;
            star.clause = parse_int(w[1], lines[i].number) - 1;
            star.slot = parse_int(w[2], lines[i].number) - 1;
            star.center = parse_int(w[4], lines[i].number) - 1;
            star.private_edge = {parse_int(w[6], lines[i].number) - 1,
                                 parse_int(w[7], lines[i].number) - 1};
            if (star.private_edge.u > star.private_edge.v) {
                std::swap(star.private_edge.u, star.private_edge.v);
            }
            star.shared_edges = read_edges(w, 9, lines[i].number);
            registry.stars.push_back(std::move(star));
        } else if (w[0] == "hub") {
            if (w.size() < 6 || w[2] != "var" || w[5] != "edges") {
                throw ParseError(lines[i].number, "malformed hub line");
            }
            HubRecord hub;
            hub.hub = parse_int(w[1], lines[i].number) - 1;
            hub.variable = parse_int(w[3], lines[i].number) - 1;
            hub.top = w[4] == "top";
            hub.edges = read_edges(w, 6, lines[i].number);
            registry.hubs.push_back(std::move(hub));
        } else {
            throw ParseError(lines[i].number, "unrecognized registry line '" + w[0] + "'");
        }
    }
    return registry;
}

EdgePartition parse_partition(const std::string& text, const Graph& g) {
    const std::vector<Line> lines = content_lines(text, false);
    std::map<std::pair<int, int>, int> edge_id;
    for (int e = 0; e < g.edge_count(); ++e) {
        edge_id[g.edges[e]] = e;
    }
    EdgePartition partition;
    for (const Line& line : lines) {
        const std::vector<std::string> w = split_words(line.text);
        if (w.size() != 7 || w[0] != "block") {
            throw ParseError(line.number, "expected 'block u1 v1 u2 v2 u3 v3'");
        }
        PartitionBlock block;
        std::vector<int> vertices;
        for (int i = 0; i < 3; ++i) {
            int u = parse_int(w[1 + 2 * i], line.number) - 1;
            int v = parse_int(w[2 + 2 * i], line.number) - 1;
            if (u > v) std::swap(u, v);
            const auto it = edge_id.find({u, v});
            if (it == edge_id.end()) {
                throw ParseError(line.number, "block names an edge absent from the graph");
            }
            block.edge_ids[i] = it->second;
            vertices.push_back(u);
            vertices.push_back(v);
        }
        std::sort(block.edge_ids.begin(), block.edge_ids.end());
        // Infer the kind: a common vertex across all three edges makes a
        // star; three vertices each seen twice make a triangle.
        std::map<int, int> times;
        for (int v : vertices) ++times[v];
        block.kind = BlockKind::Triangle;
        block.center = -1;
        for (const auto& [v, count] : times) {
            if (count == 3) {
                block.kind = BlockKind::Star;
                block.center = v;
            }
        }
        if (block.kind == BlockKind::Triangle && times.size() != 3) {
            throw ParseError(line.number, "block is neither a 4-star nor a triangle");
        }
        partition.blocks.push_back(block);
    }
    return partition;
}

std::string serialize_partition(const Graph& g, const EdgePartition& partition) {
    std::ostringstream out;
    for (const PartitionBlock& block : partition.blocks) {
        out << "block";
        for (int e : block.edge_ids) {
            out << ' ' << g.edges[e].first + 1 << ' ' << g.edges[e].second + 1;
        }
        out << '\n';
    }
    return out.str();
}

std::string read_stream(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_stream(in);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
}

}  // namespace anonkit
