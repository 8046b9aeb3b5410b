#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "anonkit/core.hpp"
#include "anonkit/hierarchy.hpp"
#include "anonkit/oracles.hpp"
#include "anonkit/reductions.hpp"

namespace anonkit {

/// Parse failure with a 1-based line number baked into the message.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Databases: an "alphabet:" header followed by one whitespace-separated row
// per line; "*" marks a suppressed cell and is only legal when allow_stars.
Database parse_database(const std::string& text, bool allow_stars = false);
std::string serialize_database(const Database& db);

// Graphs: DIMACS-style "p edge <n> <m>" with "e <u> <v>" lines (1-based).
// Optional "v <u> <part>" lines carry a tripartition.
struct ParsedGraph {
    Graph graph;
    std::optional<std::vector<int>> parts;
};
ParsedGraph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);
std::string serialize_tripartite(const TripartiteGraph& g);
TripartiteGraph require_tripartite(const ParsedGraph& parsed);

// CNF: "p cnf <vars> <clauses>" with zero-terminated clause lines of exactly
// three literals.
CnfFormula parse_cnf(const std::string& text);
std::string serialize_cnf(const CnfFormula& phi);

// 3DM-3: "p 3dm <|W|> <|X|> <|Y|>" with "t <w> <x> <y>" lines (1-based).
ThreeDMInstance parse_3dm(const std::string& text);
std::string serialize_3dm(const ThreeDMInstance& inst);

// Hierarchies: one node per line as "<symbol> <cost>", nesting by two-space
// indentation, root first.
GeneralizationHierarchy parse_hierarchy(const std::string& text);
std::string serialize_hierarchy(const GeneralizationHierarchy& h);

// Gadget registries and edge partitions, as emitted by `reduce` / `oracle`.
GadgetRegistry parse_registry(const std::string& text);
std::string serialize_registry(const GadgetRegistry& registry);

EdgePartition parse_partition(const std::string& text, const Graph& g);
std::string serialize_partition(const Graph& g, const EdgePartition& partition);

std::string read_stream(std::istream& in);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace anonkit
