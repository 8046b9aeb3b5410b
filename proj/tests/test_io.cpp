#include <doctest.h>

#include <random>

#include "anonkit/io.hpp"
#include "test_util.hpp"

using namespace anonkit;
using testutil::random_db;

TEST_CASE("database parsing") {
    SUBCASE("basic matrix") {
        const Database db = parse_database("alphabet: 0 1\n0 1\n1 1\n");
        CHECK(db.row_count() == 2);
        CHECK(db.column_count() == 2);
        CHECK(db.alphabet.size() == 2);
    }
    SUBCASE("stars are rejected in input context") {
        CHECK_THROWS_AS(parse_database("alphabet: 0 1\n0 *\n"), ParseError);
        CHECK_NOTHROW(parse_database("alphabet: 0 1\n0 *\n", true));
    }
    SUBCASE("ragged rows carry the line number") {
        try {
            parse_database("alphabet: a b\na b\na\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("unknown tokens and empty files are errors") {
        CHECK_THROWS_AS(parse_database("alphabet: a\nz\n"), ParseError);
        CHECK_THROWS_AS(parse_database("  \n"), ParseError);
    }
}

TEST_CASE("database round trip") {
    std::mt19937 rng(88u);
    for (int round = 0; round < 50; ++round) {
        const Database db = random_db(rng, 1 + static_cast<int>(rng() % 6),
                                      1 + static_cast<int>(rng() % 5), 2 + static_cast<int>(rng() % 4));
        const Database back = parse_database(serialize_database(db));
        CHECK(back.rows == db.rows);
        CHECK(back.alphabet == db.alphabet);
    }
}

TEST_CASE("graph parsing") {
    SUBCASE("K3 with a tripartition") {
        const ParsedGraph parsed =
            parse_graph("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\nv 1 0\nv 2 1\nv 3 2\n");
        CHECK(parsed.graph.vertex_count == 3);
        CHECK(parsed.graph.edge_count() == 3);
        REQUIRE(parsed.parts.has_value());
        CHECK_NOTHROW(require_tripartite(parsed));
    }
    SUBCASE("structural errors are reported") {
        CHECK_THROWS_AS(parse_graph("p edge 2 1\ne 1 1\n"), ParseError);   // loop
        CHECK_THROWS_AS(parse_graph("p edge 2 2\ne 1 2\ne 2 1\n"), ParseError);  // duplicate
        CHECK_THROWS_AS(parse_graph("p edge 2 2\ne 1 2\n"), ParseError);   // count mismatch
        CHECK_THROWS_AS(parse_graph("e 1 2\n"), ParseError);               // missing header
    }
    SUBCASE("round trip") {
        const std::string text = "p edge 4 3\ne 1 2\ne 1 3\ne 1 4\n";
        CHECK(serialize_graph(parse_graph(text).graph) == text);
    }
}

TEST_CASE("cnf parsing") {
    const CnfFormula phi = parse_cnf("p cnf 3 1\n1 2 3 0\n");
    CHECK(phi.variable_count == 3);
    REQUIRE(phi.clauses.size() == 1);
    CHECK_FALSE(phi.clauses[0][0].negated);
    CHECK(phi.clauses[0][0].variable == 0);

    CHECK_THROWS_AS(parse_cnf("p cnf 3 1\n1 2 0\n"), ParseError);      // two literals
    CHECK_THROWS_AS(parse_cnf("p cnf 3 1\n1 2 4 0\n"), ParseError);    // out of range
    CHECK(serialize_cnf(phi) == "p cnf 3 1\n1 2 3 0\n");
    const CnfFormula negs = parse_cnf("p cnf 3 2\n-1 2 3 0\n1 -2 3 0\n");
    CHECK(negs.clauses[0][0].negated);
}

TEST_CASE("3dm parsing") {
    const ThreeDMInstance inst = parse_3dm("p 3dm 2 2 2\nt 1 1 1\nt 2 2 2\n");
    CHECK(inst.element_count() == 6);
    CHECK(inst.triples.size() == 2);
    CHECK(serialize_3dm(inst) == "p 3dm 2 2 2\nt 1 1 1\nt 2 2 2\n");

    // an element in four triples violates the occurrence bound
    CHECK_THROWS_AS(
        parse_3dm("p 3dm 1 2 2\nt 1 1 1\nt 1 1 2\nt 1 2 1\nt 1 2 2\n"), ParseError);
}

TEST_CASE("hierarchy parsing") {
    const std::string text = "* 1\n  0 0\n  1 0\n";
    const GeneralizationHierarchy h = parse_hierarchy(text);
    CHECK(h.node_count() == 3);
    CHECK(h.node(h.root()).symbol == "*");
    CHECK(serialize_hierarchy(h) == text);

    // Cost monotonicity is a validation concern, not a parse error.
    CHECK_FALSE(validate_hierarchy(parse_hierarchy("r 0\n  a 5\n")));
    CHECK_THROWS_AS(parse_hierarchy("r 1\n    a 0\n"), ParseError);  // skipped level
    CHECK_THROWS_AS(parse_hierarchy(""), ParseError);
}

TEST_CASE("registry and partition round trips") {
    CnfFormula phi;
    phi.variable_count = 3;
    phi.clauses.push_back({Literal{0, false}, Literal{1, false}, Literal{2, false}});
    const FormulaGraph fg = formula_to_graph(phi);

    const GadgetRegistry back = parse_registry(serialize_registry(fg.registry));
    REQUIRE(back.variables.size() == fg.registry.variables.size());
    for (size_t i = 0; i < back.variables.size(); ++i) {
        CHECK(back.variables[i].variable == fg.registry.variables[i].variable);
        CHECK(back.variables[i].vertices == fg.registry.variables[i].vertices);
        CHECK(back.variables[i].top_shared == fg.registry.variables[i].top_shared);
        CHECK(back.variables[i].bottom_shared == fg.registry.variables[i].bottom_shared);
    }
    CHECK(back.stars.size() == fg.registry.stars.size());
    CHECK(back.hubs.size() == fg.registry.hubs.size());

    const auto partition = edge_partition_search(fg.graph, false);
    REQUIRE(partition.has_value());
    const EdgePartition reparsed =
        parse_partition(serialize_partition(fg.graph, *partition), fg.graph);
    CHECK(verify_edge_partition(fg.graph, reparsed));
    REQUIRE(reparsed.blocks.size() == partition->blocks.size());
    for (size_t b = 0; b < reparsed.blocks.size(); ++b) {
        CHECK(reparsed.blocks[b].edge_ids == partition->blocks[b].edge_ids);
        CHECK(reparsed.blocks[b].center == partition->blocks[b].center);
    }
}

TEST_CASE("random instances round-trip through every parser") {
    std::mt19937 rng(99u);
    for (int round = 0; round < 30; ++round) {
        // graphs (with tripartitions half the time)
        Graph g;
        g.vertex_count = 3 + static_cast<int>(rng() % 6);
        std::vector<int> parts(g.vertex_count);
        for (int& p : parts) p = static_cast<int>(rng() % 3);
        for (int u = 0; u < g.vertex_count; ++u) {
            for (int v = u + 1; v < g.vertex_count; ++v) {
                if (rng() % 3 == 0 && parts[u] != parts[v]) g.add_edge(u, v);
            }
        }
        if (rng() % 2 == 0) {
            const ParsedGraph back = parse_graph(serialize_graph(g));
            CHECK(back.graph.edges == g.edges);
            CHECK(back.graph.vertex_count == g.vertex_count);
        } else {
            TripartiteGraph tg{g, parts};
            const ParsedGraph back = parse_graph(serialize_tripartite(tg));
            REQUIRE(back.parts.has_value());
            CHECK(*back.parts == parts);
            CHECK(back.graph.edges == g.edges);
        }

        // formulas
        CnfFormula phi;
        phi.variable_count = 2 + static_cast<int>(rng() % 5);
        const int clauses = 1 + static_cast<int>(rng() % 3);
        for (int c = 0; c < clauses; ++c) {
            std::array<Literal, 3> clause;
            for (int i = 0; i < 3; ++i) {
                clause[i] = Literal{static_cast<int>(rng() % phi.variable_count), rng() % 2 == 0};
            }
            phi.clauses.push_back(clause);
        }
        const CnfFormula phi_back = parse_cnf(serialize_cnf(phi));
        REQUIRE(phi_back.clauses.size() == phi.clauses.size());
        for (size_t c = 0; c < phi.clauses.size(); ++c) {
            for (int i = 0; i < 3; ++i) {
                CHECK(phi_back.clauses[c][i].variable == phi.clauses[c][i].variable);
                CHECK(phi_back.clauses[c][i].negated == phi.clauses[c][i].negated);
            }
        }

        // 3DM instances
        ThreeDMInstance inst;
        inst.w_size = 1 + static_cast<int>(rng() % 3);
        inst.x_size = 1 + static_cast<int>(rng() % 3);
        inst.y_size = 1 + static_cast<int>(rng() % 3);
        for (int tries = 0; tries < 5; ++tries) {
            ThreeDMInstance candidate = inst;
            candidate.triples.push_back({static_cast<int>(rng() % inst.w_size),
                                         static_cast<int>(rng() % inst.x_size),
                                         static_cast<int>(rng() % inst.y_size)});
            try {
                candidate.validate();
                inst = std::move(candidate);
            } catch (const std::invalid_argument&) {
            }
        }
        const ThreeDMInstance inst_back = parse_3dm(serialize_3dm(inst));
        CHECK(inst_back.triples == inst.triples);
        CHECK(inst_back.w_size == inst.w_size);
    }
}

TEST_CASE("a generated 27-column table survives the round trip") {
    ThreeDMInstance inst;
    inst.w_size = inst.x_size = inst.y_size = 2;
    inst.triples = {{0, 0, 0}, {1, 1, 1}, {0, 1, 1}};
    const Database db = tdm3_to_db27(inst);
    const Database back = parse_database(serialize_database(db));
    CHECK(back.rows == db.rows);
    CHECK(back.alphabet == db.alphabet);
}
