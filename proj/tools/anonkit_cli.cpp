#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "anonkit/acceptance.hpp"
#include "anonkit/core.hpp"
#include "anonkit/diversity.hpp"
#include "anonkit/hierarchy.hpp"
#include "anonkit/io.hpp"
#include "anonkit/oracles.hpp"
#include "anonkit/reductions.hpp"
#include "anonkit/solvers.hpp"

namespace {

using namespace anonkit;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

std::string slurp_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return read_stream(std::cin);
    }
    return read_file(path);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        write_file(path, content);
    }
}

void print_solution(const Database& db, const AnonymizationSolution& solution) {
    std::cout << "status: optimal\n";
    std::cout << "cost: " << solution.total_cost << "\n";
    std::cout << "groups: " << solution.groups.size() << "\n";
    for (size_t g = 0; g < solution.groups.size(); ++g) {
        std::cout << "group:";
        for (int idx : solution.groups[g]) {
            std::cout << ' ' << idx;
        }
        std::cout << "\n";
        std::cout << "row:";
        for (Token t : solution.anonymized_rows[g]) {
            std::cout << ' ' << db.alphabet.name(t);
        }
        std::cout << "\n";
    }
}

int run_anonymize(const std::string& input, int k, const std::string& method,
                  const std::string& hierarchy_path) {
    if (method == "simplex" && k != 2) {
        std::cerr << "error: --method simplex requires --k 2\n";
        return kExitUsage;
    }
    const Database db = parse_database(slurp_input(input));
    std::optional<GeneralizationHierarchy> hierarchy;
    if (!hierarchy_path.empty()) {
        hierarchy = parse_hierarchy(read_file(hierarchy_path));
        const auto violations = hierarchy->violations(&db.alphabet);
        if (!violations.empty()) {
            std::cerr << "error: invalid hierarchy: " << violations.front() << "\n";
            return kExitUsage;
        }
        if (method != "simplex") {
            std::cerr << "error: --hierarchy is only supported with --method simplex\n";
            return kExitUsage;
        }
    }

    AnonymizationSolution solution;
    if (method == "simplex") {
        solution = solve_2_anonymity(db, hierarchy ? &*hierarchy : nullptr);
    } else if (method == "dnc") {
        solution = solve_k_anonymity_dnc(db, k);
    } else if (method == "kernel") {
        solution = solve_k_anonymity_kernelized(db, k);
    } else {
        solution = brute_force_k_anonymity(db, k);
    }
    print_solution(db, solution);
    if (hierarchy) {
        for (const RowGroup& g : solution.groups) {
            std::cout << "generalized:";
            for (const std::string& s : generalized_group_row(db, g, *hierarchy)) {
                std::cout << ' ' << s;
            }
            std::cout << "\n";
        }
    }
    return kExitOk;
}

std::vector<int> parse_column_list(const std::string& spec) {
    std::vector<int> columns;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ',')) {
        if (!token.empty()) {
            columns.push_back(std::stoi(token));
        }
    }
    return columns;
}

int run_diversify(const std::string& input, int l, const std::string& q_spec,
                  const std::string& s_spec) {
    DiversityInstance inst;
    inst.db = parse_database(slurp_input(input));
    inst.q_columns = parse_column_list(q_spec);
    inst.s_columns = parse_column_list(s_spec);
    inst.validate();
    const auto best = solve_l_diversity_bruteforce(inst, l);
    if (!best) {
        std::cout << "status: infeasible\n";
        return kExitInfeasible;
    }
    std::cout << "status: optimal\n";
    std::cout << "cost: " << best->total_cost << "\n";
    std::cout << "groups: " << best->groups.size() << "\n";
    const Database released = diversity_release(inst, best->groups);
    for (const RowGroup& g : best->groups) {
        std::cout << "group:";
        for (int idx : g) std::cout << ' ' << idx;
        std::cout << "\n";
    }
    std::cout << serialize_database(released);
    return kExitOk;
}

int run_reduce(const std::string& from, const std::string& input, const std::string& output,
               const std::string& registry_path) {
    const std::string text = slurp_input(input);
    if (from == "1in3sat") {
        const CnfFormula phi = parse_cnf(text);
        const FormulaGraph fg = formula_to_graph(phi);
        emit(output, serialize_graph(fg.graph));
        if (!registry_path.empty()) {
            write_file(registry_path, serialize_registry(fg.registry));
        }
    } else if (from == "3dm3") {
        const ThreeDMInstance inst = parse_3dm(text);
        emit(output, serialize_database(tdm3_to_db27(inst)));
    } else if (from == "graph") {
        const ParsedGraph parsed = parse_graph(text);
        emit(output, serialize_database(graph_to_incidence_db(parsed.graph)));
    } else if (from == "tripartite-2div" || from == "tripartite-3div") {
        const TripartiteGraph tg = require_tripartite(parse_graph(text));
        const DiversityInstance inst =
            from == "tripartite-2div" ? tripartite_to_2div(tg) : tripartite_to_3div(tg);
        std::ostringstream out;
        out << "# q-cols:";
        for (int c : inst.q_columns) out << ' ' << c;
        out << "\n# s-cols:";
        for (int c : inst.s_columns) out << ' ' << c;
        out << "\n" << serialize_database(inst.db);
        emit(output, out.str());
    } else {
        std::cerr << "error: unknown reduction '" << from << "'\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_oracle(const std::string& problem, const std::string& input, bool allow_triangles) {
    const std::string text = slurp_input(input);
    if (problem == "1in3sat") {
        const CnfFormula phi = parse_cnf(text);
        const auto assignments = enumerate_1in3_sat(phi);
        std::cout << "assignments: " << assignments.size() << "\n";
        for (const auto& a : assignments) {
            std::cout << "assignment:";
            for (int v = 0; v < phi.variable_count; ++v) {
                std::cout << ' ' << (a[v] ? 1 : 0);
            }
            std::cout << "\n";
        }
        return assignments.empty() ? kExitInfeasible : kExitOk;
    }
    if (problem == "3dm") {
        const ThreeDMInstance inst = parse_3dm(text);
        const std::vector<int> best = max_3dm_bruteforce(inst);
        std::cout << "matching-size: " << best.size() << "\n";
        for (int idx : best) {
            const auto& t = inst.triples[idx];
            std::cout << "triple: " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << "\n";
        }
        return kExitOk;
    }
    if (problem == "edge-partition") {
        const ParsedGraph parsed = parse_graph(text);
        const auto partition = edge_partition_search(parsed.graph, allow_triangles);
        if (!partition) {
            std::cout << "partition: none\n";
            return kExitInfeasible;
        }
        std::cout << "partition: found\n";
        std::cout << serialize_partition(parsed.graph, *partition);
        return kExitOk;
    }
    std::cerr << "error: unknown oracle problem '" << problem << "'\n";
    return kExitUsage;
}

int run_verify(const std::string& graph_path, const std::string& partition_path,
               const std::string& registry_path) {
    const ParsedGraph parsed = parse_graph(read_file(graph_path));
    const EdgePartition partition = parse_partition(read_file(partition_path), parsed.graph);
    const bool valid = verify_edge_partition(parsed.graph, partition);
    std::cout << "partition-valid: " << (valid ? "yes" : "no") << "\n";
    if (!valid) {
        return kExitInfeasible;
    }
    if (!registry_path.empty()) {
        const GadgetRegistry registry = parse_registry(read_file(registry_path));
        bool any_invalid = false;
        for (const VariableGadget& vg : registry.variables) {
            const GadgetClassification c =
                classify_gadget_partition(parsed.graph, registry, partition, vg.variable);
            std::cout << "variable " << vg.variable + 1 << ": "
                      << (c == GadgetClassification::TruePartitioned    ? "true-partitioned"
                          : c == GadgetClassification::FalsePartitioned ? "false-partitioned"
                                                                        : "invalid")
                      << "\n";
            if (c == GadgetClassification::Invalid) any_invalid = true;
        }
        if (any_invalid) {
            return kExitInfeasible;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solvers and reduction verifiers for k-anonymity and l-diversity"};
    app.require_subcommand(1);

    std::string input, output, hierarchy_path, registry_path, method = "dnc";
    std::string from, problem, graph_path, partition_path, q_spec, s_spec;
    int k = 2, l = 2;
    bool allow_triangles = false;

    CLI::App* anonymize = app.add_subcommand("anonymize", "optimally k-anonymize a database");
    anonymize->add_option("input", input, "database file (default stdin)");
    anonymize->add_option("--k", k, "anonymity parameter")->required();
    anonymize->add_option("--method", method, "simplex|dnc|kernel|brute")
        ->check(CLI::IsMember({"simplex", "dnc", "kernel", "brute"}));
    anonymize->add_option("--hierarchy", hierarchy_path, "generalization hierarchy file");

    CLI::App* diversify = app.add_subcommand("diversify", "optimally l-diversify a database");
    diversify->add_option("input", input, "database file (default stdin)");
    diversify->add_option("--l", l, "diversity parameter")->required();
    diversify->add_option("--q-cols", q_spec, "comma-separated quasi-identifier columns")
        ->required();
    diversify->add_option("--s-cols", s_spec, "comma-separated sensitive columns")->required();

    CLI::App* reduce = app.add_subcommand("reduce", "emit a hardness-reduction instance");
    reduce->add_option("input", input, "source instance file (default stdin)");
    reduce->add_option("--from", from, "1in3sat|3dm3|graph|tripartite-2div|tripartite-3div")
        ->required()
        ->check(CLI::IsMember({"1in3sat", "3dm3", "graph", "tripartite-2div", "tripartite-3div"}));
    reduce->add_option("--output", output, "output file (default stdout)");
    reduce->add_option("--registry", registry_path, "gadget registry sidecar (1in3sat only)");

    CLI::App* oracle = app.add_subcommand("oracle", "run an independent brute-force oracle");
    oracle->add_option("input", input, "instance file (default stdin)");
    oracle->add_option("--problem", problem, "1in3sat|3dm|edge-partition")
        ->required()
        ->check(CLI::IsMember({"1in3sat", "3dm", "edge-partition"}));
    oracle->add_flag("--allow-triangles", allow_triangles, "also allow triangle blocks");

    CLI::App* verify = app.add_subcommand("verify", "check an edge partition against a graph");
    verify->add_option("--graph", graph_path, "graph file")->required();
    verify->add_option("--partition", partition_path, "partition file")->required();
    verify->add_option("--registry", registry_path, "gadget registry for classification");

    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(anonymize)) {
            return run_anonymize(input, k, method, hierarchy_path);
        }
        if (app.got_subcommand(diversify)) {
            return run_diversify(input, l, q_spec, s_spec);
        }
        if (app.got_subcommand(reduce)) {
            return run_reduce(from, input, output, registry_path);
        }
        if (app.got_subcommand(oracle)) {
            return run_oracle(problem, input, allow_triangles);
        }
        if (app.got_subcommand(verify)) {
            return run_verify(graph_path, partition_path, registry_path);
        }
        if (app.got_subcommand(selftest)) {
            return all_passed(run_acceptance_suite(std::cout)) ? kExitOk : kExitInfeasible;
        }
    } catch (const InfeasibleError& e) {
        std::cout << "status: infeasible\n";
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
