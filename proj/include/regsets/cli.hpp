#pragma once

#include <iostream>

#include <CLI11.hpp>

#include "json_io.hpp"

namespace regsets::cli {

// Exit convention: 0 = affirmative outcome, 1 = negative mathematical outcome
// (not regular / infeasible / no transversal / counterexample found),
// 2 = usage or validation error, 3 = internal inconsistency.
constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_usage = 2;
constexpr int exit_internal = 3;

namespace detail {

/// Split a comma-separated group-spec list. Commas inside parentheses or
/// immediately preceding "(" (cycle-notation generators of a perm spec) do
/// not split, since no group spec starts with "(".
inline std::vector<std::string> split_spec_list(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            size_t j = i + 1;
            while (j < s.size() && s[j] == ' ') ++j;
            if (j < s.size() && s[j] == '(') {
                cur += c;  // generator separator inside a perm spec
                continue;
            }
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::string format_set(const ElementSet& s) {
    std::string out = "{";
    bool first = true;
    for (const std::string& nm : s.names()) {
        if (!first) out += ", ";
        out += nm;
        first = false;
    }
    return out + "}";
}

inline std::string format_names(const GroupTable& g, const std::vector<int>& elems) {
    std::string out = "(";
    bool first = true;
    for (int x : elems) {
        if (!first) out += ", ";
        out += g.name(x);
        first = false;
    }
    return out + ")";
}

inline void emit_report(std::ostream& out, bool json, const std::string& command,
                        const ordered_json& inputs, const ordered_json& outcome, int status,
                        const std::string& human) {
    if (json) {
        ordered_json report;
        report["command"] = command;
        report["inputs"] = inputs;
        report["outcome"] = outcome;
        report["status"] = status;
        out << report.dump(2) << '\n';
    } else {
        out << human;
    }
}

}  // namespace detail

/// Execute one CLI invocation; args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"regular sets in Cayley graphs of finite groups"};
    app.require_subcommand(1);

    struct {
        std::string group, set, subset, subgroup, groups;
        int a = 0, b = 0;
        long long lambda = 0;
        int cap = 20;
        int workers = 1;
        std::uint64_t max_candidates = std::uint64_t{1} << 24;
        bool json = false;
        bool edges = false;
    } opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--group", opt.group, "group spec (cyclic:n, dihedral:n, genq:n, q8, "
                                               "product(a,b), perm:<cycles>, table:<path>)")
            ->required();
        sub->add_flag("--json", opt.json, "emit a JSON report");
    };

    CLI::App* verify = app.add_subcommand("verify", "certify a subset as an (a,b)-regular set");
    add_common(verify);
    verify->add_option("--set", opt.set, "connection set (comma-separated element names)")
        ->required();
    verify->add_option("--subset", opt.subset, "candidate subset C")->required();
    verify->add_flag("--edges", opt.edges, "include the graph's edge list in the report");

    CLI::App* construct =
        app.add_subcommand("construct", "build a connection set realizing H as an (a,b)-regular set");
    add_common(construct);
    construct->add_option("--subgroup", opt.subgroup, "subgroup generators")->required();
    construct->add_option("--a", opt.a, "target a")->required();
    construct->add_option("--b", opt.b, "target b")->required();

    CLI::App* transversal =
        app.add_subcommand("transversal", "inverse-closed left transversal S0 of a normal subgroup");
    add_common(transversal);
    transversal->add_option("--subgroup", opt.subgroup, "subgroup generators")->required();

    CLI::App* condition1 =
        app.add_subcommand("condition1", "check: every g with g^2 in H has h in H with (gh)^2 = e");
    add_common(condition1);
    condition1->add_option("--subgroup", opt.subgroup, "subgroup generators")->required();

    CLI::App* enumerate = app.add_subcommand("enumerate", "list all regular sets of Cay(G,S)");
    add_common(enumerate);
    enumerate->add_option("--set", opt.set, "connection set")->required();
    CLI::Option* enum_a = enumerate->add_option("--a", opt.a, "filter: a");
    CLI::Option* enum_b = enumerate->add_option("--b", opt.b, "filter: b");
    enumerate->add_option("--cap", opt.cap, "all-subsets order cap (default 20)");
    enumerate->add_option("--workers", opt.workers, "worker threads");

    CLI::App* feasible =
        app.add_subcommand("feasible", "exhaustive (a,b) feasibility table for a subgroup");
    add_common(feasible);
    feasible->add_option("--subgroup", opt.subgroup, "subgroup generators")->required();
    feasible->add_option("--budget", opt.max_candidates, "max candidate sets (default 2^24)");
    feasible->add_option("--workers", opt.workers, "worker threads");

    CLI::App* quotient = app.add_subcommand("quotient", "quotient matrix of the partition {C, V\\C}");
    add_common(quotient);
    quotient->add_option("--set", opt.set, "connection set")->required();
    quotient->add_option("--subset", opt.subset, "candidate subset C")->required();

    CLI::App* eigcheck = app.add_subcommand("eigcheck", "exact eigenvalue membership for Cay(G,S)");
    add_common(eigcheck);
    eigcheck->add_option("--set", opt.set, "connection set")->required();
    eigcheck->add_option("--lambda", opt.lambda, "candidate integer eigenvalue")->required();
    eigcheck->add_flag("--edges", opt.edges, "include the graph's edge list in the report");

    CLI::App* probe = app.add_subcommand(
        "probe-q1", "compare condition (1) with perfect-code search on non-normal subgroups");
    probe->add_option("--groups", opt.groups, "comma-separated group specs")->required();
    probe->add_flag("--json", opt.json, "emit a JSON report");
    probe->add_option("--budget", opt.max_candidates, "max candidate sets per subgroup");
    probe->add_option("--workers", opt.workers, "worker threads");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (app.got_subcommand(verify) || app.got_subcommand(quotient)) {
            const GroupTable g = build_group(opt.group);
            const CayleyGraph graph = make_cayley_graph(g, parse_element_set(g, opt.set));
            const ElementSet c = parse_element_set(g, opt.subset);
            ordered_json inputs;
            inputs["group"] = opt.group;
            inputs["set"] = set_json(graph.connection().elems());
            inputs["subset"] = set_json(c);
            std::string edge_text;
            if (opt.edges) {
                ordered_json ej = ordered_json::array();
                for (const auto& [eu, ev] : edge_list(graph)) {
                    ej.push_back(ordered_json::array({g.name(eu), g.name(ev)}));
                    edge_text += g.name(eu) + " -- " + g.name(ev) + "\n";
                }
                inputs["edges"] = ej;
            }

            if (app.got_subcommand(verify)) {
                RegularityWitness w;
                const auto cert = check_regular_set(graph, c, &w);
                if (cert) {
                    detail::emit_report(out, opt.json, "verify", inputs, certificate_json(*cert),
                                        exit_ok,
                                        edge_text + "(" + std::to_string(cert->a) + "," +
                                            std::to_string(cert->b) + ")-regular set: |C|=" +
                                            std::to_string(cert->set_size) +
                                            ", degree=" + std::to_string(cert->degree) + "\n");
                    return exit_ok;
                }
                detail::emit_report(
                    out, opt.json, "verify", inputs,
                    not_regular_json(g, w, c.size(), graph.degree()), exit_negative,
                    edge_text + "not regular: vertices " + g.name(w.u) + " (count " +
                        std::to_string(w.count_u) + ") and " + g.name(w.v) + " (count " +
                        std::to_string(w.count_v) + ") disagree\n");
                return exit_negative;
            }

            const auto q = quotient_matrix(graph, c);
            std::string human;
            if (q)
                human = "quotient matrix [[" + std::to_string(q->entries[0][0]) + "," +
                        std::to_string(q->entries[0][1]) + "],[" +
                        std::to_string(q->entries[1][0]) + "," +
                        std::to_string(q->entries[1][1]) + "]], k=" + std::to_string(q->k) +
                        ", mu=" + std::to_string(mu_from_quotient(*q)) + "\n";
            else
                human = "not an equitable two-part partition\n";
            detail::emit_report(out, opt.json, "quotient", inputs, quotient_json(q),
                                q ? exit_ok : exit_negative, human);
            return q ? exit_ok : exit_negative;
        }

        if (app.got_subcommand(construct)) {
            const GroupTable g = build_group(opt.group);
            const ElementSet h = parse_subgroup(g, opt.subgroup);
            ordered_json inputs;
            inputs["group"] = opt.group;
            inputs["subgroup"] = set_json(h);
            inputs["a"] = opt.a;
            inputs["b"] = opt.b;
            const auto trace = regular_set_connection(g, h, opt.a, opt.b);
            if (!trace) {
                detail::emit_report(out, opt.json, "construct", inputs, nullptr, exit_negative,
                                    "infeasible: no connection set realizes (a,b)=(" +
                                        std::to_string(opt.a) + "," + std::to_string(opt.b) +
                                        ") for this subgroup\n");
                return exit_negative;
            }
            // re-verify through both independent certifiers before printing
            const auto cert_sub = check_subgroup_regular(g, trace->result, h);
            const auto cert_nbr = check_regular_set(CayleyGraph(g, trace->result), h);
            if (!cert_sub || !cert_nbr || cert_sub->a != opt.a || cert_sub->b != opt.b ||
                cert_nbr->a != opt.a || cert_nbr->b != opt.b) {
                err << "internal inconsistency: construction output failed re-verification\n";
                return exit_internal;
            }
            ordered_json outcome;
            outcome["trace"] = trace_json(g, *trace);
            outcome["certificate"] = certificate_json(*cert_nbr);
            detail::emit_report(out, opt.json, "construct", inputs, outcome, exit_ok,
                                "S = " + detail::format_set(trace->result.elems()) + "\n|S| = " +
                                    std::to_string(trace->result.size()) + ", certified (" +
                                    std::to_string(opt.a) + "," + std::to_string(opt.b) + ")\n");
            return exit_ok;
        }

        if (app.got_subcommand(transversal)) {
            const GroupTable g = build_group(opt.group);
            const ElementSet h = parse_subgroup(g, opt.subgroup);
            ordered_json inputs;
            inputs["group"] = opt.group;
            inputs["subgroup"] = set_json(h);
            const auto s0 = inverse_closed_transversal(g, h);
            if (!s0) {
                detail::emit_report(out, opt.json, "transversal", inputs, nullptr, exit_negative,
                                    "no inverse-closed left transversal exists\n");
                return exit_negative;
            }
            detail::emit_report(out, opt.json, "transversal", inputs, s0_json(g, *s0), exit_ok,
                                "S0 = " + detail::format_names(g, s0->elems) +
                                    ", m = " + std::to_string(s0->m) + "\n");
            return exit_ok;
        }

        if (app.got_subcommand(condition1)) {
            const GroupTable g = build_group(opt.group);
            const ElementSet h = parse_subgroup(g, opt.subgroup);
            ordered_json inputs;
            inputs["group"] = opt.group;
            inputs["subgroup"] = set_json(h);
            int witness = -1;
            const bool holds = condition1_holds(g, h, &witness);
            ordered_json outcome;
            outcome["holds"] = holds;
            outcome["witness"] = holds ? ordered_json(nullptr) : ordered_json(g.name(witness));
            detail::emit_report(out, opt.json, "condition1", inputs, outcome,
                                holds ? exit_ok : exit_negative,
                                holds ? "condition (1) holds\n"
                                      : "condition (1) fails at g = " + g.name(witness) + "\n");
            return holds ? exit_ok : exit_negative;
        }

        if (app.got_subcommand(enumerate)) {
            const GroupTable g = build_group(opt.group);
            const CayleyGraph graph = make_cayley_graph(g, parse_element_set(g, opt.set));
            if (enum_a->count() != enum_b->count())
                throw std::invalid_argument("enumerate: --a and --b must be given together");
            std::optional<std::pair<int, int>> filter;
            if (enum_a->count()) filter = std::make_pair(opt.a, opt.b);
            const auto found = enumerate_regular_sets(graph, filter, opt.cap, opt.workers);
            ordered_json inputs;
            inputs["group"] = opt.group;
            inputs["set"] = set_json(graph.connection().elems());
            inputs["filter"] = filter ? ordered_json{{"a", filter->first}, {"b", filter->second}}
                                      : ordered_json(nullptr);
            ordered_json outcome;
            outcome["count"] = found.size();
            ordered_json sets = ordered_json::array();
            std::string human;
            for (const auto& [c, cert] : found) {
                sets.push_back(ordered_json{
                    {"set", set_json(c)}, {"a", cert.a}, {"b", cert.b}});
                human += detail::format_set(c) + " -> (" + std::to_string(cert.a) + "," +
                         std::to_string(cert.b) + ")\n";
            }
            outcome["sets"] = sets;
            if (found.empty()) human = "no regular sets found\n";
            detail::emit_report(out, opt.json, "enumerate", inputs, outcome,
                                found.empty() ? exit_negative : exit_ok, human);
            return found.empty() ? exit_negative : exit_ok;
        }

        if (app.got_subcommand(feasible)) {
            const GroupTable g = build_group(opt.group);
            const ElementSet h = parse_subgroup(g, opt.subgroup);
            SearchBudget budget;
            budget.max_candidates = opt.max_candidates;
            budget.workers = opt.workers;
            const FeasibilityTable table = feasible_ab_table(g, h, budget);
            ordered_json inputs;
            inputs["group"] = opt.group;
            inputs["subgroup"] = set_json(h);
            std::string human = "H = " + detail::format_set(h) +
                                (table.normal ? " (normal)\n" : " (not normal)\n");
            const int d = h.size();
            for (int a = 0; a < d; ++a) {
                human += "a=" + std::to_string(a) + ":";
                for (int b = 0; b <= d; ++b) {
                    const auto& cell = table.cell(a, b);
                    human += cell.state == SearchVerdict::yes
                                 ? " +"
                                 : (cell.state == SearchVerdict::no ? " -" : " ?");
                }
                human += "\n";
            }
            if (!table.complete) human += "(budget exhausted; '?' cells undecided)\n";
            detail::emit_report(out, opt.json, "feasible", inputs, feasibility_json(table),
                                exit_ok, human);
            return exit_ok;
        }

        if (app.got_subcommand(eigcheck)) {
            const GroupTable g = build_group(opt.group);
            const CayleyGraph graph = make_cayley_graph(g, parse_element_set(g, opt.set));
            const bool member = eigenvalue_membership(graph, opt.lambda);
            ordered_json inputs;
            inputs["group"] = opt.group;
            inputs["set"] = set_json(graph.connection().elems());
            inputs["lambda"] = opt.lambda;
            std::string edge_text;
            if (opt.edges) {
                ordered_json ej = ordered_json::array();
                for (const auto& [eu, ev] : edge_list(graph)) {
                    ej.push_back(ordered_json::array({g.name(eu), g.name(ev)}));
                    edge_text += g.name(eu) + " -- " + g.name(ev) + "\n";
                }
                inputs["edges"] = ej;
            }
            ordered_json outcome;
            outcome["eigenvalue"] = member;
            detail::emit_report(out, opt.json, "eigcheck", inputs, outcome,
                                member ? exit_ok : exit_negative,
                                edge_text + std::to_string(opt.lambda) +
                                    (member ? " is an eigenvalue\n" : " is not an eigenvalue\n"));
            return member ? exit_ok : exit_negative;
        }

        if (app.got_subcommand(probe)) {
            SearchBudget budget;
            budget.max_candidates = opt.max_candidates;
            budget.workers = opt.workers;
            const auto specs = detail::split_spec_list(opt.groups);
            const Question1Report report = question1_probe(specs, budget);
            ordered_json inputs;
            inputs["groups"] = specs;
            std::string human;
            for (const auto& row : report.rows) {
                human += row.group_spec + " H={";
                for (size_t i = 0; i < row.subgroup_names.size(); ++i)
                    human += (i ? "," : "") + row.subgroup_names[i];
                human += "} condition1=" + std::string(row.condition1 ? "true" : "false");
                human += " perfect_code=";
                human += row.perfect_code == SearchVerdict::yes
                             ? "true"
                             : (row.perfect_code == SearchVerdict::no ? "false" : "unknown");
                human += row.decided() && !row.agree() ? "  << DISAGREEMENT\n" : "\n";
            }
            human += std::to_string(report.rows.size()) + " non-normal subgroups probed, " +
                     std::to_string(report.disagreements.size()) + " disagreements\n";
            for (const auto& s : report.skipped) human += "skipped: " + s + "\n";
            const int status = report.disagreements.empty() ? exit_ok : exit_negative;
            detail::emit_report(out, opt.json, "probe-q1", inputs, question1_json(report), status,
                                human);
            return status;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::logic_error& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return exit_internal;
    }
    err << "error: no subcommand\n";
    return exit_usage;
}

inline int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), std::cout, std::cerr);
}

}  // namespace regsets::cli
