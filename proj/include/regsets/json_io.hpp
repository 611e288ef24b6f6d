#pragma once

#include <nlohmann/json.hpp>

#include "construction.hpp"
#include "equitable.hpp"
#include "search.hpp"

namespace regsets {

using ordered_json = nlohmann::ordered_json;

inline ordered_json names_json(const GroupTable& g, const std::vector<int>& elems) {
    ordered_json arr = ordered_json::array();
    for (int x : elems) arr.push_back(g.name(x));
    return arr;
}

inline ordered_json set_json(const ElementSet& s) { return names_json(s.group(), s.elements()); }

/// {"a","b","set_size","degree","witness":null}
inline ordered_json certificate_json(const RegularSetCertificate& cert) {
    ordered_json j;
    j["a"] = cert.a;
    j["b"] = cert.b;
    j["set_size"] = cert.set_size;
    j["degree"] = cert.degree;
    j["witness"] = nullptr;
    return j;
}

/// Same schema for the negative outcome: a and b carry the two conflicting
/// counts and witness names the offending vertex pair.
inline ordered_json not_regular_json(const GroupTable& g, const RegularityWitness& w, int set_size,
                                     int degree) {
    ordered_json j;
    j["a"] = w.count_u;
    j["b"] = w.count_v;
    j["set_size"] = set_size;
    j["degree"] = degree;
    j["witness"] = ordered_json{{"u", g.name(w.u)}, {"v", g.name(w.v)}};
    return j;
}

inline ordered_json s0_json(const GroupTable& g, const OrderedS0& s0) {
    ordered_json j;
    j["s0"] = names_json(g, s0.elems);
    j["m"] = s0.m;
    return j;
}

inline ordered_json trace_json(const GroupTable& g, const ConstructionTrace& trace) {
    ordered_json j;
    j["K"] = set_json(trace.k);
    ordered_json s_blocks = ordered_json::array();
    for (const auto& blk : trace.s_blocks) s_blocks.push_back(set_json(blk));
    j["S_blocks"] = s_blocks;
    ordered_json t_blocks = ordered_json::array();
    for (const auto& blk : trace.t_blocks) t_blocks.push_back(set_json(blk));
    j["T_blocks"] = t_blocks;
    j["S"] = set_json(trace.result.elems());
    j["m"] = trace.s0.m;
    ordered_json cosets = ordered_json::array();
    for (const auto& dec : trace.coset_decomps)
        cosets.push_back(ordered_json{
            {"rep", g.name(dec.coset_rep)}, {"alpha", dec.alpha}, {"beta", dec.beta}});
    j["cosets"] = cosets;
    return j;
}

inline ordered_json feasibility_json(const FeasibilityTable& table) {
    ordered_json j;
    j["H"] = set_json(table.subgroup);
    j["normal"] = table.normal;
    ordered_json cells = ordered_json::array();
    const int d = table.subgroup.size();
    for (int a = 0; a < d; ++a)
        for (int b = 0; b <= d; ++b) {
            const FeasibilityCell& cell = table.cell(a, b);
            ordered_json cj;
            cj["a"] = a;
            cj["b"] = b;
            if (cell.state == SearchVerdict::unknown) cj["feasible"] = "unknown";
            else cj["feasible"] = cell.state == SearchVerdict::yes;
            cj["witness"] = cell.witness ? set_json(*cell.witness) : ordered_json(nullptr);
            cells.push_back(cj);
        }
    j["cells"] = cells;
    return j;
}

inline ordered_json question1_json(const Question1Report& report) {
    auto row_json = [](const Question1Row& row) {
        ordered_json r;
        r["group"] = row.group_spec;
        r["subgroup"] = row.subgroup_names;
        r["condition1"] = row.condition1;
        if (row.perfect_code == SearchVerdict::unknown) r["perfect_code"] = "unknown";
        else r["perfect_code"] = row.perfect_code == SearchVerdict::yes;
        return r;
    };
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) rows.push_back(row_json(row));
    j["rows"] = rows;
    ordered_json dis = ordered_json::array();
    for (const auto& row : report.disagreements) dis.push_back(row_json(row));
    j["disagreements"] = dis;
    j["skipped"] = report.skipped;
    return j;
}

inline ordered_json quotient_json(const std::optional<QuotientMatrix>& q) {
    ordered_json j;
    j["equitable"] = q.has_value();
    if (q) {
        j["matrix"] = ordered_json::array(
            {ordered_json::array({q->entries[0][0], q->entries[0][1]}),
             ordered_json::array({q->entries[1][0], q->entries[1][1]})});
        j["k"] = q->k;
        j["mu"] = mu_from_quotient(*q);
    } else {
        j["matrix"] = nullptr;
        j["k"] = nullptr;
        j["mu"] = nullptr;
    }
    return j;
}

}  // namespace regsets
