#include "ggdr/report.hpp"

#include "json.hpp"

namespace ggdr {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json binding_json(const Match& match) {
    ordered_json j = ordered_json::object();
    for (const auto& [var, id] : match.binding) j[var] = id;
    return j;
}

}  // namespace

std::string validation_document(const std::vector<ViolationReport>& reports,
                                bool include_timings) {
    ordered_json doc;
    doc["command"] = "validate";
    ordered_json list = ordered_json::array();
    bool all_valid = true;
    for (const auto& report : reports) {
        ordered_json r;
        r["ggd"] = report.ggd;
        r["sourceMatches"] = report.source_matches;
        ordered_json violated = ordered_json::array();
        for (const auto& match : report.violated) violated.push_back(binding_json(match));
        r["violated"] = std::move(violated);
        r["plan"] = to_string(report.plan);
        if (include_timings) r["ms"] = report.ms;
        all_valid = all_valid && report.valid();
        list.push_back(std::move(r));
    }
    doc["reports"] = std::move(list);
    doc["allValid"] = all_valid;
    return doc.dump(2) + "\n";
}

std::string sat_document(const SatResult& result, bool include_witness, double ms,
                         bool include_timings) {
    ordered_json doc;
    doc["problem"] = "satisfiability";
    switch (result.verdict) {
        case SatResult::Verdict::Satisfiable: doc["verdict"] = "Satisfiable"; break;
        case SatResult::Verdict::Unsatisfiable: doc["verdict"] = "Unsatisfiable"; break;
        case SatResult::Verdict::Unknown: doc["verdict"] = "Unknown"; break;
    }
    if (!result.detail.empty()) doc["detail"] = result.detail;
    if (include_witness && result.verdict == SatResult::Verdict::Satisfiable) {
        ordered_json witness;
        witness["vertices"] = dump_vertices_csv(result.witness);
        witness["edges"] = dump_edges_csv(result.witness);
        doc["witness"] = std::move(witness);
    }
    doc["steps"] = result.steps;
    if (include_timings) doc["ms"] = ms;
    return doc.dump(2) + "\n";
}

std::string implication_document(const ImplicationResult& result, double ms,
                                 bool include_timings) {
    ordered_json doc;
    doc["problem"] = "implication";
    switch (result.verdict) {
        case ImplicationResult::Verdict::Implied: doc["verdict"] = "Implied"; break;
        case ImplicationResult::Verdict::NotImplied: doc["verdict"] = "NotImplied"; break;
        case ImplicationResult::Verdict::Unknown: doc["verdict"] = "Unknown"; break;
    }
    if (!result.detail.empty()) doc["detail"] = result.detail;
    doc["steps"] = result.steps;
    if (include_timings) doc["ms"] = ms;
    return doc.dump(2) + "\n";
}

std::string wacyclic_document(const DependencyGraph& graph, double ms, bool include_timings) {
    ordered_json doc;
    doc["problem"] = "weak-acyclicity";
    doc["verdict"] = graph.weakly_acyclic;
    doc["positions"] = graph.nodes.size();
    std::size_t special = 0;
    for (const auto& e : graph.edges) special += e.special ? 1 : 0;
    doc["edges"] = graph.edges.size();
    doc["specialEdges"] = special;
    if (include_timings) doc["ms"] = ms;
    return doc.dump(2) + "\n";
}

}  // namespace ggdr
