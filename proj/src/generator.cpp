#include "ggdr/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "ggdr/chase.hpp"
#include "ggdr/error.hpp"
#include "ggdr/reasoner.hpp"

namespace ggdr {

namespace {

using ordered_json = nlohmann::ordered_json;

PropGen prop_from_json(const ordered_json& j) {
    PropGen p;
    p.key = j.at("key").get<std::string>();
    p.kind = j.value("kind", "text");
    if (j.contains("vocab")) {
        for (const auto& v : j.at("vocab")) p.vocab.push_back(v.get<std::string>());
    }
    p.min = j.value("min", 0.0);
    p.max = j.value("max", 100.0);
    return p;
}

}  // namespace

GenSpec GenSpec::from_json_text(const std::string& text) {
    GenSpec spec;
    ordered_json j = ordered_json::parse(text);
    for (const auto& l : j.value("labels", ordered_json::array())) {
        LabelSpec label;
        label.label = l.at("label").get<std::string>();
        label.count = l.at("count").get<std::size_t>();
        for (const auto& p : l.value("props", ordered_json::array())) {
            label.props.push_back(prop_from_json(p));
        }
        spec.labels.push_back(std::move(label));
    }
    for (const auto& e : j.value("edges", ordered_json::array())) {
        EdgeRule rule;
        rule.src = e.at("src").get<std::string>();
        rule.label = e.at("label").get<std::string>();
        rule.dst = e.at("dst").get<std::string>();
        rule.avg_degree = e.value("avg_degree", 1.0);
        for (const auto& p : e.value("props", ordered_json::array())) {
            rule.props.push_back(prop_from_json(p));
        }
        spec.edges.push_back(std::move(rule));
    }
    for (const auto& p : j.value("plants", ordered_json::array())) {
        PlantRule rule;
        rule.ggd = p.at("ggd").get<std::string>();
        rule.instances = p.at("instances").get<std::size_t>();
        rule.violation_rate = p.value("violation_rate", 0.0);
        if (rule.violation_rate < 0 || rule.violation_rate > 1) {
            throw IntegrityError("violation_rate must be within [0,1]");
        }
        spec.plants.push_back(std::move(rule));
    }
    return spec;
}

GenSpec GenSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

std::string GroundTruth::to_json_text() const {
    ordered_json j = ordered_json::object();
    for (const auto& [ggd, matches] : violations) {
        ordered_json list = ordered_json::array();
        for (const auto& match : matches) {
            ordered_json binding = ordered_json::object();
            for (const auto& [var, id] : match.binding) binding[var] = id;
            list.push_back(std::move(binding));
        }
        j[ggd] = std::move(list);
    }
    return j.dump(2) + "\n";
}

GroundTruth GroundTruth::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    ordered_json j = ordered_json::parse(in);
    GroundTruth truth;
    for (const auto& [ggd, list] : j.items()) {
        for (const auto& binding : list) {
            Match match;
            for (const auto& [var, id] : binding.items()) {
                match.binding.emplace(var, id.get<std::string>());
            }
            truth.violations[ggd].push_back(std::move(match));
        }
        std::sort(truth.violations[ggd].begin(), truth.violations[ggd].end());
    }
    return truth;
}

namespace {

/// Deterministic helpers on top of the seeded engine; distribution
/// classes are avoided so results are stable across standard libraries.
std::uint64_t next_index(std::mt19937_64& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53);
}

Value gen_value(const PropGen& p, std::mt19937_64& rng) {
    if (p.kind == "text") {
        if (p.vocab.empty()) return Value("t" + std::to_string(next_index(rng, 1u << 20)));
        return Value(p.vocab[next_index(rng, p.vocab.size())]);
    }
    if (p.kind == "int") {
        const auto lo = static_cast<std::int64_t>(p.min);
        const auto hi = static_cast<std::int64_t>(p.max);
        return Value(lo + static_cast<std::int64_t>(
                              next_index(rng, static_cast<std::uint64_t>(hi - lo + 1))));
    }
    if (p.kind == "float") return Value(p.min + (p.max - p.min) * next_unit(rng));
    if (p.kind == "bool") return Value((rng() & 1) != 0);
    throw IntegrityError("unknown property generator kind '" + p.kind + "'");
}

/// One planted instance is the extracted model of the rule's closure
/// graph: source objects only for a violated instance, source plus one
/// chased target extension for a valid one. Ids are prefixed per
/// instance so instances stay disjoint.
struct Template {
    PropertyGraph violated;   // source image only
    PropertyGraph valid;      // source image + enforced target
    Match source_binding;     // var -> template object id
};

Template build_template(const Ggd& ggd) {
    Template result;
    CanonicalGraph closure = build_closure_graph(ggd);
    result.source_binding = closure.source_images.at(ggd.name);
    result.violated = extract_model(closure.state);

    ChaseState enforced = closure.state;
    StepResult step = apply_step(enforced, ggd, result.source_binding);
    if (!step.consistent) {
        throw IntegrityError("cannot plant witnesses for '" + ggd.name +
                             "': target constraints conflict with the source");
    }
    result.valid = extract_model(enforced);
    return result;
}

void copy_with_prefix(const PropertyGraph& from, const std::string& prefix,
                      PropertyGraph& into) {
    for (const auto& [id, vertex] : from.vertices()) {
        into.add_vertex(prefix + id, vertex.labels, vertex.properties);
    }
    for (const auto& [id, edge] : from.edges()) {
        into.add_edge(prefix + id, prefix + edge.src, prefix + edge.dst, edge.labels,
                      edge.properties);
    }
}

}  // namespace

Generated generate_graph(const GenSpec& spec, const GgdSet& ggds, std::uint64_t seed,
                         double scale) {
    if (scale <= 0) throw IntegrityError("scale must be positive");
    Generated out;
    std::mt19937_64 rng(seed);

    // background population
    for (const auto& label : spec.labels) {
        const auto n = static_cast<std::size_t>(std::llround(label.count * scale));
        for (std::size_t i = 0; i < n; ++i) {
            std::map<std::string, Value> props;
            for (const auto& p : label.props) props.emplace(p.key, gen_value(p, rng));
            out.graph.add_vertex("n:" + label.label + ":" + std::to_string(i), {label.label},
                                 std::move(props));
        }
    }
    std::size_t edge_counter = 0;
    for (const auto& rule : spec.edges) {
        auto sources = out.graph.objects_with_label(ObjectKind::Vertex, rule.src);
        auto targets = out.graph.objects_with_label(ObjectKind::Vertex, rule.dst);
        if (targets.empty()) continue;
        for (const auto& src : sources) {
            auto degree = static_cast<std::size_t>(std::floor(rule.avg_degree));
            if (next_unit(rng) < rule.avg_degree - std::floor(rule.avg_degree)) ++degree;
            for (std::size_t d = 0; d < degree; ++d) {
                std::map<std::string, Value> props;
                for (const auto& p : rule.props) props.emplace(p.key, gen_value(p, rng));
                out.graph.add_edge("e:" + rule.label + ":" + std::to_string(edge_counter++),
                                   src, targets[next_index(rng, targets.size())],
                                   {rule.label}, std::move(props));
            }
        }
    }

    // planted witnesses with exact violation bookkeeping
    for (const auto& plant : spec.plants) {
        const Ggd* ggd = ggds.find(plant.ggd);
        if (!ggd) throw IntegrityError("plant rule references unknown ggd '" + plant.ggd + "'");
        Template tmpl = build_template(*ggd);
        const auto n = static_cast<std::size_t>(std::llround(plant.instances * scale));
        const auto violated_count =
            static_cast<std::size_t>(std::llround(plant.violation_rate * n));
        auto& truth = out.truth.violations[plant.ggd];
        for (std::size_t i = 0; i < n; ++i) {
            const bool violated = i < violated_count;
            const std::string prefix = "w:" + plant.ggd + ":" + std::to_string(i) + ":";
            copy_with_prefix(violated ? tmpl.violated : tmpl.valid, prefix, out.graph);
            if (violated) {
                Match binding;
                for (const auto& [var, id] : tmpl.source_binding.binding) {
                    binding.binding.emplace(var, prefix + id);
                }
                truth.push_back(std::move(binding));
            }
        }
        std::sort(truth.begin(), truth.end());
    }
    out.graph.audit();
    return out;
}

void write_generated(const Generated& generated, const std::string& dir) {
    dump_graph(generated.graph, dir);
    std::ofstream truth(dir + "/ground_truth.json", std::ios::binary);
    truth << generated.truth.to_json_text();
}

}  // namespace ggdr
