#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ggdr/eval.hpp"
#include "ggdr/ggd.hpp"
#include "ggdr/graph.hpp"

namespace ggdr {

/// Synthetic workload description. Label counts and plant instance
/// counts scale linearly with the scale factor; everything is a pure
/// function of (spec, seed, scale).
struct PropGen {
    std::string key;
    std::string kind = "text";  // text | int | float | bool
    std::vector<std::string> vocab;
    double min = 0;
    double max = 100;
};

struct LabelSpec {
    std::string label;
    std::size_t count = 0;
    std::vector<PropGen> props;
};

struct EdgeRule {
    std::string src;
    std::string label;
    std::string dst;
    double avg_degree = 1.0;
    std::vector<PropGen> props;
};

/// Planted witnesses for one rule: `instances` source images, of which
/// round(rate * instances) are left without their target side. The
/// injected violations are logged so expected counts are exact.
struct PlantRule {
    std::string ggd;
    std::size_t instances = 0;
    double violation_rate = 0.0;
};

struct GenSpec {
    std::vector<LabelSpec> labels;
    std::vector<EdgeRule> edges;
    std::vector<PlantRule> plants;

    static GenSpec from_json_text(const std::string& text);
    static GenSpec from_json_file(const std::string& path);
};

struct GroundTruth {
    // ggd name -> violated source bindings, sorted
    std::map<std::string, std::vector<Match>> violations;

    std::string to_json_text() const;
    static GroundTruth from_json_file(const std::string& path);
};

struct Generated {
    PropertyGraph graph;
    GroundTruth truth;
};

Generated generate_graph(const GenSpec& spec, const GgdSet& ggds, std::uint64_t seed,
                         double scale);

/// Writes vertices.csv, edges.csv and ground_truth.json into `dir`.
void write_generated(const Generated& generated, const std::string& dir);

}  // namespace ggdr
