#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ggdr/value.hpp"

namespace ggdr {

using ObjectId = std::string;

enum class ObjectKind { Vertex, Edge };

inline constexpr char kWildcardLabel[] = "-";

/// Property keys starting with '_' are bookkeeping and invisible to
/// constraint evaluation.
inline bool is_hidden_key(const std::string& key) {
    return !key.empty() && key.front() == '_';
}

struct GraphObject {
    ObjectId id;
    ObjectKind kind = ObjectKind::Vertex;
    std::set<std::string> labels;
    std::map<std::string, Value> properties;
    ObjectId src;  // edges only
    ObjectId dst;  // edges only

    bool has_label(const std::string& label) const { return labels.count(label) > 0; }
    const Value* visible_property(const std::string& key) const;
};

/// Pattern-side label match: equal, or the pattern side is the wildcard.
inline bool label_matches(const std::string& pattern_label, const GraphObject& object) {
    return pattern_label == kWildcardLabel || object.has_label(pattern_label);
}

/// In-memory property graph with deterministic iteration (sorted by id)
/// and adjacency/label indexes kept consistent with the object maps.
class PropertyGraph {
public:
    void add_vertex(const ObjectId& id, std::set<std::string> labels,
                    std::map<std::string, Value> properties);
    void add_edge(const ObjectId& id, const ObjectId& src, const ObjectId& dst,
                  std::set<std::string> labels, std::map<std::string, Value> properties);

    /// Creates an object in the reserved "gen:" id namespace. Ids are never
    /// reused, even across removals.
    ObjectId create_object(ObjectKind kind, std::set<std::string> labels,
                           std::map<std::string, Value> properties, const ObjectId& src = {},
                           const ObjectId& dst = {});

    const GraphObject* find(const ObjectId& id) const;
    const GraphObject* find_vertex(const ObjectId& id) const;
    const GraphObject* find_edge(const ObjectId& id) const;

    void set_property(const ObjectId& id, const std::string& key, Value value);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::map<ObjectId, GraphObject>& vertices() const { return vertices_; }
    const std::map<ObjectId, GraphObject>& edges() const { return edges_; }

    /// All ids of the requested kind carrying the label; the wildcard
    /// returns everything. Ascending id order.
    std::vector<ObjectId> objects_with_label(ObjectKind kind, const std::string& label) const;
    std::size_t label_frequency(ObjectKind kind, const std::string& label) const;

    const std::vector<ObjectId>& out_edges(const ObjectId& vertex) const;
    const std::vector<ObjectId>& in_edges(const ObjectId& vertex) const;

    /// Verifies adjacency and label indexes against the object maps.
    /// Throws IntegrityError on the first mismatch.
    void audit() const;

private:
    void index_labels(const GraphObject& object);

    std::map<ObjectId, GraphObject> vertices_;
    std::map<ObjectId, GraphObject> edges_;
    std::map<ObjectId, std::vector<ObjectId>> out_;
    std::map<ObjectId, std::vector<ObjectId>> in_;
    std::map<std::string, std::set<ObjectId>> vertex_label_index_;
    std::map<std::string, std::set<ObjectId>> edge_label_index_;
    std::uint64_t gen_counter_ = 0;
};

/// Reads `vertices.csv` and `edges.csv` from `dir`.
PropertyGraph load_graph(const std::string& dir);

/// Writes the two-file layout back, rows sorted by id.
void dump_graph(const PropertyGraph& graph, const std::string& dir);

std::string dump_vertices_csv(const PropertyGraph& graph);
std::string dump_edges_csv(const PropertyGraph& graph);

}  // namespace ggdr
