#include "ggdr/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ggdr/error.hpp"

namespace ggdr {

const Value* GraphObject::visible_property(const std::string& key) const {
    if (is_hidden_key(key)) return nullptr;
    auto it = properties.find(key);
    return it == properties.end() ? nullptr : &it->second;
}

void PropertyGraph::add_vertex(const ObjectId& id, std::set<std::string> labels,
                               std::map<std::string, Value> properties) {
    if (vertices_.count(id) || edges_.count(id)) {
        throw IntegrityError("duplicate object id '" + id + "'");
    }
    GraphObject object;
    object.id = id;
    object.kind = ObjectKind::Vertex;
    object.labels = std::move(labels);
    object.properties = std::move(properties);
    index_labels(object);
    out_[id];
    in_[id];
    vertices_.emplace(id, std::move(object));
}

void PropertyGraph::add_edge(const ObjectId& id, const ObjectId& src, const ObjectId& dst,
                             std::set<std::string> labels,
                             std::map<std::string, Value> properties) {
    if (vertices_.count(id) || edges_.count(id)) {
        throw IntegrityError("duplicate object id '" + id + "'");
    }
    if (!vertices_.count(src)) {
        throw IntegrityError("edge '" + id + "' references missing vertex '" + src + "'");
    }
    if (!vertices_.count(dst)) {
        throw IntegrityError("edge '" + id + "' references missing vertex '" + dst + "'");
    }
    GraphObject object;
    object.id = id;
    object.kind = ObjectKind::Edge;
    object.labels = std::move(labels);
    object.properties = std::move(properties);
    object.src = src;
    object.dst = dst;
    index_labels(object);
    auto& outs = out_[src];
    outs.insert(std::lower_bound(outs.begin(), outs.end(), id), id);
    auto& ins = in_[dst];
    ins.insert(std::lower_bound(ins.begin(), ins.end(), id), id);
    edges_.emplace(id, std::move(object));
}

ObjectId PropertyGraph::create_object(ObjectKind kind, std::set<std::string> labels,
                                      std::map<std::string, Value> properties,
                                      const ObjectId& src, const ObjectId& dst) {
    ObjectId id = "gen:" + std::to_string(gen_counter_++);
    if (kind == ObjectKind::Vertex) {
        add_vertex(id, std::move(labels), std::move(properties));
    } else {
        add_edge(id, src, dst, std::move(labels), std::move(properties));
    }
    return id;
}

const GraphObject* PropertyGraph::find(const ObjectId& id) const {
    if (const GraphObject* v = find_vertex(id)) return v;
    return find_edge(id);
}

const GraphObject* PropertyGraph::find_vertex(const ObjectId& id) const {
    auto it = vertices_.find(id);
    return it == vertices_.end() ? nullptr : &it->second;
}

const GraphObject* PropertyGraph::find_edge(const ObjectId& id) const {
    auto it = edges_.find(id);
    return it == edges_.end() ? nullptr : &it->second;
}

void PropertyGraph::set_property(const ObjectId& id, const std::string& key, Value value) {
    auto vit = vertices_.find(id);
    if (vit != vertices_.end()) {
        vit->second.properties[key] = std::move(value);
        return;
    }
    auto eit = edges_.find(id);
    if (eit == edges_.end()) throw IntegrityError("unknown object id '" + id + "'");
    eit->second.properties[key] = std::move(value);
}

std::vector<ObjectId> PropertyGraph::objects_with_label(ObjectKind kind,
                                                        const std::string& label) const {
    std::vector<ObjectId> result;
    if (label == kWildcardLabel) {
        const auto& objects = kind == ObjectKind::Vertex ? vertices_ : edges_;
        result.reserve(objects.size());
        for (const auto& [id, object] : objects) result.push_back(id);
        return result;
    }
    const auto& index = kind == ObjectKind::Vertex ? vertex_label_index_ : edge_label_index_;
    auto it = index.find(label);
    if (it == index.end()) return result;
    result.assign(it->second.begin(), it->second.end());
    return result;
}

std::size_t PropertyGraph::label_frequency(ObjectKind kind, const std::string& label) const {
    if (label == kWildcardLabel) {
        return kind == ObjectKind::Vertex ? vertices_.size() : edges_.size();
    }
    const auto& index = kind == ObjectKind::Vertex ? vertex_label_index_ : edge_label_index_;
    auto it = index.find(label);
    return it == index.end() ? 0 : it->second.size();
}

const std::vector<ObjectId>& PropertyGraph::out_edges(const ObjectId& vertex) const {
    static const std::vector<ObjectId> empty;
    auto it = out_.find(vertex);
    return it == out_.end() ? empty : it->second;
}

const std::vector<ObjectId>& PropertyGraph::in_edges(const ObjectId& vertex) const {
    static const std::vector<ObjectId> empty;
    auto it = in_.find(vertex);
    return it == in_.end() ? empty : it->second;
}

void PropertyGraph::index_labels(const GraphObject& object) {
    auto& index =
        object.kind == ObjectKind::Vertex ? vertex_label_index_ : edge_label_index_;
    for (const auto& label : object.labels) index[label].insert(object.id);
}

void PropertyGraph::audit() const {
    for (const auto& [id, edge] : edges_) {
        if (!vertices_.count(edge.src) || !vertices_.count(edge.dst)) {
            throw IntegrityError("audit: edge '" + id + "' has a dangling endpoint");
        }
        const auto& outs = out_edges(edge.src);
        if (!std::binary_search(outs.begin(), outs.end(), id)) {
            throw IntegrityError("audit: edge '" + id + "' missing from out-adjacency");
        }
        const auto& ins = in_edges(edge.dst);
        if (!std::binary_search(ins.begin(), ins.end(), id)) {
            throw IntegrityError("audit: edge '" + id + "' missing from in-adjacency");
        }
    }
    std::size_t adjacency_total = 0;
    for (const auto& [vertex, edge_ids] : out_) {
        if (!vertices_.count(vertex)) {
            throw IntegrityError("audit: adjacency row for unknown vertex '" + vertex + "'");
        }
        adjacency_total += edge_ids.size();
        for (const auto& edge_id : edge_ids) {
            const GraphObject* edge = find_edge(edge_id);
            if (!edge || edge->src != vertex) {
                throw IntegrityError("audit: stale out-adjacency entry '" + edge_id + "'");
            }
        }
    }
    if (adjacency_total != edges_.size()) {
        throw IntegrityError("audit: out-adjacency cardinality mismatch");
    }
    for (const auto& [label, ids] : vertex_label_index_) {
        for (const auto& id : ids) {
            const GraphObject* v = find_vertex(id);
            if (!v || !v->has_label(label)) {
                throw IntegrityError("audit: stale vertex label index entry '" + id + "'");
            }
        }
    }
    for (const auto& [label, ids] : edge_label_index_) {
        for (const auto& id : ids) {
            const GraphObject* e = find_edge(id);
            if (!e || !e->has_label(label)) {
                throw IntegrityError("audit: stale edge label index entry '" + id + "'");
            }
        }
    }
    for (const auto& [id, vertex] : vertices_) {
        for (const auto& label : vertex.labels) {
            auto it = vertex_label_index_.find(label);
            if (it == vertex_label_index_.end() || !it->second.count(id)) {
                throw IntegrityError("audit: vertex '" + id + "' missing from label index");
            }
        }
    }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

std::set<std::string> parse_labels(const std::string& field) {
    std::set<std::string> labels;
    if (field.empty()) return labels;
    for (auto& label : split(field, '|')) {
        if (!label.empty()) labels.insert(label);
    }
    return labels;
}

std::map<std::string, Value> parse_props(const std::string& field, const std::string& file,
                                         int line) {
    std::map<std::string, Value> props;
    if (field.empty()) return props;
    for (auto& pair : split(field, ',')) {
        auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError(file, line, 1, "malformed property pair '" + pair + "'");
        }
        props.emplace(pair.substr(0, eq), Value::parse(pair.substr(eq + 1)));
    }
    return props;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::string props_to_csv(const std::map<std::string, Value>& props) {
    std::string out;
    for (const auto& [key, value] : props) {
        if (!out.empty()) out += ',';
        out += key + "=" + value.to_text();
    }
    return out;
}

std::string labels_to_csv(const std::set<std::string>& labels) {
    std::string out;
    for (const auto& label : labels) {
        if (!out.empty()) out += '|';
        out += label;
    }
    return out;
}

}  // namespace

PropertyGraph load_graph(const std::string& dir) {
    PropertyGraph graph;
    const std::string vfile = dir + "/vertices.csv";
    const std::string efile = dir + "/edges.csv";

    std::ifstream vin(vfile);
    if (!vin) throw ParseError(vfile, 0, 0, "cannot open file");
    std::string line;
    int lineno = 0;
    while (std::getline(vin, line)) {
        ++lineno;
        line = strip_cr(line);
        if (lineno == 1) {
            if (line != "id;labels;props") {
                throw ParseError(vfile, 1, 1, "expected header 'id;labels;props'");
            }
            continue;
        }
        if (line.empty()) continue;
        auto fields = split(line, ';');
        if (fields.size() != 3) {
            throw ParseError(vfile, lineno, 1, "expected 3 ';'-separated fields");
        }
        if (fields[0].empty()) throw ParseError(vfile, lineno, 1, "empty vertex id");
        auto labels = parse_labels(fields[1]);
        if (labels.empty()) {
            throw ParseError(vfile, lineno, 1, "vertex '" + fields[0] + "' has no labels");
        }
        graph.add_vertex(fields[0], std::move(labels), parse_props(fields[2], vfile, lineno));
    }

    std::ifstream ein(efile);
    if (!ein) throw ParseError(efile, 0, 0, "cannot open file");
    lineno = 0;
    while (std::getline(ein, line)) {
        ++lineno;
        line = strip_cr(line);
        if (lineno == 1) {
            if (line != "id;src;dst;labels;props") {
                throw ParseError(efile, 1, 1, "expected header 'id;src;dst;labels;props'");
            }
            continue;
        }
        if (line.empty()) continue;
        auto fields = split(line, ';');
        if (fields.size() != 5) {
            throw ParseError(efile, lineno, 1, "expected 5 ';'-separated fields");
        }
        if (fields[0].empty()) throw ParseError(efile, lineno, 1, "empty edge id");
        auto labels = parse_labels(fields[3]);
        if (labels.empty()) {
            throw ParseError(efile, lineno, 1, "edge '" + fields[0] + "' has no labels");
        }
        graph.add_edge(fields[0], fields[1], fields[2], std::move(labels),
                       parse_props(fields[4], efile, lineno));
    }
    graph.audit();
    return graph;
}

std::string dump_vertices_csv(const PropertyGraph& graph) {
    std::string out = "id;labels;props\n";
    for (const auto& [id, vertex] : graph.vertices()) {
        out += id + ";" + labels_to_csv(vertex.labels) + ";" + props_to_csv(vertex.properties) +
               "\n";
    }
    return out;
}

std::string dump_edges_csv(const PropertyGraph& graph) {
    std::string out = "id;src;dst;labels;props\n";
    for (const auto& [id, edge] : graph.edges()) {
        out += id + ";" + edge.src + ";" + edge.dst + ";" + labels_to_csv(edge.labels) + ";" +
               props_to_csv(edge.properties) + "\n";
    }
    return out;
}

void dump_graph(const PropertyGraph& graph, const std::string& dir) {
    std::ofstream vout(dir + "/vertices.csv", std::ios::binary);
    vout << dump_vertices_csv(graph);
    std::ofstream eout(dir + "/edges.csv", std::ios::binary);
    eout << dump_edges_csv(graph);
}

}  // namespace ggdr
