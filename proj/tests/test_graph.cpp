#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "ggdr/error.hpp"
#include "ggdr/graph.hpp"

using namespace ggdr;

namespace {

std::atomic<int> temp_counter{0};

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ggdr_test_" + std::to_string(temp_counter++));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string str() const { return path.string(); }
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("empty csv files load to an empty graph") {
    TempDir dir;
    write_file(dir.path / "vertices.csv", "id;labels;props\n");
    write_file(dir.path / "edges.csv", "id;src;dst;labels;props\n");
    PropertyGraph graph = load_graph(dir.str());
    CHECK(graph.vertex_count() == 0);
    CHECK(graph.edge_count() == 0);
}

TEST_CASE("single vertex row round trips") {
    TempDir dir;
    write_file(dir.path / "vertices.csv", "id;labels;props\nv1;Person;name=Ann\n");
    write_file(dir.path / "edges.csv", "id;src;dst;labels;props\n");
    PropertyGraph graph = load_graph(dir.str());
    CHECK(graph.vertex_count() == 1);
    const GraphObject* v = graph.find_vertex("v1");
    REQUIRE(v != nullptr);
    CHECK(v->has_label("Person"));
    REQUIRE(v->visible_property("name") != nullptr);
    CHECK(v->visible_property("name")->text() == "Ann");
}

TEST_CASE("dangling edge endpoint is an integrity error naming the vertex") {
    TempDir dir;
    write_file(dir.path / "vertices.csv", "id;labels;props\nv1;Person;\n");
    write_file(dir.path / "edges.csv", "id;src;dst;labels;props\ne1;v1;v9;knows;\n");
    CHECK_THROWS_WITH_AS(load_graph(dir.str()),
                         doctest::Contains("v9"), IntegrityError);
}

TEST_CASE("duplicate ids are rejected") {
    TempDir dir;
    write_file(dir.path / "vertices.csv", "id;labels;props\nv1;Person;\nv1;Person;\n");
    write_file(dir.path / "edges.csv", "id;src;dst;labels;props\n");
    CHECK_THROWS_AS(load_graph(dir.str()), IntegrityError);
}

TEST_CASE("malformed row reports file and line") {
    TempDir dir;
    write_file(dir.path / "vertices.csv", "id;labels;props\nv1;Person\n");
    write_file(dir.path / "edges.csv", "id;src;dst;labels;props\n");
    try {
        load_graph(dir.str());
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("vertices.csv") != std::string::npos);
    }
}

TEST_CASE("value typing: integer, float, boolean, text") {
    CHECK(Value::parse("42").kind() == ValueKind::Int);
    CHECK(Value::parse("-7").kind() == ValueKind::Int);
    CHECK(Value::parse("4.5").kind() == ValueKind::Float);
    CHECK(Value::parse("true").kind() == ValueKind::Bool);
    CHECK(Value::parse("Ann").kind() == ValueKind::Text);
    CHECK(Value::parse("4x").kind() == ValueKind::Text);
    // different kinds never compare equal
    CHECK(Value(std::int64_t{5}) != Value(5.0));
    CHECK(Value("true") != Value(true));
    // floats keep their kind through a print/parse round trip
    CHECK(Value::parse(Value(5.0).to_text()).kind() == ValueKind::Float);
}

TEST_CASE("create_object uses the generated namespace and keeps the audit green") {
    PropertyGraph graph;
    graph.add_vertex("u", {"Person"}, {});
    graph.add_vertex("v", {"Person"}, {});
    ObjectId place = graph.create_object(ObjectKind::Vertex, {"Place"}, {});
    CHECK(place.rfind("gen:", 0) == 0);
    ObjectId edge = graph.create_object(ObjectKind::Edge, {"isLocatedIn"}, {}, "u", place);
    CHECK(graph.find_edge(edge) != nullptr);
    CHECK(graph.out_edges("u").size() == 1);
    graph.audit();

    CHECK_THROWS_AS(
        graph.create_object(ObjectKind::Edge, {"isLocatedIn"}, {}, "u", "gen:999"),
        IntegrityError);

    // ids are never reused
    ObjectId another = graph.create_object(ObjectKind::Vertex, {"Place"}, {});
    CHECK(another != place);
}

TEST_CASE("objects_with_label: wildcard, membership, unknown") {
    PropertyGraph graph;
    graph.add_vertex("a", {"Person", "Employee"}, {});
    graph.add_vertex("b", {"Person"}, {});
    graph.add_vertex("c", {"Company"}, {});
    CHECK(graph.objects_with_label(ObjectKind::Vertex, "-").size() == 3);
    auto people = graph.objects_with_label(ObjectKind::Vertex, "Person");
    CHECK(people == std::vector<ObjectId>{"a", "b"});
    auto employees = graph.objects_with_label(ObjectKind::Vertex, "Employee");
    CHECK(employees == std::vector<ObjectId>{"a"});
    CHECK(graph.objects_with_label(ObjectKind::Vertex, "Zzz").empty());
}

TEST_CASE("two loads of the same files serialize byte-identically") {
    TempDir dir;
    write_file(dir.path / "vertices.csv",
               "id;labels;props\nv2;Person;age=31,name=Bob\nv1;Person|Employee;name=Ann\n");
    write_file(dir.path / "edges.csv",
               "id;src;dst;labels;props\ne1;v1;v2;knows;since=2001\n");
    PropertyGraph g1 = load_graph(dir.str());
    PropertyGraph g2 = load_graph(dir.str());
    CHECK(dump_vertices_csv(g1) == dump_vertices_csv(g2));
    CHECK(dump_edges_csv(g1) == dump_edges_csv(g2));
    // rows come back sorted by id
    CHECK(dump_vertices_csv(g1).find("v1") < dump_vertices_csv(g1).find("v2"));
}

TEST_CASE("hidden keys are invisible to constraint evaluation") {
    PropertyGraph graph;
    graph.add_vertex("v", {"Person"}, {{"_gen_by", Value("rule")}, {"name", Value("Ann")}});
    const GraphObject* v = graph.find_vertex("v");
    CHECK(v->visible_property("_gen_by") == nullptr);
    CHECK(v->visible_property("name") != nullptr);
}
