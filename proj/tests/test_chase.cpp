#include <cmath>
#include <random>

#include "doctest.h"
#include "ggdr/chase.hpp"
#include "ggdr/matcher.hpp"
#include "ggdr/parser.hpp"
#include "ggdr/validator.hpp"
#include "testutil.hpp"

using namespace ggdr;

namespace {

Ggd place_rule() {
    return test::parse_one(R"(
      ggd place_rule {
        source { (p:Person) }
        where { }
        target { (p:Person), (p)-[l:isLocatedIn]->(q:Place) }
        having { }
      })");
}

GgdSet transitive_pair() {
    return parse_ggds(R"(
      ggd assign_rule {
        source { (e:employee), (e)-[w:worksAt]->(p:project) }
        where { }
        target { (e:employee), (p:project), (e)-[a:assignedTo]->(p) }
        having { absdiff(a.hours, 40) <= 4; }
      }
      ggd course_rule {
        source { (e:employee), (e)-[a:assignedTo]->(p:project) }
        where { absdiff(a.hours, 40) <= 8; }
        target { (e:employee), (p:project), (p)-[h:includes]->(c:course) }
        having { absdiff(c.duration, 5) <= 1; }
      })");
}

GgdSet self_generating() {
    return parse_ggds(R"(
      ggd knows_cycle {
        source { (p:Person) }
        where { }
        target { (p:Person), (q:Person), (p)-[k:knows]->(q) }
        having { }
      })");
}

}  // namespace

TEST_CASE("initialization: empty graph, own-value classes, idempotence") {
    PropertyGraph empty;
    ChaseState s0 = init_chase(empty);
    CHECK(s0.attr_classes().empty());

    PropertyGraph one;
    one.add_vertex("v1", {"Person"},
                   {{"name", Value("ann")}, {"age", Value(std::int64_t{30})}});
    ChaseState s1 = init_chase(one);
    CHECK(s1.attr_classes().size() == 2);
    CHECK(s1.members_of("v1") == std::set<ObjectId>{"v1"});
    const AttrClass* name_class = s1.attr_class("v1", "name");
    REQUIRE(name_class != nullptr);
    REQUIRE(name_class->rcqs.size() == 1);
    CHECK(name_class->rcqs[0].is_own_value());
    CHECK(name_class->rcqs[0].to_text() == "(, \"ann\", 0, =)");

    ChaseState s2 = init_chase(one);
    CHECK(s2.attr_classes().size() == s1.attr_classes().size());
    CHECK(step_log_text(s1) == step_log_text(s2));
}

TEST_CASE("fresh-state admission equals the matcher on concrete graphs") {
    std::mt19937_64 rng(321);
    for (int seed = 0; seed < 25; ++seed) {
        PropertyGraph graph = test::random_graph(rng, 9, 12);
        Ggd ggd;
        ggd.name = "adm";
        ggd.source = test::random_pattern(rng);
        ggd.source_where = test::random_constraints(rng, ggd.source);
        ggd.target = ggd.source;
        ggd.validate();
        ChaseState state = init_chase(graph);
        auto admitted = chase_match_source(state, ggd);
        MatchSet expected = match_pattern(graph, ggd.source, ggd.source_where);
        REQUIRE_MESSAGE(admitted == expected.matches, "seed " << seed);
    }
}

TEST_CASE("admission through range classes: compatible and disjoint bounds") {
    PropertyGraph graph;
    ChaseState state = init_chase(graph);
    ObjectId s = state.graph.create_object(ObjectKind::Vertex, {"student"}, {});
    state.register_object(s, /*open=*/true);

    Ggd ggd = test::parse_one(R"(
      ggd years {
        source { (s:student) }
        where { absdiff(s.year, 2015) > 2; }
        target { (s:student) }
        having { }
      })");

    // unconstrained open attribute: admitted
    CHECK(chase_match_source(state, ggd).size() == 1);

    // class already enforcing the same bound: still admitted
    state.fold(s, "year",
               Rcq::bound(DistanceFn::AbsDiff, Term::constant_of(Value(std::int64_t{2015})),
                          CompareOp::Gt, 2));
    CHECK(chase_match_source(state, ggd).size() == 1);

    // disjoint class: rejected
    ChaseState other = init_chase(graph);
    ObjectId t = other.graph.create_object(ObjectKind::Vertex, {"student"}, {});
    other.register_object(t, /*open=*/true);
    other.fold(t, "year",
               Rcq::bound(DistanceFn::AbsDiff, Term::constant_of(Value(std::int64_t{2015})),
                          CompareOp::Le, 1));
    CHECK(chase_match_source(other, ggd).empty());
}

TEST_CASE("fold keeps the loosest bound per distance expression") {
    PropertyGraph graph;
    ChaseState state = init_chase(graph);
    ObjectId a = state.graph.create_object(ObjectKind::Vertex, {"assignedTo"}, {});
    state.register_object(a, true);
    const Term alpha = Term::constant_of(Value(std::int64_t{40}));

    CHECK(state.fold(a, "hours", Rcq::bound(DistanceFn::AbsDiff, alpha, CompareOp::Le, 4)));
    // a looser bound replaces the tighter one
    CHECK(state.fold(a, "hours", Rcq::bound(DistanceFn::AbsDiff, alpha, CompareOp::Le, 8)));
    const AttrClass* klass = state.attr_class(a, "hours");
    REQUIRE(klass->rcqs.size() == 1);
    CHECK(klass->rcqs[0].threshold == 8);
    // a tighter bound is already covered: no change
    CHECK_FALSE(state.fold(a, "hours", Rcq::bound(DistanceFn::AbsDiff, alpha, CompareOp::Le, 4)));
    REQUIRE(klass->rcqs.size() == 1);
    // an incomparable bound joins the class
    CHECK(state.fold(a, "hours", Rcq::bound(DistanceFn::AbsDiff, alpha, CompareOp::Ge, 6)));
    CHECK(state.attr_class(a, "hours")->rcqs.size() == 2);
}

TEST_CASE("generation: one Place and one isLocatedIn edge per source match") {
    PropertyGraph graph;
    graph.add_vertex("p1", {"Person"}, {});
    graph.add_vertex("p2", {"Person"}, {});
    ChaseState state = init_chase(graph);
    GgdSet set;
    set.ggds.push_back(place_rule());
    ChaseOutcome outcome = run_chase(state, set, kDefaultStepCap);
    CHECK(outcome.verdict == ChaseOutcome::Verdict::TerminatedValid);
    CHECK(outcome.steps == 2);

    const PropertyGraph& result = state.graph;
    CHECK(result.objects_with_label(ObjectKind::Vertex, "Place").size() == 2);
    CHECK(result.objects_with_label(ObjectKind::Edge, "isLocatedIn").size() == 2);
    // generated objects carry provenance and exactly the pattern label
    for (const auto& id : result.objects_with_label(ObjectKind::Vertex, "Place")) {
        const GraphObject* place = result.find_vertex(id);
        CHECK(place->labels == std::set<std::string>{"Place"});
        CHECK(place->properties.count("_gen_by") == 1);
    }

    // the repaired graph re-validates clean
    PropertyGraph repaired = extract_model(state);
    CHECK(find_violations(repaired, place_rule(), PlanKind::Anti).valid());

    // and the step log replays deterministically
    ChaseState replay = init_chase(graph);
    run_chase(replay, set, kDefaultStepCap);
    CHECK(step_log_text(replay) == step_log_text(state));
    CHECK(step_log_text(state).find("generate") != std::string::npos);
}

TEST_CASE("identity merge of incompatible labels is inconsistent") {
    PropertyGraph graph;
    graph.add_vertex("p1", {"Person"}, {});
    graph.add_vertex("c1", {"Company"}, {});
    ChaseState state = init_chase(graph);
    Ggd merge_rule = test::parse_one(R"(
      ggd merge_rule {
        source { (x:Person), (y:Company) }
        where { x = y; }
        target { (x:Person), (y:Company) }
        having { }
      })");
    GgdSet set;
    set.ggds.push_back(merge_rule);
    ChaseOutcome outcome = run_chase(state, set, kDefaultStepCap);
    CHECK(outcome.verdict == ChaseOutcome::Verdict::Inconsistent);
    CHECK(outcome.witness.find("label conflict") != std::string::npos);
}

TEST_CASE("identity merge of compatible labels merges classes and values conflict") {
    PropertyGraph graph;
    graph.add_vertex("p1", {"Person"}, {{"name", Value("ann")}});
    graph.add_vertex("p2", {"Person"}, {{"name", Value("bob")}});
    ChaseState state = init_chase(graph);
    Ggd merge_rule = test::parse_one(R"(
      ggd same_entity {
        source { (x:Person), (y:Person) }
        where { x != y; }
        target { (x:Person), (y:Person) }
        having { x = y; }
      })");
    GgdSet set;
    set.ggds.push_back(merge_rule);
    ChaseOutcome outcome = run_chase(state, set, kDefaultStepCap);
    // merging distinct concrete names is a value conflict
    CHECK(outcome.verdict == ChaseOutcome::Verdict::Inconsistent);
    CHECK(outcome.witness.find("conflicting values") != std::string::npos);
}

TEST_CASE("transitive pair cascades generation and terminates") {
    PropertyGraph graph;
    graph.add_vertex("e1", {"employee"}, {});
    graph.add_vertex("pr1", {"project"}, {});
    graph.add_edge("w1", "e1", "pr1", {"worksAt"}, {});
    ChaseState state = init_chase(graph);
    GgdSet set = transitive_pair();
    ChaseOutcome outcome = run_chase(state, set, kDefaultStepCap);
    CHECK(outcome.verdict == ChaseOutcome::Verdict::TerminatedValid);

    // assign_rule generated the assignedTo edge, which triggered
    // course_rule's generation
    CHECK(state.graph.objects_with_label(ObjectKind::Edge, "assignedTo").size() == 1);
    CHECK(state.graph.objects_with_label(ObjectKind::Vertex, "course").size() == 1);

    // the assignedTo hours class kept the loosest bound (<= 8)
    const auto assigned = state.graph.objects_with_label(ObjectKind::Edge, "assignedTo");
    const AttrClass* hours = state.attr_class(state.find(assigned[0]), "hours");
    REQUIRE(hours != nullptr);
    REQUIRE(hours->rcqs.size() == 1);
    CHECK(hours->rcqs[0].threshold == 8);

    // course duration class was seeded from the generating rule
    const auto courses = state.graph.objects_with_label(ObjectKind::Vertex, "course");
    const AttrClass* duration = state.attr_class(state.find(courses[0]), "duration");
    REQUIRE(duration != nullptr);
    CHECK(duration->rcqs[0].threshold == 1);
}

TEST_CASE("self-generating rule hits the step cap") {
    PropertyGraph graph;
    graph.add_vertex("p1", {"Person"}, {});
    ChaseState state = init_chase(graph);
    ChaseOutcome outcome = run_chase(state, self_generating(), 100);
    CHECK(outcome.verdict == ChaseOutcome::Verdict::StepCapExceeded);
    CHECK(outcome.steps == 100);
}

TEST_CASE("empty rule set terminates immediately") {
    PropertyGraph graph;
    graph.add_vertex("p1", {"Person"}, {});
    ChaseState state = init_chase(graph);
    ChaseOutcome outcome = run_chase(state, GgdSet{}, kDefaultStepCap);
    CHECK(outcome.verdict == ChaseOutcome::Verdict::TerminatedValid);
    CHECK(outcome.steps == 0);
}

TEST_CASE("model extraction synthesizes values satisfying the classes") {
    PropertyGraph graph;
    ChaseState state = init_chase(graph);
    ObjectId v = state.graph.create_object(ObjectKind::Vertex, {"activity"}, {});
    state.register_object(v, true);
    state.fold(v, "load",
               Rcq::bound(DistanceFn::AbsDiff, Term::constant_of(Value(std::int64_t{10})),
                          CompareOp::Le, 4));
    state.fold(v, "kind",
               Rcq::bound(DistanceFn::Edit, Term::constant_of(Value("lecture")),
                          CompareOp::Eq, 2));
    state.fold(v, "tags",
               Rcq::bound(DistanceFn::Jaccard, Term::constant_of(Value("a b")),
                          CompareOp::Le, 0.5));
    PropertyGraph model = extract_model(state);
    const GraphObject* object = model.find_vertex(v);
    REQUIRE(object != nullptr);
    REQUIRE(object->visible_property("load") != nullptr);
    CHECK(std::abs(object->visible_property("load")->number() - 10.0) <= 4.0);
    REQUIRE(object->visible_property("kind") != nullptr);
    CHECK(edit_distance(object->visible_property("kind")->text(), "lecture") == 2);
    REQUIRE(object->visible_property("tags") != nullptr);
    CHECK(jaccard_distance(object->visible_property("tags")->text(), "a b") <= 0.5);
}
