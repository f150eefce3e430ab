#include <random>

#include "doctest.h"
#include "ggdr/error.hpp"
#include "ggdr/parser.hpp"
#include "ggdr/reasoner.hpp"
#include "ggdr/validator.hpp"
#include "testutil.hpp"

using namespace ggdr;

namespace {

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

/// Conflicting enforcements on the same shared target object: the two
/// rules' target constraints are disjoint on b.budget.
GgdSet conflicting_pair() {
    return parse_ggds(R"(
      ggd wants_large_budget {
        source { (b:project), (b)-[a:managedBy]->(c:employee) }
        where { }
        target { (b:project), (c:employee), (b)-[x:managedBy]->(c) }
        having { absdiff(b.budget, 100) > 10; }
      }
      ggd wants_small_budget {
        source { (l:project), (l)-[k:managedBy]->(m:employee), (l)-[y:includes]->(n:course) }
        where { }
        target { (b:project), (c:employee), (b)-[x:managedBy]->(c) }
        having { absdiff(b.budget, 100) <= 10; }
      })");
}

GgdSet implication_example() {
    return parse_ggds(R"(
      ggd year_rule {
        source { (s:student), (s)-[e:enrolledIn]->(c:course) }
        where { absdiff(s.year, 2015) > 2; }
        target { (s:student), (c:course), (c)-[h:hasActivity]->(la:activity) }
        having { absdiff(la.load, 10) <= 4; }
      }
      ggd act_rule {
        source { (s:student), (s)-[e:enrolledIn]->(c:course) }
        where { }
        target { (s:student), (c:course), (c)-[h:hasActivity]->(la:activity) }
        having { absdiff(la.load, 10) <= 6; }
      })");
}

Ggd candidate_with(double threshold) {
    return test::parse_one(
        "ggd candidate {\n"
        "  source { (s:student), (s)-[e:enrolledIn]->(c:course) }\n"
        "  where { }\n"
        "  target { (s:student), (c:course), (c)-[h:hasActivity]->(la:activity) }\n"
        "  having { absdiff(la.load, 10) <= " +
        std::to_string(threshold) + "; }\n}\n");
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

/// Random graphs valid under implication_example() by construction.
PropertyGraph random_valid_graph(std::mt19937_64& rng) {
    PropertyGraph graph;
    const std::size_t instances = 1 + rng() % 4;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::string suffix = std::to_string(i);
        const auto delta = static_cast<std::int64_t>(rng() % 11) - 5;  // year offset
        graph.add_vertex("s" + suffix, {"student"},
                         {{"year", Value(2015 + delta)}});
        graph.add_vertex("c" + suffix, {"course"}, {});
        graph.add_vertex("la" + suffix, {"activity"}, {});
        graph.add_edge("e" + suffix, "s" + suffix, "c" + suffix, {"enrolledIn"}, {});
        graph.add_edge("h" + suffix, "c" + suffix, "la" + suffix, {"hasActivity"}, {});
        const double bound = (delta > 2 || delta < -2) ? 4.0 : 6.0;
        const double load_offset =
            (static_cast<double>(rng() % 200) / 100.0 - 1.0) * bound;
        graph.add_vertex("noise" + suffix, {"Place"}, {});
        graph.set_property("la" + suffix, "load", Value(10.0 + load_offset));
    }
    return graph;
}

}  // namespace

TEST_CASE("intersection: shared project vertex, disjoint alphabets, self") {
    GgdSet pair = transitive_pair();
    const Ggd& assign = pair.ggds[0];
    const Ggd& course = pair.ggds[1];

    // sources share employee and project vertices but no edge
    Intersection common = intersect_patterns(assign.source, assign.source_where,
                                             course.source, course.source_where);
    CHECK(common.pattern.vertices.size() == 2);
    CHECK(common.pattern.edges.empty());
    CHECK(interacts(assign, course, InteractionSide::Source));
    CHECK(interacts(course, assign, InteractionSide::Source));

    // what assign_rule enforces can trigger course_rule
    CHECK(interacts(course, assign, InteractionSide::TargetSource));

    // every rule interacts with itself on every side
    CHECK(interacts(assign, assign, InteractionSide::Source));
    CHECK(interacts(assign, assign, InteractionSide::Target));

    // disjoint label alphabets never interact
    Ggd place = test::parse_one(R"(
      ggd place_rule {
        source { (p:Person) }
        where { }
        target { (p:Person), (p)-[l:isLocatedIn]->(q:Place) }
        having { }
      })");
    CHECK_FALSE(interacts(place, assign, InteractionSide::Source));
    Intersection empty_common = intersect_patterns(place.source, {}, assign.source, {});
    CHECK(empty_common.empty());
}

TEST_CASE("intersection excludes vertices with mutually infeasible constraints") {
    GraphPattern left;
    left.vertices.push_back({"u", "student"});
    GraphPattern right;
    right.vertices.push_back({"v", "student"});
    auto gt5 = Constraint::dist(DistanceFn::AbsDiff, Term::attr("u", "year"),
                                Term::constant_of(Value(std::int64_t{2015})), CompareOp::Gt, 5);
    auto lt5 = Constraint::dist(DistanceFn::AbsDiff, Term::attr("v", "year"),
                                Term::constant_of(Value(std::int64_t{2015})), CompareOp::Lt, 5);
    CHECK_FALSE(intersect_patterns(left, {}, right, {}).empty());
    CHECK(intersect_patterns(left, {gt5}, right, {lt5}).empty());
}

TEST_CASE("intersection respects edge endpoints under homomorphism") {
    // a->b edge cannot map onto b->a
    GraphPattern forward;
    forward.vertices.push_back({"a", "N"});
    forward.vertices.push_back({"b", "M"});
    forward.edges.push_back({"e", "t", "a", "b"});
    GraphPattern backward;
    backward.vertices.push_back({"x", "M"});
    backward.vertices.push_back({"y", "N"});
    backward.edges.push_back({"f", "t", "x", "y"});
    Intersection common = intersect_patterns(forward, {}, backward, {});
    CHECK(common.pattern.edges.empty());  // vertices map, the edge cannot
    CHECK(common.pattern.vertices.size() == 2);
}

TEST_CASE("canonical graph: single rule, interaction sharing, disjoint union") {
    // single rule: exactly its source image
    GgdSet single;
    single.ggds.push_back(test::parse_one(R"(
      ggd years {
        source { (s:student) }
        where { absdiff(s.year, 2015) > 2; }
        target { (s:student) }
        having { }
      })"));
    CanonicalGraph g1 = build_canonical_graph(single);
    CHECK(g1.state.graph.vertex_count() == 1);
    const Match& image = g1.source_images.at("years");
    const AttrClass* year = g1.state.attr_class(image.binding.at("s"), "year");
    REQUIRE(year != nullptr);
    CHECK(year->rcqs.size() == 1);
    CHECK(year->rcqs[0].op == CompareOp::Gt);

    // interacting rules share their overlap
    CanonicalGraph g2 = build_canonical_graph(transitive_pair());
    CHECK(g2.state.graph.vertex_count() == 2);  // employee and project shared
    CHECK(g2.state.graph.edge_count() == 2);    // worksAt + assignedTo

    // non-interacting rules stay disjoint
    GgdSet disjoint = parse_ggds(R"(
      ggd a { source { (p:Person) } where { } target { (p:Person) } having { } }
      ggd b { source { (q:Place) } where { } target { (q:Place) } having { } }
    )");
    CanonicalGraph g3 = build_canonical_graph(disjoint);
    CHECK(g3.state.graph.vertex_count() == 2);
}

TEST_CASE("satisfiability: disjoint target constraints on a shared image") {
    SatResult result = check_satisfiability(conflicting_pair());
    CHECK(result.verdict == SatResult::Verdict::Unsatisfiable);
    CHECK_FALSE(result.detail.empty());
}

TEST_CASE("satisfiability: feasible weakly-acyclic sets give a validating witness") {
    GgdSet pair = transitive_pair();
    REQUIRE(is_weakly_acyclic(pair));
    SatResult result = check_satisfiability(pair);
    REQUIRE(result.verdict == SatResult::Verdict::Satisfiable);
    // every source pattern has a match in the witness
    for (const auto& ggd : pair.ggds) {
        CHECK_FALSE(match_pattern(result.witness, ggd.source, ggd.source_where).empty());
    }
    // and the witness is a model of the set
    for (const auto& report : validate_set(result.witness, pair, PlanKind::Anti)) {
        CHECK(report.valid());
    }
}

TEST_CASE("satisfiability: infeasible source constraints reject immediately") {
    GgdSet set = parse_ggds(R"(
      ggd impossible {
        source { (s:worker) }
        where { absdiff(s.hours, 10) > 5; absdiff(s.hours, 10) < 5; }
        target { (s:worker) }
        having { }
      })");
    SatResult result = check_satisfiability(set);
    CHECK(result.verdict == SatResult::Verdict::Unsatisfiable);
}

TEST_CASE("satisfiability: non-terminating chase surfaces as Unknown") {
    SatResult result = check_satisfiability(self_generating(), 100);
    CHECK(result.verdict == SatResult::Verdict::Unknown);
}

TEST_CASE("weak acyclicity: no existential variables, cycles, transitive pair") {
    CHECK(is_weakly_acyclic(GgdSet{}));

    GgdSet no_existential = parse_ggds(R"(
      ggd plain {
        source { (x:Person), (y:Person), (x)-[k:knows]->(y) }
        where { }
        target { (x:Person), (y:Person), (x)-[k:knows]->(y) }
        having { absdiff(x.age, y.age) <= 3; }
      })");
    CHECK(is_weakly_acyclic(no_existential));

    DependencyGraph cyclic = build_dependency_graph(self_generating());
    CHECK_FALSE(cyclic.weakly_acyclic);
    // one special self-loop on the Person position
    bool special_self_loop = false;
    for (const auto& e : cyclic.edges) {
        if (e.special && e.from == e.to) special_self_loop = true;
    }
    CHECK(special_self_loop);
    CHECK(cyclic.to_dot().find("digraph") == 0);

    CHECK(is_weakly_acyclic(transitive_pair()));
    CHECK(is_weakly_acyclic(implication_example()));
}

TEST_CASE("closure graph: empty seeding and infeasible preconditions") {
    GgdSet impl = implication_example();
    Ggd candidate = candidate_with(8.0);
    CanonicalGraph closure = build_closure_graph(candidate);
    CHECK(closure.state.graph.vertex_count() == 2);
    CHECK(closure.state.graph.edge_count() == 1);
    // empty where-block: every range class starts empty
    CHECK(closure.state.attr_classes().empty());

    Ggd bad = test::parse_one(R"(
      ggd bad {
        source { (s:worker) }
        where { absdiff(s.hours, 10) > 5; absdiff(s.hours, 10) < 5; }
        target { (s:worker) }
        having { }
      })");
    CHECK_THROWS_AS(build_closure_graph(bad), IntegrityError);
    (void)impl;
}

TEST_CASE("implication: enforced bounds subsume the candidate's constraints") {
    GgdSet sigma = implication_example();
    ImplicationResult loose = check_implication(sigma, candidate_with(8.0));
    CHECK(loose.verdict == ImplicationResult::Verdict::Implied);

    // tightening below what the set enforces flips the verdict
    ImplicationResult tight = check_implication(sigma, candidate_with(5.0));
    CHECK(tight.verdict == ImplicationResult::Verdict::NotImplied);

    // the boundary case still holds
    ImplicationResult exact = check_implication(sigma, candidate_with(6.0));
    CHECK(exact.verdict == ImplicationResult::Verdict::Implied);
}

TEST_CASE("implication: transitive rules deduce the composed rule") {
    GgdSet sigma = transitive_pair();
    Ggd composed = test::parse_one(R"(
      ggd composed {
        source { (e:employee), (e)-[w:worksAt]->(p:project) }
        where { }
        target { (e:employee), (p:project), (e)-[a:assignedTo]->(p),
                 (p)-[h:includes]->(c:course) }
        having { absdiff(c.duration, 5) <= 2; }
      })");
    ImplicationResult result = check_implication(sigma, composed);
    CHECK(result.verdict == ImplicationResult::Verdict::Implied);

    Ggd too_tight = test::parse_one(R"(
      ggd too_tight {
        source { (e:employee), (e)-[w:worksAt]->(p:project) }
        where { }
        target { (e:employee), (p:project), (e)-[a:assignedTo]->(p),
                 (p)-[h:includes]->(c:course) }
        having { absdiff(c.duration, 5) <= 0.5; }
      })");
    CHECK(check_implication(sigma, too_tight).verdict ==
          ImplicationResult::Verdict::NotImplied);
}

TEST_CASE("implication: empty set implies nothing with a real target") {
    GgdSet empty;
    ImplicationResult result = check_implication(empty, candidate_with(8.0));
    CHECK(result.verdict == ImplicationResult::Verdict::NotImplied);
}

TEST_CASE("implication semantic cross-check on random valid graphs") {
    GgdSet sigma = implication_example();
    Ggd implied = candidate_with(8.0);
    REQUIRE(check_implication(sigma, implied).verdict ==
            ImplicationResult::Verdict::Implied);
    std::mt19937_64 rng(777);
    for (int seed = 0; seed < 50; ++seed) {
        PropertyGraph graph = random_valid_graph(rng);
        for (const auto& report : validate_set(graph, sigma, PlanKind::Anti)) {
            REQUIRE_MESSAGE(report.valid(), "fixture must satisfy the rule set");
        }
        CHECK_MESSAGE(validate_ggd(graph, implied), "counterexample at seed " << seed);
    }

    // a Sigma-valid graph violating the tightened candidate exists
    Ggd tightened = candidate_with(5.0);
    PropertyGraph counter;
    counter.add_vertex("s0", {"student"}, {{"year", Value(std::int64_t{2015})}});
    counter.add_vertex("c0", {"course"}, {});
    counter.add_vertex("la0", {"activity"}, {{"load", Value(15.5)}});
    counter.add_edge("e0", "s0", "c0", {"enrolledIn"}, {});
    counter.add_edge("h0", "c0", "la0", {"hasActivity"}, {});
    for (const auto& report : validate_set(counter, sigma, PlanKind::Anti)) {
        REQUIRE(report.valid());
    }
    CHECK_FALSE(validate_ggd(counter, tightened));
}
