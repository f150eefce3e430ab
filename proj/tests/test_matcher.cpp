#include <random>

#include "doctest.h"
#include "ggdr/error.hpp"
#include "ggdr/matcher.hpp"
#include "ggdr/parser.hpp"
#include "testutil.hpp"

using namespace ggdr;

namespace {

PropertyGraph work_graph() {
    PropertyGraph graph;
    graph.add_vertex("p1", {"Person"}, {{"name", Value("ann")}});
    graph.add_vertex("p2", {"Person"}, {{"name", Value("bob")}});
    graph.add_vertex("c1", {"Company"}, {{"name", Value("acme inc")}});
    graph.add_edge("w1", "p1", "c1", {"worksAt"}, {});
    graph.add_edge("w2", "p2", "c1", {"worksAt"}, {});
    return graph;
}

GraphPattern pattern_of(const std::string& text) {
    return test::parse_one("ggd tmp { source { " + text + " } where { } target { " + text +
                           " } having { } }")
        .source;
}

}  // namespace

TEST_CASE("wildcard vertex pattern enumerates all vertices") {
    PropertyGraph graph = work_graph();
    GraphPattern pattern = pattern_of("(x:-)");
    MatchSet matches = match_pattern(graph, pattern, {});
    CHECK(matches.size() == graph.vertex_count());
}

TEST_CASE("two people working at one company yield two matches") {
    PropertyGraph graph = work_graph();
    GraphPattern pattern = pattern_of("(x:Person), (x)-[e:worksAt]->(c:Company)");
    MatchSet matches = match_pattern(graph, pattern, {});
    MatchSet oracle = brute_force_match(graph, pattern, {});
    CHECK(matches.size() == 2);
    CHECK(matches.matches == oracle.matches);
}

TEST_CASE("infeasible constraints produce the empty match set") {
    PropertyGraph graph = work_graph();
    GraphPattern pattern = pattern_of("(x:Person)");
    auto where = test::parse_where("(x:Person)",
                                   "absdiff(x.age, 10) > 5; absdiff(x.age, 10) < 5;");
    CHECK(match_pattern(graph, pattern, where).empty());
}

TEST_CASE("homomorphisms are non-injective") {
    // a triangle pattern maps into a 2-cycle zero times but collapses
    // into a triangle graph by variable permutation
    PropertyGraph two_cycle;
    two_cycle.add_vertex("a", {"N"}, {});
    two_cycle.add_vertex("b", {"N"}, {});
    two_cycle.add_edge("e1", "a", "b", {"t"}, {});
    two_cycle.add_edge("e2", "b", "a", {"t"}, {});

    PropertyGraph triangle;
    triangle.add_vertex("a", {"N"}, {});
    triangle.add_vertex("b", {"N"}, {});
    triangle.add_vertex("c", {"N"}, {});
    triangle.add_edge("e1", "a", "b", {"t"}, {});
    triangle.add_edge("e2", "b", "c", {"t"}, {});
    triangle.add_edge("e3", "c", "a", {"t"}, {});

    GraphPattern pattern =
        pattern_of("(x:N), (y:N), (z:N), (x)-[d1:t]->(y), (y)-[d2:t]->(z), (z)-[d3:t]->(x)");
    MatchSet in_cycle = brute_force_match(two_cycle, pattern, {});
    CHECK(in_cycle.empty());
    CHECK(match_pattern(two_cycle, pattern, {}).empty());

    MatchSet in_triangle = brute_force_match(triangle, pattern, {});
    CHECK(in_triangle.size() == 3);  // three rotations, orientation fixed
    CHECK(match_pattern(triangle, pattern, {}).matches == in_triangle.matches);
}

TEST_CASE("brute force guard refuses oversized assignment spaces") {
    PropertyGraph graph;
    for (int i = 0; i < 200; ++i) {
        graph.add_vertex("v" + std::to_string(i), {"N"}, {});
    }
    GraphPattern pattern = pattern_of("(a:N), (b:N), (c:N), (d:N)");
    MatchOptions options;
    options.brute_force_guard = 1000;
    CHECK_THROWS_AS(brute_force_match(graph, pattern, {}, options), GuardError);
}

TEST_CASE("empty graph matches nothing") {
    PropertyGraph graph;
    GraphPattern pattern = pattern_of("(x:Person)");
    CHECK(brute_force_match(graph, pattern, {}).empty());
    CHECK(match_pattern(graph, pattern, {}).empty());
}

TEST_CASE("extend_match agrees with the source on shared variables") {
    PropertyGraph graph = work_graph();
    Ggd ggd = test::parse_one(R"(
      ggd needs_same_as {
        source { (x:Person), (y:Person), (x)-[e1:worksAt]->(c:Company), (y)-[e2:worksAt]->(c) }
        where { x != y; }
        target { (x:Person), (y:Person), (x)-[s:sameAs]->(y) }
        having { }
      })");
    MatchSet sources = match_pattern(graph, ggd.source, ggd.source_where);
    CHECK(sources.size() == 2);  // (p1,p2) and (p2,p1)
    // no sameAs edge exists: every extension is empty
    for (const auto& h : sources.matches) {
        CHECK(extend_match(graph, ggd, h, true).empty());
    }

    // identical target: the only extension is the source match itself
    Ggd same = test::parse_one(R"(
      ggd same {
        source { (x:Person), (x)-[e:worksAt]->(c:Company) }
        where { }
        target { (x:Person), (x)-[e:worksAt]->(c:Company) }
        having { }
      })");
    MatchSet src = match_pattern(graph, same.source, {});
    for (const auto& h : src.matches) {
        MatchSet ext = extend_match(graph, same, h, true);
        REQUIRE(ext.size() == 1);
        CHECK(ext.matches[0] == h);
    }
}

TEST_CASE("extend_match with two distinct extensions") {
    PropertyGraph graph = work_graph();
    graph.add_vertex("p3", {"Person"}, {});
    graph.add_edge("k1", "p1", "p2", {"knows"}, {});
    graph.add_edge("k2", "p1", "p3", {"knows"}, {});
    Ggd ggd = test::parse_one(R"(
      ggd knows_someone {
        source { (x:Person), (x)-[e:worksAt]->(c:Company) }
        where { }
        target { (x:Person), (x)-[k:knows]->(y:Person) }
        having { }
      })");
    Match h{{{"x", "p1"}, {"e", "w1"}, {"c", "c1"}}};
    MatchSet ext = extend_match(graph, ggd, h, true);
    CHECK(ext.size() == 2);
}

TEST_CASE("oracle equivalence on random graphs and patterns") {
    std::mt19937_64 rng(2024);
    for (int seed = 0; seed < 60; ++seed) {
        PropertyGraph graph = test::random_graph(rng, 10, 16);
        for (int p = 0; p < 5; ++p) {
            GraphPattern pattern = test::random_pattern(rng);
            auto constraints = test::random_constraints(rng, pattern);
            MatchSet fast = match_pattern(graph, pattern, constraints);
            MatchSet slow = brute_force_match(graph, pattern, constraints);
            REQUIRE_MESSAGE(fast.matches == slow.matches,
                            "seed " << seed << " pattern " << to_text(pattern));
        }
    }
}

TEST_CASE("adding a constraint never enlarges the match set") {
    std::mt19937_64 rng(77);
    for (int seed = 0; seed < 40; ++seed) {
        PropertyGraph graph = test::random_graph(rng, 10, 14);
        GraphPattern pattern = test::random_pattern(rng);
        auto base = test::random_constraints(rng, pattern);
        auto extra = test::random_constraints(rng, pattern);
        auto both = base;
        both.insert(both.end(), extra.begin(), extra.end());
        MatchSet small = match_pattern(graph, pattern, both);
        MatchSet large = match_pattern(graph, pattern, base);
        for (const auto& m : small.matches) {
            CHECK(std::find(large.matches.begin(), large.matches.end(), m) !=
                  large.matches.end());
        }
    }
}

TEST_CASE("raising a <= threshold grows the match set monotonically") {
    std::mt19937_64 rng(99);
    PropertyGraph graph = test::random_graph(rng, 12, 20);
    GraphPattern pattern = pattern_of("(x0:Person)");
    std::size_t previous = 0;
    for (double t : {0.0, 1.0, 2.0, 4.0, 8.0}) {
        auto c = Constraint::dist(DistanceFn::Edit, Term::attr("x0", "name"),
                                  Term::constant_of(Value("ann")), CompareOp::Le, t);
        MatchSet matches = match_pattern(graph, pattern, {c});
        CHECK(matches.size() >= previous);
        previous = matches.size();
    }
}

TEST_CASE("similarity join equals the nested loop on disconnected patterns") {
    std::mt19937_64 rng(4242);
    for (int seed = 0; seed < 30; ++seed) {
        PropertyGraph graph = test::random_graph(rng, 10, 10);
        GraphPattern pattern = pattern_of("(x0:Person), (x1:Company)");
        for (auto fn : {DistanceFn::Edit, DistanceFn::Jaccard}) {
            const double t = fn == DistanceFn::Edit
                                 ? static_cast<double>(rng() % 6)
                                 : 0.25 * static_cast<double>(rng() % 5);
            auto link = Constraint::dist(fn, Term::attr("x0", "name"),
                                         Term::attr("x1", "name"), CompareOp::Le, t);
            MatchOptions accelerated;
            MatchOptions naive;
            naive.use_similarity_join = false;
            MatchSet a = match_pattern(graph, pattern, {link}, accelerated);
            MatchSet b = match_pattern(graph, pattern, {link}, naive);
            MatchSet oracle = brute_force_match(graph, pattern, {link});
            CHECK(a.matches == oracle.matches);
            CHECK(b.matches == oracle.matches);
        }
    }
}

TEST_CASE("plans: connected, similarity-linked, and cross product") {
    PropertyGraph graph = work_graph();

    GraphPattern connected = pattern_of("(x:Person), (x)-[e:worksAt]->(c:Company)");
    Plan p1 = plan_pattern(graph, connected, {});
    CHECK(p1.components.size() == 1);
    CHECK(p1.joins.empty());
    CHECK(p1.warnings.empty());

    GraphPattern disconnected = pattern_of("(x:Person), (y:Company)");
    auto link = Constraint::dist(DistanceFn::Edit, Term::attr("x", "name"),
                                 Term::attr("y", "name"), CompareOp::Le, 3);
    Plan p2 = plan_pattern(graph, disconnected, {link});
    REQUIRE(p2.joins.size() == 1);
    CHECK(p2.joins[0].kind == Plan::Join::Kind::Similarity);
    CHECK(p2.warnings.empty());

    Plan p3 = plan_pattern(graph, disconnected, {});
    REQUIRE(p3.joins.size() == 1);
    CHECK(p3.joins[0].kind == Plan::Join::Kind::Cross);
    CHECK_FALSE(p3.warnings.empty());

    // the plan dump mentions the join strategy
    CHECK(p2.to_text().find("similarity join") != std::string::npos);
}

TEST_CASE("deterministic order: lexicographic by variable-sorted bound ids") {
    PropertyGraph graph = work_graph();
    GraphPattern pattern = pattern_of("(x:Person)");
    MatchSet matches = match_pattern(graph, pattern, {});
    REQUIRE(matches.size() == 2);
    CHECK(matches.matches[0].binding.at("x") == "p1");
    CHECK(matches.matches[1].binding.at("x") == "p2");
}
