#pragma once

#include <random>
#include <string>
#include <vector>

#include "ggdr/eval.hpp"
#include "ggdr/ggd.hpp"
#include "ggdr/graph.hpp"
#include "ggdr/matcher.hpp"
#include "ggdr/parser.hpp"

namespace ggdr::test {

inline Ggd parse_one(const std::string& text) {
    GgdSet set = parse_ggds(text);
    return set.ggds.at(0);
}

inline std::vector<Constraint> parse_where(const std::string& pattern,
                                           const std::string& constraints) {
    Ggd ggd = parse_one("ggd tmp { source { " + pattern + " } where { " + constraints +
                        " } target { " + pattern + " } having { } }");
    return ggd.source_where;
}

/// Small seeded random graphs for oracle-equivalence runs.
inline PropertyGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices,
                                  std::size_t max_edges) {
    static const std::vector<std::string> vlabels = {"Person", "Company", "Place"};
    static const std::vector<std::string> elabels = {"knows", "worksAt", "near"};
    static const std::vector<std::string> names = {"ann", "bob", "carol", "dan", "ann smith"};
    PropertyGraph graph;
    const std::size_t n = 1 + rng() % max_vertices;
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::string, Value> props;
        if (rng() % 4 != 0) props.emplace("name", Value(names[rng() % names.size()]));
        if (rng() % 3 != 0) props.emplace("age", Value(static_cast<std::int64_t>(rng() % 60)));
        graph.add_vertex("v" + std::to_string(i), {vlabels[rng() % vlabels.size()]},
                         std::move(props));
    }
    const std::size_t m = rng() % (max_edges + 1);
    for (std::size_t i = 0; i < m; ++i) {
        std::map<std::string, Value> props;
        if (rng() % 2 == 0) {
            props.emplace("since", Value(static_cast<std::int64_t>(1990 + rng() % 30)));
        }
        graph.add_edge("e" + std::to_string(i), "v" + std::to_string(rng() % n),
                       "v" + std::to_string(rng() % n), {elabels[rng() % elabels.size()]},
                       std::move(props));
    }
    return graph;
}

/// Random small patterns (<= 4 variables) over the same alphabet.
inline GraphPattern random_pattern(std::mt19937_64& rng) {
    static const std::vector<std::string> vlabels = {"Person", "Company", "Place", "-"};
    static const std::vector<std::string> elabels = {"knows", "worksAt", "near", "-"};
    GraphPattern pattern;
    const std::size_t vertices = 1 + rng() % 2;
    for (std::size_t i = 0; i < vertices; ++i) {
        pattern.vertices.push_back({"x" + std::to_string(i), vlabels[rng() % vlabels.size()]});
    }
    const std::size_t edges = rng() % (5 - vertices - 1);
    for (std::size_t i = 0; i < edges; ++i) {
        pattern.edges.push_back({"e" + std::to_string(i), elabels[rng() % elabels.size()],
                                 "x" + std::to_string(rng() % vertices),
                                 "x" + std::to_string(rng() % vertices)});
    }
    return pattern;
}

inline std::vector<Constraint> random_constraints(std::mt19937_64& rng,
                                                  const GraphPattern& pattern) {
    std::vector<Constraint> out;
    if (rng() % 3 == 0) return out;
    const auto vertex_count = pattern.vertices.size();
    const std::string var = "x" + std::to_string(rng() % vertex_count);
    switch (rng() % 4) {
        case 0:
            out.push_back(Constraint::dist(DistanceFn::Edit, Term::attr(var, "name"),
                                           Term::constant_of(Value("ann")), CompareOp::Le,
                                           static_cast<double>(rng() % 5)));
            break;
        case 1:
            out.push_back(Constraint::dist(DistanceFn::AbsDiff, Term::attr(var, "age"),
                                           Term::constant_of(Value(static_cast<std::int64_t>(
                                               20 + rng() % 20))),
                                           rng() % 2 ? CompareOp::Le : CompareOp::Gt,
                                           static_cast<double>(rng() % 15)));
            break;
        case 2:
            if (vertex_count > 1) {
                out.push_back(Constraint::dist(DistanceFn::Jaccard, Term::attr("x0", "name"),
                                               Term::attr("x1", "name"), CompareOp::Le,
                                               0.25 * static_cast<double>(rng() % 5)));
            }
            break;
        default:
            if (vertex_count > 1) {
                out.push_back(Constraint::ident(rng() % 2 == 0, "x0", "x1"));
            }
            break;
    }
    return out;
}

}  // namespace ggdr::test
