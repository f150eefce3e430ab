#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ggdr/eval.hpp"
#include "ggdr/ggd.hpp"
#include "ggdr/graph.hpp"

namespace ggdr {

/// Deterministically ordered, duplicate-free set of matches.
struct MatchSet {
    std::vector<Match> matches;

    std::size_t size() const { return matches.size(); }
    bool empty() const { return matches.empty(); }
    void normalize();
};

struct Plan {
    struct Component {
        std::vector<std::string> vars;
        std::vector<std::string> steps;  // human-readable search order
    };
    struct Join {
        enum class Kind { Similarity, Filter, Cross };
        Kind kind = Kind::Cross;
        std::size_t component = 0;  // index into components
        std::vector<Constraint> constraints;
    };

    std::vector<Component> components;
    std::vector<Join> joins;
    std::vector<Constraint> residual;  // applied after all joins
    std::vector<std::string> warnings;

    std::string to_text() const;
};

struct MatchOptions {
    bool use_similarity_join = true;
    std::size_t brute_force_guard = 10'000'000;
};

/// Decomposes the pattern into connected components, orders the search
/// greedily by ascending label frequency, and picks pairwise join
/// operators: a similarity join where a constraint links two components,
/// otherwise a cross product with immediate filtering.
Plan plan_pattern(const PropertyGraph& graph, const GraphPattern& pattern,
                  const std::vector<Constraint>& constraints);

/// All homomorphisms of `pattern` into `graph` satisfying `constraints`.
MatchSet match_pattern(const PropertyGraph& graph, const GraphPattern& pattern,
                       const std::vector<Constraint>& constraints,
                       const MatchOptions& options = {});

/// Target matches extending a source match: agree with `source_match` on
/// every shared variable. Applies target labels/topology always; applies
/// the GGD's having-constraints only when `apply_target_constraints`.
MatchSet extend_match(const PropertyGraph& graph, const Ggd& ggd, const Match& source_match,
                      bool apply_target_constraints, const MatchOptions& options = {});

/// Test oracle: checks every assignment of pattern variables to graph
/// objects. Refuses when the assignment space exceeds the guard.
MatchSet brute_force_match(const PropertyGraph& graph, const GraphPattern& pattern,
                           const std::vector<Constraint>& constraints,
                           const MatchOptions& options = {});

}  // namespace ggdr
