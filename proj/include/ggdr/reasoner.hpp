#pragma once

#include <map>
#include <string>
#include <vector>

#include "ggdr/chase.hpp"
#include "ggdr/ggd.hpp"
#include "ggdr/graph.hpp"

namespace ggdr {

/// Maximal common sub-pattern: a sub-pattern of the left input (labels
/// taken from the left) plus a homomorphic mapping into the right input.
/// Vertex/edge pairs must have compatible labels and mutually feasible
/// constraints.
struct Intersection {
    GraphPattern pattern;
    VarMap mapping;  // left variable -> right variable

    bool empty() const { return pattern.vertices.empty() && pattern.edges.empty(); }
};

/// Exact branch-and-bound search; refuses patterns whose search space
/// exceeds the guard.
Intersection intersect_patterns(const GraphPattern& left,
                                const std::vector<Constraint>& left_constraints,
                                const GraphPattern& right,
                                const std::vector<Constraint>& right_constraints,
                                std::size_t guard = 200'000);

enum class InteractionSide { Source, Target, TargetSource };

/// Source/target: the chosen sides of the two rules can overlap on some
/// data. TargetSource: what `b` enforces can trigger `a` (`a` is
/// transitive given `b`).
bool interacts(const Ggd& a, const Ggd& b, InteractionSide side);

/// One interacting image of every source pattern, with range classes
/// seeded from the where-constraints.
struct CanonicalGraph {
    ChaseState state;
    std::map<std::string, Match> source_images;  // ggd name -> seed binding
};

CanonicalGraph build_canonical_graph(const GgdSet& set);

/// Single source-pattern image of one rule, seeded the same way.
CanonicalGraph build_closure_graph(const Ggd& ggd);

struct SatResult {
    enum class Verdict { Satisfiable, Unsatisfiable, Unknown };
    Verdict verdict = Verdict::Unknown;
    PropertyGraph witness;  // model extracted on Satisfiable
    std::string detail;
    std::size_t steps = 0;
};

SatResult check_satisfiability(const GgdSet& set, std::size_t step_cap = kDefaultStepCap);

struct ImplicationResult {
    enum class Verdict { Implied, NotImplied, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::string detail;
    std::size_t steps = 0;
};

/// Chases the closure graph of `ggd`'s source with `set`, then tests
/// whether some target extension of the seed image has every
/// having-constraint guaranteed by the accumulated range classes.
ImplicationResult check_implication(const GgdSet& set, const Ggd& ggd,
                                    std::size_t step_cap = kDefaultStepCap);

/// Dependency graph over (label, property) positions; the empty key ""
/// stands for the entity itself. Special edges run from every source
/// position to the positions of target-only variables.
struct DependencyGraph {
    struct Node {
        std::string label;
        std::string key;
        bool operator<(const Node& other) const {
            return std::tie(label, key) < std::tie(other.label, other.key);
        }
        std::string to_text() const { return key.empty() ? label : label + "." + key; }
    };
    struct Edge {
        std::size_t from = 0;
        std::size_t to = 0;
        bool special = false;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    bool weakly_acyclic = true;

    std::string to_dot() const;
};

/// Weakly acyclic iff no cycle passes through a special edge; guarantees
/// Chase termination.
DependencyGraph build_dependency_graph(const GgdSet& set);
bool is_weakly_acyclic(const GgdSet& set);

}  // namespace ggdr
