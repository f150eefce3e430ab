#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ggdr/ggd.hpp"
#include "ggdr/graph.hpp"
#include "ggdr/matcher.hpp"

namespace ggdr {

enum class PlanKind { Anti, Outer };

const char* to_string(PlanKind plan);

struct ViolationReport {
    std::string ggd;
    PlanKind plan = PlanKind::Anti;
    std::size_t source_matches = 0;
    std::vector<Match> violated;  // over the source variables only
    double ms = 0.0;

    bool valid() const { return violated.empty(); }
};

/// True iff every constrained source match has a target extension
/// satisfying the having-constraints. Short-circuits on the first
/// violation.
bool validate_ggd(const PropertyGraph& graph, const Ggd& ggd);

/// Violated source matches via one of two equivalent join plans.
/// Anti: target matches filtered by target-only constraints, inner join
/// to sources on the shared variables, mixed constraints after the join,
/// then an anti join back to the sources. Outer: every source row outer
/// joined to the targets; a source is violated when no partner row
/// satisfies the full constraint set (or no partner exists).
ViolationReport find_violations(const PropertyGraph& graph, const Ggd& ggd, PlanKind plan);

/// find_violations per GGD in declaration order; `workers` > 1 runs the
/// per-GGD validations concurrently and merges reports in input order.
std::vector<ViolationReport> validate_set(const PropertyGraph& graph, const GgdSet& set,
                                          PlanKind plan, std::size_t workers = 1);

}  // namespace ggdr
