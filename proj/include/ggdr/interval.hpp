#pragma once

#include <limits>
#include <vector>

#include "ggdr/distance.hpp"

namespace ggdr {

enum class CompareOp { Lt, Gt, Le, Ge, Eq, Ne };

const char* to_string(CompareOp op);

/// Tolerance used when comparing real-valued distances with = / !=.
/// Integer-valued distances (edit, eq, absdiff over two integers) use
/// exact comparison.
inline constexpr double kFloatEqTolerance = 1e-9;

bool compare_distance(double dist, CompareOp op, double threshold, bool integral);

/// A set of admissible distances: a sub-interval of [0, +inf) with
/// optional open endpoints, minus finitely many punched-out points
/// (from != constraints).
struct DistInterval {
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    double lo = 0.0;
    double hi = kInf;
    bool lo_open = false;
    bool hi_open = false;
    std::vector<double> holes;

    static DistInterval everything() { return {}; }
    static DistInterval of(CompareOp op, double threshold);

    DistInterval intersect(const DistInterval& other) const;
    bool contains(double value) const;

    /// Emptiness over the given distance domain; integrality of edit/eq
    /// distances matters here ({edit > 1, edit < 2} is infeasible).
    bool empty(DistanceDomain domain) const;

    /// Continuous subset test (used by subjugation and rcq subsumption).
    bool subset_of(const DistInterval& other) const;
};

}  // namespace ggdr
