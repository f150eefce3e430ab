#include "ggdr/interval.hpp"

#include <algorithm>
#include <cmath>

namespace ggdr {

const char* to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Lt: return "<";
        case CompareOp::Gt: return ">";
        case CompareOp::Le: return "<=";
        case CompareOp::Ge: return ">=";
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
    }
    return "?";
}

bool compare_distance(double dist, CompareOp op, double threshold, bool integral) {
    switch (op) {
        case CompareOp::Lt: return dist < threshold;
        case CompareOp::Gt: return dist > threshold;
        case CompareOp::Le: return dist <= threshold;
        case CompareOp::Ge: return dist >= threshold;
        case CompareOp::Eq:
            return integral ? dist == threshold : std::fabs(dist - threshold) <= kFloatEqTolerance;
        case CompareOp::Ne:
            return integral ? dist != threshold : std::fabs(dist - threshold) > kFloatEqTolerance;
    }
    return false;
}

DistInterval DistInterval::of(CompareOp op, double threshold) {
    DistInterval interval;
    switch (op) {
        case CompareOp::Lt:
            interval.hi = threshold;
            interval.hi_open = true;
            break;
        case CompareOp::Le:
            interval.hi = threshold;
            break;
        case CompareOp::Gt:
            interval.lo = std::max(0.0, threshold);
            interval.lo_open = threshold >= 0.0;
            break;
        case CompareOp::Ge:
            interval.lo = std::max(0.0, threshold);
            break;
        case CompareOp::Eq:
            interval.lo = threshold;
            interval.hi = threshold;
            break;
        case CompareOp::Ne:
            interval.holes.push_back(threshold);
            break;
    }
    return interval;
}

DistInterval DistInterval::intersect(const DistInterval& other) const {
    DistInterval result = *this;
    if (other.lo > result.lo) {
        result.lo = other.lo;
        result.lo_open = other.lo_open;
    } else if (other.lo == result.lo) {
        result.lo_open = result.lo_open || other.lo_open;
    }
    if (other.hi < result.hi) {
        result.hi = other.hi;
        result.hi_open = other.hi_open;
    } else if (other.hi == result.hi) {
        result.hi_open = result.hi_open || other.hi_open;
    }
    for (double hole : other.holes) {
        if (!std::count(result.holes.begin(), result.holes.end(), hole)) {
            result.holes.push_back(hole);
        }
    }
    return result;
}

bool DistInterval::contains(double value) const {
    if (value < lo || (value == lo && lo_open)) return false;
    if (value > hi || (value == hi && hi_open)) return false;
    return std::count(holes.begin(), holes.end(), value) == 0;
}

bool DistInterval::empty(DistanceDomain domain) const {
    switch (domain) {
        case DistanceDomain::Binary:
            return !contains(0.0) && !contains(1.0);
        case DistanceDomain::NonNegInt: {
            double first = std::ceil(lo);
            if (first == lo && lo_open) first += 1.0;
            first = std::max(first, 0.0);
            if (hi == kInf) {
                // finitely many holes cannot exhaust the integers
                return false;
            }
            double last = std::floor(hi);
            if (last == hi && hi_open) last -= 1.0;
            if (first > last) return true;
            const double span = last - first + 1.0;
            if (span > static_cast<double>(holes.size())) return false;
            for (double v = first; v <= last; v += 1.0) {
                if (contains(v)) return false;
            }
            return true;
        }
        case DistanceDomain::UnitReal: {
            DistInterval unit;
            unit.hi = 1.0;
            return intersect(unit).empty(DistanceDomain::NonNegReal);
        }
        case DistanceDomain::NonNegReal: {
            double effective_lo = std::max(lo, 0.0);
            bool effective_lo_open = lo >= 0.0 ? lo_open : false;
            if (effective_lo > hi) return true;
            if (effective_lo == hi) {
                if (effective_lo_open || hi_open) return true;
                return std::count(holes.begin(), holes.end(), hi) > 0;
            }
            return false;
        }
    }
    return false;
}

bool DistInterval::subset_of(const DistInterval& other) const {
    const bool lower_ok =
        lo > other.lo || (lo == other.lo && (!other.lo_open || lo_open));
    const bool upper_ok =
        hi < other.hi || (hi == other.hi && (!other.hi_open || hi_open));
    if (!lower_ok || !upper_ok) return false;
    for (double hole : other.holes) {
        if (contains(hole)) return false;
    }
    return true;
}

}  // namespace ggdr
