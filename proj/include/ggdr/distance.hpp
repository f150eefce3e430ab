#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ggdr/value.hpp"

namespace ggdr {

enum class DistanceFn { AbsDiff, Edit, Jaccard, Eq };

/// The set a distance function can land in. Feasibility checks need this:
/// edit distances are integers, eq is 0/1, jaccard stays in [0,1].
enum class DistanceDomain { NonNegReal, NonNegInt, Binary, UnitReal };

const char* to_string(DistanceFn fn);
std::optional<DistanceFn> parse_distance_fn(std::string_view name);
DistanceDomain domain_of(DistanceFn fn);

std::size_t edit_distance(std::string_view a, std::string_view b);

/// Banded Levenshtein: returns the exact distance when it is <= cap,
/// otherwise any value > cap.
std::size_t bounded_edit_distance(std::string_view a, std::string_view b, std::size_t cap);

/// Case-folded whitespace tokens, deduplicated and sorted.
std::vector<std::string> jaccard_tokens(std::string_view text);
double jaccard_distance(std::string_view a, std::string_view b);

/// Dispatches on the operand kinds; throws EvalError on a kind the
/// function does not accept.
double distance(DistanceFn fn, const Value& a, const Value& b);

}  // namespace ggdr
