#pragma once

#include <string>
#include <vector>

#include "ggdr/reasoner.hpp"
#include "ggdr/validator.hpp"

namespace ggdr {

/// Self-describing documents with stable field order; timings are
/// opt-in so default outputs diff byte-wise across runs.
std::string validation_document(const std::vector<ViolationReport>& reports,
                                bool include_timings);
std::string sat_document(const SatResult& result, bool include_witness, double ms,
                         bool include_timings);
std::string implication_document(const ImplicationResult& result, double ms,
                                 bool include_timings);
std::string wacyclic_document(const DependencyGraph& graph, double ms, bool include_timings);

}  // namespace ggdr
