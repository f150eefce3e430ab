#pragma once

#include <map>
#include <string>
#include <vector>

#include "ggdr/ggd.hpp"
#include "ggdr/graph.hpp"

namespace ggdr {

/// A homomorphic binding from pattern variables to graph object ids.
struct Match {
    std::map<std::string, ObjectId> binding;

    const ObjectId* lookup(const std::string& var) const {
        auto it = binding.find(var);
        return it == binding.end() ? nullptr : &it->second;
    }
    bool operator==(const Match& other) const { return binding == other.binding; }
    bool operator<(const Match& other) const { return binding < other.binding; }
    std::string to_text() const;
};

enum class Tri { True, False, Missing };

/// Evaluates one constraint under a binding. Missing means a referenced
/// property is absent on the bound object; a match never satisfies such
/// a constraint but this is not an error. Kind mismatches throw EvalError.
Tri eval_constraint(const Constraint& constraint, const Match& match,
                    const PropertyGraph& graph);

/// True iff every constraint evaluates to True (Missing counts as false).
bool satisfies_all(const std::vector<Constraint>& constraints, const Match& match,
                   const PropertyGraph& graph);

using VarMap = std::map<std::string, std::string>;

/// tau subjugates omega: every match satisfying omega satisfies tau.
/// Decided per constraint of tau by finding a witness in omega on the
/// same distance expression whose admissible interval is a subset.
/// var_map maps tau's variables onto omega's; identity when empty.
bool subjugates(const std::vector<Constraint>& tau, const std::vector<Constraint>& omega,
                const VarMap& var_map = {});

/// True iff some value assignment satisfies all constraints at once,
/// decided per distance expression by interval intersection plus a
/// union-find over identity constraints. When `pattern` is given,
/// identity between a vertex and an edge variable is infeasible.
bool feasible(const std::vector<Constraint>& constraints,
              const GraphPattern* pattern = nullptr);

}  // namespace ggdr
