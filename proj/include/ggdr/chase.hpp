#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ggdr/eval.hpp"
#include "ggdr/ggd.hpp"
#include "ggdr/graph.hpp"
#include "ggdr/interval.hpp"

namespace ggdr {

/// Range class quadruple: one enforced bound on an attribute, or the
/// attribute's own concrete value (no distance function attached).
struct Rcq {
    std::optional<DistanceFn> fn;  // nullopt marks the own-value entry
    Term comparand;  // constant, or attr term whose var slot holds an object id
    double threshold = 0.0;
    CompareOp op = CompareOp::Eq;

    static Rcq own_value(Value v);
    static Rcq bound(DistanceFn fn, Term comparand, CompareOp op, double threshold);

    bool is_own_value() const { return !fn.has_value(); }
    DistInterval interval() const { return DistInterval::of(op, threshold); }
    bool operator==(const Rcq& other) const;
    std::string to_text() const;
};

/// Set of rcqs enforced on one attribute of one (merged) object.
struct AttrClass {
    std::vector<Rcq> rcqs;

    const Rcq* own_value() const;
    std::string to_text() const;
};

struct StepRecord {
    std::size_t index = 0;
    std::string ggd;
    Match binding;
    enum class Action { Update, Generate, Skip } action = Action::Update;
    bool consistent = true;
    std::string note;

    std::string to_text() const;
};

/// Working state of a Chase run: the (growing) graph, a union-find of
/// identified objects, per-attribute range classes, and the step log.
class ChaseState {
public:
    PropertyGraph graph;

    const ObjectId& find(const ObjectId& id) const;
    const std::set<ObjectId>& members_of(const ObjectId& id) const;
    bool is_open(const ObjectId& id) const { return open_.count(id) > 0; }
    /// True when some member of the class is a concrete (loaded) object.
    bool has_concrete_member(const ObjectId& rep) const;

    void register_object(const ObjectId& id, bool open);
    /// Returns false when the two were already identified.
    bool merge(const ObjectId& a, const ObjectId& b);

    AttrClass* attr_class(const ObjectId& rep, const std::string& key);
    const AttrClass* attr_class(const ObjectId& rep, const std::string& key) const;
    AttrClass& ensure_attr_class(const ObjectId& rep, const std::string& key);
    const std::map<std::pair<ObjectId, std::string>, AttrClass>& attr_classes() const {
        return classes_;
    }

    /// Folds one bound into a class: no-op when an existing rcq on the
    /// same distance expression already subsumes it, otherwise replaces
    /// the rcqs it subsumes (loosest wins) or joins as a new entry.
    bool fold(const ObjectId& rep, const std::string& key, const Rcq& rcq);

    /// Canonical form of an rcq comparand under the current union-find.
    Term canon_term(const Term& term) const;

    /// The graph seen through the union-find: one object per class
    /// representative, labels unioned, edges rewired to representatives.
    const PropertyGraph& condensed() const;

    std::uint64_t revision() const { return revision_; }
    void bump() { ++revision_; }

    std::vector<StepRecord> log;

private:
    std::map<ObjectId, ObjectId> parent_;
    std::map<ObjectId, std::set<ObjectId>> members_;
    std::map<std::pair<ObjectId, std::string>, AttrClass> classes_;
    std::set<ObjectId> open_;
    std::uint64_t revision_ = 0;
    mutable PropertyGraph condensed_cache_;
    mutable std::uint64_t condensed_revision_ = static_cast<std::uint64_t>(-1);
};

struct ChaseOutcome {
    enum class Verdict { TerminatedValid, Inconsistent, StepCapExceeded };
    Verdict verdict = Verdict::TerminatedValid;
    std::size_t failing_step = 0;  // log index for Inconsistent
    std::string witness;           // label pair or infeasible class
    std::size_t steps = 0;         // state-changing steps applied
};

/// Every object becomes a singleton class; every present attribute gets
/// an own-value rcq.
ChaseState init_chase(const PropertyGraph& graph);

/// Structural source matches whose objects' range classes are jointly
/// feasible with the where-constraints.
std::vector<Match> chase_match_source(const ChaseState& state, const Ggd& ggd);

struct StepResult {
    bool applicable = true;
    bool changed = false;
    bool consistent = true;
    std::string witness;
};

/// One Chase step: fold the where-constraints into the matched classes,
/// then enforce the target side (update every structural extension, or
/// generate the existential objects when none exists), then check
/// consistency.
StepResult apply_step(ChaseState& state, const Ggd& ggd, const Match& source_binding);

/// Scans the set in declaration order until a full pass changes nothing
/// (TerminatedValid), a step is inconsistent, or `step_cap` changing
/// steps have been applied.
ChaseOutcome run_chase(ChaseState& state, const GgdSet& set, std::size_t step_cap);

inline constexpr std::size_t kDefaultStepCap = 10'000;

/// Concrete graph satisfying every range class: own values are kept,
/// constrained attributes get a synthesized value inside the admissible
/// interval (numbers: interval point; text: comparand mutated by edit
/// operations or token swaps).
PropertyGraph extract_model(const ChaseState& state);

std::string step_log_text(const ChaseState& state);

}  // namespace ggdr
