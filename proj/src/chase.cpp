#include "ggdr/chase.hpp"

#include <algorithm>
#include <cmath>

#include "ggdr/error.hpp"
#include "ggdr/matcher.hpp"

namespace ggdr {

Rcq Rcq::own_value(Value v) {
    Rcq rcq;
    rcq.fn = std::nullopt;
    rcq.comparand = Term::constant_of(std::move(v));
    rcq.threshold = 0.0;
    rcq.op = CompareOp::Eq;
    return rcq;
}

Rcq Rcq::bound(DistanceFn fn, Term comparand, CompareOp op, double threshold) {
    Rcq rcq;
    rcq.fn = fn;
    rcq.comparand = std::move(comparand);
    rcq.op = op;
    rcq.threshold = threshold;
    return rcq;
}

bool Rcq::operator==(const Rcq& other) const {
    return fn == other.fn && comparand == other.comparand && threshold == other.threshold &&
           op == other.op;
}

std::string Rcq::to_text() const {
    if (is_own_value()) return "(, " + comparand.to_text() + ", 0, =)";
    return "(" + std::string(to_string(*fn)) + ", " + comparand.to_text() + ", " +
           Value(threshold).to_text() + ", " + to_string(op) + ")";
}

const Rcq* AttrClass::own_value() const {
    for (const auto& rcq : rcqs) {
        if (rcq.is_own_value()) return &rcq;
    }
    return nullptr;
}

std::string AttrClass::to_text() const {
    std::string out = "{";
    for (std::size_t i = 0; i < rcqs.size(); ++i) {
        if (i) out += ", ";
        out += rcqs[i].to_text();
    }
    return out + "}";
}

std::string StepRecord::to_text() const {
    std::string out = std::to_string(index) + "; " + ggd + "; " + binding.to_text() + "; ";
    switch (action) {
        case Action::Update: out += "update"; break;
        case Action::Generate: out += "generate"; break;
        case Action::Skip: out += "skip"; break;
    }
    out += consistent ? "; ok" : "; inconsistent(" + note + ")";
    return out;
}

const ObjectId& ChaseState::find(const ObjectId& id) const {
    const ObjectId* current = &id;
    auto it = parent_.find(*current);
    while (it != parent_.end() && it->second != *current) {
        current = &it->second;
        it = parent_.find(*current);
    }
    return *current;
}

const std::set<ObjectId>& ChaseState::members_of(const ObjectId& id) const {
    static const std::set<ObjectId> empty;
    auto it = members_.find(find(id));
    return it == members_.end() ? empty : it->second;
}

bool ChaseState::has_concrete_member(const ObjectId& rep) const {
    for (const auto& member : members_of(rep)) {
        if (!open_.count(member)) return true;
    }
    return false;
}

void ChaseState::register_object(const ObjectId& id, bool open) {
    parent_.emplace(id, id);
    members_[id].insert(id);
    if (open) open_.insert(id);
    bump();
}

bool ChaseState::merge(const ObjectId& a, const ObjectId& b) {
    ObjectId ra = find(a);
    ObjectId rb = find(b);
    if (ra == rb) return false;
    if (rb < ra) std::swap(ra, rb);  // smallest id becomes the representative
    parent_[rb] = ra;
    auto& into = members_[ra];
    auto moved = std::move(members_[rb]);
    members_.erase(rb);
    into.insert(moved.begin(), moved.end());

    // move the absorbed side's attribute classes; identified objects
    // carry the union of enforced bounds
    std::vector<std::pair<std::string, AttrClass>> absorbed;
    for (auto it = classes_.begin(); it != classes_.end();) {
        if (it->first.first == rb) {
            absorbed.emplace_back(it->first.second, std::move(it->second));
            it = classes_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto& [key, klass] : absorbed) {
        AttrClass& target = classes_[{ra, key}];
        for (auto& rcq : klass.rcqs) {
            if (std::find(target.rcqs.begin(), target.rcqs.end(), rcq) == target.rcqs.end()) {
                target.rcqs.push_back(std::move(rcq));
            }
        }
    }
    bump();
    return true;
}

AttrClass* ChaseState::attr_class(const ObjectId& rep, const std::string& key) {
    auto it = classes_.find({rep, key});
    return it == classes_.end() ? nullptr : &it->second;
}

const AttrClass* ChaseState::attr_class(const ObjectId& rep, const std::string& key) const {
    auto it = classes_.find({rep, key});
    return it == classes_.end() ? nullptr : &it->second;
}

AttrClass& ChaseState::ensure_attr_class(const ObjectId& rep, const std::string& key) {
    return classes_[{rep, key}];
}

Term ChaseState::canon_term(const Term& term) const {
    if (!term.is_attr()) return term;
    return Term::attr(find(term.var), term.key);
}

namespace {

bool same_dimension(const ChaseState& state, const Rcq& a, const Rcq& b) {
    if (a.is_own_value() || b.is_own_value()) return false;
    return a.fn == b.fn && state.canon_term(a.comparand) == state.canon_term(b.comparand);
}

}  // namespace

bool ChaseState::fold(const ObjectId& rep, const std::string& key, const Rcq& rcq) {
    AttrClass& klass = ensure_attr_class(rep, key);
    if (rcq.is_own_value()) {
        if (std::find(klass.rcqs.begin(), klass.rcqs.end(), rcq) != klass.rcqs.end()) {
            return false;
        }
        klass.rcqs.push_back(rcq);
        bump();
        return true;
    }
    const DistInterval incoming = rcq.interval();
    for (const auto& existing : klass.rcqs) {
        if (!same_dimension(*this, existing, rcq)) continue;
        if (incoming.subset_of(existing.interval())) return false;  // already covered
    }
    // loosest wins on the same distance expression
    auto subsumed = [&](const Rcq& existing) {
        return same_dimension(*this, existing, rcq) &&
               existing.interval().subset_of(incoming);
    };
    klass.rcqs.erase(std::remove_if(klass.rcqs.begin(), klass.rcqs.end(), subsumed),
                     klass.rcqs.end());
    klass.rcqs.push_back(rcq);
    bump();
    return true;
}

const PropertyGraph& ChaseState::condensed() const {
    if (condensed_revision_ == revision_) return condensed_cache_;
    PropertyGraph g;
    auto merged_labels = [&](const ObjectId& rep) {
        std::set<std::string> labels;
        for (const auto& member : members_of(rep)) {
            if (const GraphObject* object = graph.find(member)) {
                labels.insert(object->labels.begin(), object->labels.end());
            }
        }
        return labels;
    };
    auto merged_props = [&](const ObjectId& rep) {
        std::map<std::string, Value> props;
        for (const auto& member : members_of(rep)) {
            if (const GraphObject* object = graph.find(member)) {
                props.insert(object->properties.begin(), object->properties.end());
            }
        }
        return props;
    };
    for (const auto& [id, vertex] : graph.vertices()) {
        if (find(id) != id) continue;
        g.add_vertex(id, merged_labels(id), merged_props(id));
    }
    for (const auto& [id, edge] : graph.edges()) {
        if (find(id) != id) continue;
        g.add_edge(id, find(edge.src), find(edge.dst), merged_labels(id), merged_props(id));
    }
    condensed_cache_ = std::move(g);
    condensed_revision_ = revision_;
    return condensed_cache_;
}

ChaseState init_chase(const PropertyGraph& graph) {
    ChaseState state;
    state.graph = graph;
    auto seed = [&](const GraphObject& object) {
        state.register_object(object.id, /*open=*/false);
        for (const auto& [key, value] : object.properties) {
            if (is_hidden_key(key)) continue;
            state.ensure_attr_class(object.id, key).rcqs.push_back(Rcq::own_value(value));
        }
    };
    for (const auto& [id, vertex] : graph.vertices()) seed(vertex);
    for (const auto& [id, edge] : graph.edges()) seed(edge);
    return state;
}

namespace {

struct Side {
    bool has_value = false;
    Value value;
    bool is_attr = false;
    ObjectId rep;
    std::string key;
    bool missing = false;
};

Side resolve_side(const ChaseState& state, const Term& term, const Match& binding) {
    Side side;
    if (!term.is_attr()) {
        side.has_value = true;
        side.value = term.constant;
        return side;
    }
    side.is_attr = true;
    side.rep = state.find(binding.binding.at(term.var));
    side.key = term.key;
    const AttrClass* klass = state.attr_class(side.rep, side.key);
    if (klass) {
        if (const Rcq* own = klass->own_value()) {
            side.has_value = true;
            side.value = own->comparand.constant;
        }
        return side;
    }
    if (state.has_concrete_member(side.rep)) side.missing = true;
    return side;
}

/// The comparand an rcq folded from this constraint would carry on the
/// side `own`: the other operand, attr vars resolved to object ids.
Term comparand_for(const ChaseState& state, const Constraint& c, bool own_is_lhs,
                   const Match& binding) {
    const Term& other = own_is_lhs ? c.rhs : c.lhs;
    if (!other.is_attr()) return other;
    return Term::attr(state.find(binding.binding.at(other.var)), other.key);
}

bool integral_constraint(const Constraint& c, const Value& a, const Value& b) {
    switch (c.fn) {
        case DistanceFn::Edit:
        case DistanceFn::Eq:
            return true;
        case DistanceFn::AbsDiff:
            return a.kind() == ValueKind::Int && b.kind() == ValueKind::Int;
        case DistanceFn::Jaccard:
            return false;
    }
    return false;
}

/// Joint feasibility of one constraint with the range classes of the
/// matched objects: intersect its admissible interval with every rcq on
/// the same distance expression; pinned values become point checks.
bool constraint_admissible(const ChaseState& state, const Constraint& c, const Match& binding) {
    if (c.form == Constraint::Form::IdentEq) {
        return true;  // enforceable by merging; conflicts surface as inconsistency
    }
    if (c.form == Constraint::Form::IdentNe) {
        return state.find(binding.binding.at(c.lvar)) !=
               state.find(binding.binding.at(c.rvar));
    }
    Side lhs = resolve_side(state, c.lhs, binding);
    Side rhs = resolve_side(state, c.rhs, binding);
    if (lhs.missing || rhs.missing) return false;
    if (lhs.has_value && rhs.has_value) {
        const double d = distance(c.fn, lhs.value, rhs.value);
        return compare_distance(d, c.op, c.threshold,
                                integral_constraint(c, lhs.value, rhs.value));
    }
    DistInterval joint = c.admissible();
    auto narrow = [&](const Side& side, bool side_is_lhs) {
        if (!side.is_attr || side.has_value) return;
        const AttrClass* klass = state.attr_class(side.rep, side.key);
        if (!klass) return;
        const Term comparand = comparand_for(state, c, side_is_lhs, binding);
        for (const auto& rcq : klass->rcqs) {
            if (rcq.is_own_value()) continue;
            if (rcq.fn != c.fn) continue;
            if (!(state.canon_term(rcq.comparand) == state.canon_term(comparand))) continue;
            joint = joint.intersect(rcq.interval());
        }
    };
    narrow(lhs, true);
    narrow(rhs, false);
    return !joint.empty(domain_of(c.fn));
}

bool binding_admissible(const ChaseState& state, const std::vector<Constraint>& constraints,
                        const Match& binding) {
    for (const auto& c : constraints) {
        if (!constraint_admissible(state, c, binding)) return false;
    }
    return true;
}

Match canonical_binding(const ChaseState& state, const Match& binding) {
    Match out;
    for (const auto& [var, id] : binding.binding) out.binding.emplace(var, state.find(id));
    return out;
}

using TouchedSet = std::set<ObjectId>;

bool fold_constraints(ChaseState& state, const std::vector<Constraint>& constraints,
                      const Match& binding, TouchedSet& touched) {
    bool changed = false;
    for (const auto& c : constraints) {
        if (c.form == Constraint::Form::IdentEq) {
            const ObjectId& l = binding.binding.at(c.lvar);
            const ObjectId& r = binding.binding.at(c.rvar);
            if (state.merge(l, r)) changed = true;
            touched.insert(state.find(l));
            continue;
        }
        if (c.form == Constraint::Form::IdentNe) continue;
        auto fold_side = [&](const Term& term, bool is_lhs) {
            if (!term.is_attr()) return;
            const ObjectId rep = state.find(binding.binding.at(term.var));
            const Term comparand = comparand_for(state, c, is_lhs, binding);
            if (state.fold(rep, term.key, Rcq::bound(c.fn, comparand, c.op, c.threshold))) {
                changed = true;
            }
            touched.insert(rep);
        };
        fold_side(c.lhs, true);
        fold_side(c.rhs, false);
    }
    return changed;
}

std::string label_set_text(const std::set<std::string>& labels) {
    std::string out = "{";
    for (const auto& label : labels) {
        if (out.size() > 1) out += ",";
        out += label;
    }
    return out + "}";
}

/// Consistency rules: identified objects must have compatible labels and
/// every attribute class must stay feasible.
std::optional<std::string> check_consistency(const ChaseState& state,
                                             const TouchedSet& touched) {
    TouchedSet reps;
    for (const auto& id : touched) reps.insert(state.find(id));
    for (const auto& rep : reps) {
        const auto& members = state.members_of(rep);
        if (members.size() > 1) {
            bool wildcard = false;
            std::set<std::string> common;
            bool first = true;
            const GraphObject* prev = nullptr;
            for (const auto& member : members) {
                const GraphObject* object = state.graph.find(member);
                if (!object) continue;
                if (object->labels.count(kWildcardLabel)) {
                    wildcard = true;
                    break;
                }
                if (first) {
                    common = object->labels;
                    first = false;
                } else {
                    std::set<std::string> next;
                    std::set_intersection(common.begin(), common.end(), object->labels.begin(),
                                          object->labels.end(),
                                          std::inserter(next, next.begin()));
                    common = std::move(next);
                    if (common.empty()) {
                        return "label conflict " + label_set_text(prev->labels) + " vs " +
                               label_set_text(object->labels) + " in class of " + rep;
                    }
                }
                prev = object;
            }
            (void)wildcard;
        }
        for (const auto& [key, klass] : state.attr_classes()) {
            if (key.first != rep) continue;
            // pinned values must agree and satisfy every bound with a
            // computable comparand
            const Value* pinned = nullptr;
            for (const auto& rcq : klass.rcqs) {
                if (!rcq.is_own_value()) continue;
                if (pinned && !(*pinned == rcq.comparand.constant)) {
                    return "conflicting values " + pinned->to_text() + " vs " +
                           rcq.comparand.constant.to_text() + " on " + rep + "." + key.second;
                }
                pinned = &rcq.comparand.constant;
            }
            std::map<std::pair<DistanceFn, Term>, DistInterval> dims;
            for (const auto& rcq : klass.rcqs) {
                if (rcq.is_own_value()) continue;
                const Term canon = state.canon_term(rcq.comparand);
                // resolve the comparand to a concrete value when pinned
                const Value* other_value = nullptr;
                if (!canon.is_attr()) {
                    other_value = &canon.constant;
                } else if (const AttrClass* other = state.attr_class(canon.var, canon.key)) {
                    if (const Rcq* own = other->own_value()) {
                        other_value = &own->comparand.constant;
                    }
                }
                if (pinned && other_value) {
                    double d = 0;
                    try {
                        d = distance(*rcq.fn, *pinned, *other_value);
                    } catch (const EvalError&) {
                        return "kind mismatch evaluating " + rcq.to_text() + " on " + rep + "." +
                               key.second;
                    }
                    if (!compare_distance(d, rcq.op, rcq.threshold, true) &&
                        !rcq.interval().contains(d)) {
                        return "value " + pinned->to_text() + " violates " + rcq.to_text() +
                               " on " + rep + "." + key.second;
                    }
                    continue;
                }
                auto [it, inserted] = dims.emplace(std::make_pair(*rcq.fn, canon), rcq.interval());
                if (!inserted) it->second = it->second.intersect(rcq.interval());
                if (it->second.empty(domain_of(*rcq.fn))) {
                    return "infeasible range class " + klass.to_text() + " on " + rep + "." +
                           key.second;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<Match> chase_match_source(const ChaseState& state, const Ggd& ggd) {
    MatchSet structural = match_pattern(state.condensed(), ggd.source, {});
    std::vector<Match> admitted;
    for (const auto& match : structural.matches) {
        if (binding_admissible(state, ggd.source_where, match)) admitted.push_back(match);
    }
    return admitted;
}

StepResult apply_step(ChaseState& state, const Ggd& ggd, const Match& source_binding) {
    StepResult result;
    Match binding = canonical_binding(state, source_binding);
    if (!binding_admissible(state, ggd.source_where, binding)) {
        result.applicable = false;
        return result;
    }
    TouchedSet touched;
    bool changed = fold_constraints(state, ggd.source_where, binding, touched);
    binding = canonical_binding(state, binding);

    StepRecord::Action action = StepRecord::Action::Update;
    MatchSet extensions = extend_match(state.condensed(), ggd, binding, false);
    if (!extensions.empty()) {
        for (const auto& extension : extensions.matches) {
            Match full = canonical_binding(state, extension);
            if (fold_constraints(state, ggd.target_having, full, touched)) changed = true;
        }
    } else {
        action = StepRecord::Action::Generate;
        changed = true;
        Match full = binding;
        for (const auto& v : ggd.target.vertices) {
            if (full.binding.count(v.var)) continue;
            ObjectId id = state.graph.create_object(
                ObjectKind::Vertex, {v.label}, {{"_gen_by", Value(ggd.name)}});
            state.register_object(id, /*open=*/true);
            full.binding.emplace(v.var, id);
            touched.insert(id);
        }
        for (const auto& e : ggd.target.edges) {
            if (full.binding.count(e.var)) continue;
            ObjectId id = state.graph.create_object(
                ObjectKind::Edge, {e.label}, {{"_gen_by", Value(ggd.name)}},
                state.find(full.binding.at(e.from)), state.find(full.binding.at(e.to)));
            state.register_object(id, /*open=*/true);
            full.binding.emplace(e.var, id);
            touched.insert(id);
        }
        fold_constraints(state, ggd.target_having, full, touched);
    }

    auto witness = check_consistency(state, touched);
    result.changed = changed;
    if (witness) {
        result.consistent = false;
        result.witness = *witness;
    }
    if (changed || witness) {
        StepRecord record;
        record.index = state.log.size();
        record.ggd = ggd.name;
        record.binding = binding;
        record.action = action;
        record.consistent = !witness;
        if (witness) record.note = *witness;
        state.log.push_back(std::move(record));
    }
    return result;
}

ChaseOutcome run_chase(ChaseState& state, const GgdSet& set, std::size_t step_cap) {
    ChaseOutcome outcome;
    if (set.ggds.empty()) return outcome;
    while (true) {
        bool pass_changed = false;
        for (const auto& ggd : set.ggds) {
            auto bindings = chase_match_source(state, ggd);
            for (const auto& binding : bindings) {
                StepResult step = apply_step(state, ggd, binding);
                if (step.changed) {
                    pass_changed = true;
                    ++outcome.steps;
                }
                if (!step.consistent) {
                    outcome.verdict = ChaseOutcome::Verdict::Inconsistent;
                    outcome.failing_step = state.log.empty() ? 0 : state.log.size() - 1;
                    outcome.witness = step.witness;
                    return outcome;
                }
                if (outcome.steps >= step_cap) {
                    outcome.verdict = ChaseOutcome::Verdict::StepCapExceeded;
                    return outcome;
                }
            }
        }
        if (!pass_changed) {
            outcome.verdict = ChaseOutcome::Verdict::TerminatedValid;
            return outcome;
        }
    }
}

namespace {

/// Deterministic point inside an admissible interval.
std::optional<double> pick_distance(const DistInterval& interval, DistanceDomain domain) {
    if (interval.empty(domain)) return std::nullopt;
    if (interval.contains(0.0)) return 0.0;
    if (domain == DistanceDomain::NonNegInt || domain == DistanceDomain::Binary) {
        double v = std::max(0.0, std::ceil(interval.lo));
        if (v == interval.lo && interval.lo_open) v += 1.0;
        for (int i = 0; i < 1000; ++i, v += 1.0) {
            if (interval.contains(v)) return v;
        }
        return std::nullopt;
    }
    double hi = interval.hi;
    if (domain == DistanceDomain::UnitReal) hi = std::min(hi, 1.0);
    std::vector<double> candidates;
    if (hi == DistInterval::kInf) {
        candidates = {interval.lo + 1.0, interval.lo + 0.5, interval.lo + 2.0,
                      interval.lo + 1.5};
        if (!interval.lo_open) candidates.insert(candidates.begin(), interval.lo);
    } else {
        const double mid = (interval.lo + hi) / 2.0;
        candidates = {mid, (interval.lo + mid) / 2.0, (mid + hi) / 2.0, interval.lo, hi};
    }
    for (double c : candidates) {
        if (domain == DistanceDomain::UnitReal && (c < 0.0 || c > 1.0)) continue;
        if (interval.contains(c)) return c;
    }
    return std::nullopt;
}

std::optional<Value> value_at_distance(DistanceFn fn, const Value& comparand, double d) {
    switch (fn) {
        case DistanceFn::AbsDiff: {
            if (!comparand.is_number()) return std::nullopt;
            if (comparand.kind() == ValueKind::Int && d == std::floor(d)) {
                return Value(comparand.integer() + static_cast<std::int64_t>(d));
            }
            return Value(comparand.number() + d);
        }
        case DistanceFn::Edit: {
            if (!comparand.is_text() || d != std::floor(d)) return std::nullopt;
            std::string text = comparand.text();
            text.append(static_cast<std::size_t>(d), 'x');
            return Value(text);
        }
        case DistanceFn::Eq: {
            if (d == 0.0) return comparand;
            switch (comparand.kind()) {
                case ValueKind::Text: return Value(comparand.text() + "_alt");
                case ValueKind::Int: return Value(comparand.integer() + 1);
                case ValueKind::Float: return Value(comparand.number() + 1.0);
                case ValueKind::Bool: return Value(!comparand.boolean());
            }
            return std::nullopt;
        }
        case DistanceFn::Jaccard: {
            if (!comparand.is_text()) return std::nullopt;
            auto tokens = jaccard_tokens(comparand.text());
            const auto u = tokens.size();
            for (std::size_t keep = u + 1; keep-- > 0;) {
                if (keep > u) continue;
                for (std::size_t fresh = 0; fresh <= 4 * u + 8; ++fresh) {
                    const double union_size = static_cast<double>(u + fresh);
                    double j;
                    if (u == 0 && fresh == 0) {
                        j = 0.0;
                    } else if (union_size == 0) {
                        continue;
                    } else {
                        j = 1.0 - static_cast<double>(keep) / union_size;
                    }
                    if (std::fabs(j - d) > kFloatEqTolerance) continue;
                    std::string out;
                    for (std::size_t i = 0; i < keep; ++i) {
                        if (!out.empty()) out += ' ';
                        out += tokens[i];
                    }
                    for (std::size_t i = 0; i < fresh; ++i) {
                        if (!out.empty()) out += ' ';
                        out += "zzq" + std::to_string(i);
                    }
                    return Value(out);
                }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<Value> synthesize_value(const ChaseState& state, const AttrClass& klass) {
    if (const Rcq* own = klass.own_value()) return own->comparand.constant;

    // group bounds per distance expression with a constant comparand
    std::map<std::pair<DistanceFn, Term>, DistInterval> dims;
    for (const auto& rcq : klass.rcqs) {
        if (rcq.is_own_value()) continue;
        Term canon = state.canon_term(rcq.comparand);
        if (canon.is_attr()) {
            // comparand pinned elsewhere resolves to its value
            const AttrClass* other = state.attr_class(canon.var, canon.key);
            const Rcq* own = other ? other->own_value() : nullptr;
            if (!own) continue;
            canon = Term::constant_of(own->comparand.constant);
        }
        auto [it, inserted] = dims.emplace(std::make_pair(*rcq.fn, canon), rcq.interval());
        if (!inserted) it->second = it->second.intersect(rcq.interval());
    }
    if (dims.empty()) return std::nullopt;

    auto verify = [&](const Value& candidate) {
        for (const auto& [dim, interval] : dims) {
            double d;
            try {
                d = distance(dim.first, candidate, dim.second.constant);
            } catch (const EvalError&) {
                return false;
            }
            if (!interval.contains(d)) return false;
        }
        return true;
    };
    for (const auto& [dim, interval] : dims) {
        auto d = pick_distance(interval, domain_of(dim.first));
        if (!d) continue;
        auto candidate = value_at_distance(dim.first, dim.second.constant, *d);
        if (candidate && verify(*candidate)) return candidate;
    }
    return std::nullopt;
}

}  // namespace

PropertyGraph extract_model(const ChaseState& state) {
    const PropertyGraph& condensed = state.condensed();
    PropertyGraph out;
    auto materialize = [&](const GraphObject& object) {
        std::map<std::string, Value> props = object.properties;
        for (const auto& [key, klass] : state.attr_classes()) {
            if (key.first != object.id) continue;
            auto value = synthesize_value(state, klass);
            if (!value) {
                if (klass.own_value()) continue;
                throw IntegrityError("cannot synthesize a value for " + object.id + "." +
                                     key.second + " from " + klass.to_text());
            }
            props[key.second] = *value;
        }
        return props;
    };
    for (const auto& [id, vertex] : condensed.vertices()) {
        out.add_vertex(id, vertex.labels, materialize(vertex));
    }
    for (const auto& [id, edge] : condensed.edges()) {
        out.add_edge(id, edge.src, edge.dst, edge.labels, materialize(edge));
    }
    return out;
}

std::string step_log_text(const ChaseState& state) {
    std::string out;
    for (const auto& record : state.log) out += record.to_text() + "\n";
    return out;
}

}  // namespace ggdr
