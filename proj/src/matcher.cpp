#include "ggdr/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ggdr/error.hpp"

namespace ggdr {

void MatchSet::normalize() {
    std::sort(matches.begin(), matches.end());
    matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
}

namespace {

/// Variables grouped by pattern connectivity (edges connect their
/// endpoints). Order follows the first declaration in the pattern.
struct Component {
    std::set<std::string> vars;
    std::vector<const PatternEdge*> edges;
    std::vector<const PatternVertex*> isolated;
};

std::vector<Component> split_components(const GraphPattern& pattern) {
    std::map<std::string, std::string> parent;
    auto find = [&](std::string v) {
        while (parent[v] != v) v = parent[v];
        return v;
    };
    auto merge = [&](const std::string& a, const std::string& b) {
        std::string ra = find(a);
        std::string rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    };
    for (const auto& var : pattern.vars()) parent[var] = var;
    for (const auto& e : pattern.edges) {
        merge(e.var, e.from);
        merge(e.var, e.to);
    }
    std::vector<std::string> order;
    std::map<std::string, Component> by_root;
    for (const auto& v : pattern.vertices) {
        std::string root = find(v.var);
        if (!by_root.count(root)) order.push_back(root);
        by_root[root].vars.insert(v.var);
    }
    for (const auto& e : pattern.edges) {
        std::string root = find(e.var);
        if (!by_root.count(root)) order.push_back(root);
        auto& comp = by_root[root];
        comp.vars.insert(e.var);
        comp.edges.push_back(&e);
    }
    for (const auto& v : pattern.vertices) {
        bool touched = false;
        for (const auto& e : pattern.edges) {
            if (e.from == v.var || e.to == v.var) {
                touched = true;
                break;
            }
        }
        if (!touched) by_root[find(v.var)].isolated.push_back(&v);
    }
    std::vector<Component> components;
    components.reserve(order.size());
    for (const auto& root : order) components.push_back(std::move(by_root[root]));
    return components;
}

/// Greedy search order inside a component: cheapest label first, then
/// edges adjacent to what is already bound.
std::vector<const PatternEdge*> order_edges(const PropertyGraph& graph,
                                            const Component& component) {
    std::vector<const PatternEdge*> remaining = component.edges;
    std::vector<const PatternEdge*> ordered;
    std::set<std::string> bound;
    while (!remaining.empty()) {
        const PatternEdge* best = nullptr;
        std::size_t best_score = 0;
        bool best_adjacent = false;
        for (const PatternEdge* e : remaining) {
            const bool adjacent =
                !ordered.empty() && (bound.count(e->from) || bound.count(e->to));
            const std::size_t score = graph.label_frequency(ObjectKind::Edge, e->label);
            if (!best || std::make_tuple(!adjacent, score, e->var) <
                             std::make_tuple(!best_adjacent, best_score, best->var)) {
                best = e;
                best_score = score;
                best_adjacent = adjacent;
            }
        }
        ordered.push_back(best);
        bound.insert(best->from);
        bound.insert(best->to);
        bound.insert(best->var);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    }
    return ordered;
}

using Binding = std::map<std::string, ObjectId>;

bool bind_var(Binding& binding, const std::string& var, const ObjectId& id) {
    auto it = binding.find(var);
    if (it != binding.end()) return it->second == id;
    binding.emplace(var, id);
    return true;
}

/// Constraints become checkable once all their variables are bound.
bool check_ready_constraints(const PropertyGraph& graph,
                             const std::vector<const Constraint*>& constraints,
                             const Binding& binding) {
    Match match{binding};
    for (const Constraint* c : constraints) {
        bool ready = true;
        for (const auto& var : c->vars()) {
            if (!binding.count(var)) {
                ready = false;
                break;
            }
        }
        if (!ready) continue;
        if (eval_constraint(*c, match, graph) != Tri::True) return false;
    }
    return true;
}

struct ComponentSearch {
    const PropertyGraph& graph;
    const Component& component;
    std::vector<const PatternEdge*> edge_order;
    std::vector<const PatternVertex*> vertex_order;
    const GraphPattern& pattern;
    std::vector<const Constraint*> local_constraints;
    std::vector<Binding> results;

    void run(const Binding& seed) {
        Binding binding = seed;
        recurse_edge(0, binding);
    }

    void recurse_edge(std::size_t step, Binding& binding) {
        if (step == edge_order.size()) {
            recurse_vertex(0, binding);
            return;
        }
        const PatternEdge& e = *edge_order[step];
        auto try_edge = [&](const ObjectId& edge_id) {
            const GraphObject* edge = graph.find_edge(edge_id);
            if (!edge || !label_matches(e.label, *edge)) return;
            Binding saved = binding;
            if (auto it = binding.find(e.var); it != binding.end()) {
                if (it->second != edge_id) return;
            } else {
                binding.emplace(e.var, edge_id);
            }
            if (bind_var(binding, e.from, edge->src) &&
                bind_var(binding, e.to, edge->dst) &&
                vertex_labels_ok(e, *edge) && constraints_ok(binding)) {
                recurse_edge(step + 1, binding);
            }
            binding = std::move(saved);
        };

        auto bound_edge = binding.find(e.var);
        if (bound_edge != binding.end()) {
            try_edge(bound_edge->second);
            return;
        }
        auto from_it = binding.find(e.from);
        auto to_it = binding.find(e.to);
        if (from_it != binding.end()) {
            for (const auto& edge_id : graph.out_edges(from_it->second)) try_edge(edge_id);
        } else if (to_it != binding.end()) {
            for (const auto& edge_id : graph.in_edges(to_it->second)) try_edge(edge_id);
        } else {
            for (const auto& edge_id : graph.objects_with_label(ObjectKind::Edge, e.label)) {
                try_edge(edge_id);
            }
        }
    }

    bool vertex_labels_ok(const PatternEdge& e, const GraphObject& edge) const {
        const std::string* from_label = pattern.label_of(e.from);
        const std::string* to_label = pattern.label_of(e.to);
        const GraphObject* src = graph.find_vertex(edge.src);
        const GraphObject* dst = graph.find_vertex(edge.dst);
        return src && dst && label_matches(*from_label, *src) && label_matches(*to_label, *dst);
    }

    void recurse_vertex(std::size_t step, Binding& binding) {
        if (step == vertex_order.size()) {
            results.push_back(binding);
            return;
        }
        const PatternVertex& v = *vertex_order[step];
        auto try_vertex = [&](const ObjectId& id) {
            const GraphObject* vertex = graph.find_vertex(id);
            if (!vertex || !label_matches(v.label, *vertex)) return;
            Binding saved = binding;
            if (bind_var(binding, v.var, id) && constraints_ok(binding)) {
                recurse_vertex(step + 1, binding);
            }
            binding = std::move(saved);
        };
        auto it = binding.find(v.var);
        if (it != binding.end()) {
            try_vertex(it->second);
            return;
        }
        for (const auto& id : graph.objects_with_label(ObjectKind::Vertex, v.label)) {
            try_vertex(id);
        }
    }

    bool constraints_ok(const Binding& binding) {
        return check_ready_constraints(graph, local_constraints, binding);
    }
};

std::vector<Binding> search_component(const PropertyGraph& graph, const GraphPattern& pattern,
                                      const Component& component,
                                      const std::vector<Constraint>& constraints,
                                      const Binding& seed) {
    ComponentSearch search{graph, component, order_edges(graph, component), {}, pattern, {}, {}};
    for (const PatternVertex* v : component.isolated) search.vertex_order.push_back(v);
    std::sort(search.vertex_order.begin(), search.vertex_order.end(),
              [&](const PatternVertex* a, const PatternVertex* b) {
                  auto fa = graph.label_frequency(ObjectKind::Vertex, a->label);
                  auto fb = graph.label_frequency(ObjectKind::Vertex, b->label);
                  return std::tie(fa, a->var) < std::tie(fb, b->var);
              });
    // constraints fully inside this component (plus seed vars) prune early
    for (const auto& c : constraints) {
        bool local = true;
        for (const auto& var : c.vars()) {
            if (!component.vars.count(var) && !seed.count(var)) {
                local = false;
                break;
            }
        }
        if (local) search.local_constraints.push_back(&c);
    }
    // validate seed bindings for vars of this component
    Binding effective_seed;
    for (const auto& [var, id] : seed) effective_seed.emplace(var, id);
    for (const auto& var : component.vars) {
        auto it = effective_seed.find(var);
        if (it == effective_seed.end()) continue;
        const GraphObject* object = graph.find(it->second);
        if (!object) return {};
        const std::string* label = pattern.label_of(var);
        const bool needs_vertex = pattern.is_vertex_var(var);
        if ((object->kind == ObjectKind::Vertex) != needs_vertex) return {};
        if (!label_matches(*label, *object)) return {};
    }
    search.run(effective_seed);
    return search.results;
}

bool var_in_component(const Plan::Component& component, const std::string& var) {
    return std::find(component.vars.begin(), component.vars.end(), var) !=
           component.vars.end();
}

bool simjoin_eligible(const Constraint& c) {
    return c.form == Constraint::Form::Dist &&
           (c.fn == DistanceFn::Edit || c.fn == DistanceFn::Jaccard) &&
           (c.op == CompareOp::Le || c.op == CompareOp::Lt) && c.lhs.is_attr() &&
           c.rhs.is_attr();
}

}  // namespace

Plan plan_pattern(const PropertyGraph& graph, const GraphPattern& pattern,
                  const std::vector<Constraint>& constraints) {
    Plan plan;
    auto components = split_components(pattern);
    for (const auto& component : components) {
        Plan::Component pc;
        pc.vars.assign(component.vars.begin(), component.vars.end());
        for (const PatternEdge* e : order_edges(graph, component)) {
            pc.steps.push_back("edge " + e->var + ":" + e->label + " (" + e->from + ")->(" +
                               e->to + ")");
        }
        for (const PatternVertex* v : component.isolated) {
            pc.steps.push_back("vertex " + v->var + ":" + v->label);
        }
        plan.components.push_back(std::move(pc));
    }
    if (plan.components.empty()) return plan;

    std::set<const Constraint*> assigned;
    std::set<std::string> bound_vars(plan.components[0].vars.begin(),
                                     plan.components[0].vars.end());
    // constraints entirely inside one component are handled by its search
    auto fully_inside = [&](const Constraint& c, const Plan::Component& component) {
        for (const auto& var : c.vars()) {
            if (!var_in_component(component, var)) return false;
        }
        return true;
    };
    for (const auto& c : constraints) {
        for (const auto& component : plan.components) {
            if (fully_inside(c, component)) {
                assigned.insert(&c);
                break;
            }
        }
    }

    std::vector<std::size_t> remaining;
    for (std::size_t i = 1; i < plan.components.size(); ++i) remaining.push_back(i);
    while (!remaining.empty()) {
        std::size_t pick = remaining.size();
        std::vector<Constraint> links;
        for (std::size_t r = 0; r < remaining.size() && links.empty(); ++r) {
            const auto& component = plan.components[remaining[r]];
            for (const auto& c : constraints) {
                if (assigned.count(&c)) continue;
                bool touches_component = false;
                bool closed = true;
                for (const auto& var : c.vars()) {
                    if (var_in_component(component, var)) {
                        touches_component = true;
                    } else if (!bound_vars.count(var)) {
                        closed = false;
                    }
                }
                if (touches_component && closed) links.push_back(c);
            }
            if (!links.empty()) pick = r;
        }
        Plan::Join join;
        if (pick == remaining.size()) {
            join.kind = Plan::Join::Kind::Cross;
            join.component = remaining.front();
            remaining.erase(remaining.begin());
            plan.warnings.push_back("cross product: no constraint links component of '" +
                                    plan.components[join.component].vars.front() +
                                    "' to the rest of the pattern");
        } else {
            join.component = remaining[pick];
            remaining.erase(remaining.begin() + pick);
            join.constraints = links;
            join.kind = Plan::Join::Kind::Filter;
            for (const auto& c : links) {
                if (simjoin_eligible(c)) {
                    join.kind = Plan::Join::Kind::Similarity;
                    break;
                }
            }
            for (const auto& c : constraints) {
                for (const auto& l : links) {
                    if (c == l) assigned.insert(&c);
                }
            }
        }
        for (const auto& var : plan.components[join.component].vars) bound_vars.insert(var);
        plan.joins.push_back(std::move(join));
    }
    for (const auto& c : constraints) {
        if (!assigned.count(&c)) plan.residual.push_back(c);
    }
    return plan;
}

std::string Plan::to_text() const {
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
        out += "component " + std::to_string(i) + ":\n";
        for (const auto& step : components[i].steps) out += "  match " + step + "\n";
    }
    for (const auto& join : joins) {
        switch (join.kind) {
            case Join::Kind::Similarity: out += "similarity join component "; break;
            case Join::Kind::Filter: out += "filter join component "; break;
            case Join::Kind::Cross: out += "cross product component "; break;
        }
        out += std::to_string(join.component);
        if (!join.constraints.empty()) {
            out += " on";
            for (const auto& c : join.constraints) out += " [" + c.to_text() + "]";
        }
        out += "\n";
    }
    for (const auto& c : residual) out += "filter [" + c.to_text() + "]\n";
    for (const auto& w : warnings) out += "warning: " + w + "\n";
    return out;
}

namespace {

struct JoinSide {
    std::vector<Binding>* rows;
    const Term* term;
};

/// Accelerated join for edit/jaccard <=-style links between two row
/// sets. Must agree exactly with the nested-loop filter join.
std::vector<std::pair<std::size_t, std::size_t>> similarity_pairs(
    const PropertyGraph& graph, const std::vector<Binding>& left,
    const std::vector<Binding>& right, const Constraint& c, bool left_has_lhs) {
    const Term& lterm = left_has_lhs ? c.lhs : c.rhs;
    const Term& rterm = left_has_lhs ? c.rhs : c.lhs;

    auto group = [&](const std::vector<Binding>& rows, const Term& term) {
        std::map<std::string, std::vector<std::size_t>> by_value;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const GraphObject* object = graph.find(rows[i].at(term.var));
            const Value* value = object ? object->visible_property(term.key) : nullptr;
            if (!value) continue;  // missing property never satisfies
            if (!value->is_text()) {
                throw EvalError(std::string(to_string(c.fn)) + " requires text, got " +
                                to_string(value->kind()));
            }
            by_value[value->text()].push_back(i);
        }
        return by_value;
    };
    auto lvals = group(left, lterm);
    auto rvals = group(right, rterm);

    std::vector<std::pair<std::string, std::string>> value_pairs;
    if (c.fn == DistanceFn::Edit) {
        double cap_raw = c.op == CompareOp::Le
                             ? std::floor(c.threshold)
                             : (c.threshold == std::floor(c.threshold) ? c.threshold - 1
                                                                       : std::floor(c.threshold));
        if (cap_raw >= 0) {
            const auto cap = static_cast<std::size_t>(cap_raw);
            for (const auto& [lv, li] : lvals) {
                for (const auto& [rv, ri] : rvals) {
                    const std::size_t la = lv.size();
                    const std::size_t lb = rv.size();
                    if ((la > lb ? la - lb : lb - la) > cap) continue;
                    if (bounded_edit_distance(lv, rv, cap) <= cap) value_pairs.emplace_back(lv, rv);
                }
            }
        }
    } else {
        const bool all_pairs = (c.op == CompareOp::Le && c.threshold >= 1.0) ||
                               (c.op == CompareOp::Lt && c.threshold > 1.0);
        if (all_pairs) {
            for (const auto& [lv, li] : lvals) {
                for (const auto& [rv, ri] : rvals) value_pairs.emplace_back(lv, rv);
            }
        } else {
            // token signature: candidates share a token (or are both empty)
            std::map<std::string, std::vector<std::string>> postings;
            std::vector<std::string> empty_right;
            for (const auto& [rv, ri] : rvals) {
                auto tokens = jaccard_tokens(rv);
                if (tokens.empty()) empty_right.push_back(rv);
                for (const auto& token : tokens) postings[token].push_back(rv);
            }
            for (const auto& [lv, li] : lvals) {
                std::set<std::string> candidates;
                auto tokens = jaccard_tokens(lv);
                if (tokens.empty()) {
                    candidates.insert(empty_right.begin(), empty_right.end());
                }
                for (const auto& token : tokens) {
                    auto it = postings.find(token);
                    if (it == postings.end()) continue;
                    candidates.insert(it->second.begin(), it->second.end());
                }
                for (const auto& rv : candidates) {
                    const double d = jaccard_distance(lv, rv);
                    if (compare_distance(d, c.op, c.threshold, false)) {
                        value_pairs.emplace_back(lv, rv);
                    }
                }
            }
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [lv, rv] : value_pairs) {
        for (std::size_t li : lvals[lv]) {
            for (std::size_t ri : rvals[rv]) pairs.emplace_back(li, ri);
        }
    }
    return pairs;
}

std::vector<Binding> execute_plan(const PropertyGraph& graph, const GraphPattern& pattern,
                                  const std::vector<Constraint>& constraints, const Plan& plan,
                                  const std::vector<Component>& components, const Binding& seed,
                                  const MatchOptions& options) {
    if (components.empty()) {
        Match m{seed};
        for (const auto& c : constraints) {
            if (eval_constraint(c, m, graph) != Tri::True) return {};
        }
        return {seed};
    }
    std::vector<Binding> acc =
        search_component(graph, pattern, components[0], constraints, seed);
    for (const auto& join : plan.joins) {
        if (acc.empty()) return {};
        std::vector<Binding> rows =
            search_component(graph, pattern, components[join.component], constraints, seed);
        if (rows.empty()) return {};
        std::vector<Binding> merged;
        const Constraint* sim = nullptr;
        if (join.kind == Plan::Join::Kind::Similarity && options.use_similarity_join) {
            for (const auto& c : join.constraints) {
                if (simjoin_eligible(c)) {
                    sim = &c;
                    break;
                }
            }
        }
        if (sim) {
            const bool left_has_lhs = acc.front().count(sim->lhs.var) > 0;
            auto pairs = similarity_pairs(graph, acc, rows, *sim, left_has_lhs);
            for (const auto& [li, ri] : pairs) {
                Binding combined = acc[li];
                for (const auto& [var, id] : rows[ri]) combined.emplace(var, id);
                Match m{combined};
                bool ok = true;
                for (const auto& c : join.constraints) {
                    if (&c == sim || c == *sim) continue;
                    if (eval_constraint(c, m, graph) != Tri::True) {
                        ok = false;
                        break;
                    }
                }
                if (ok) merged.push_back(std::move(combined));
            }
        } else {
            for (const auto& lrow : acc) {
                for (const auto& rrow : rows) {
                    Binding combined = lrow;
                    for (const auto& [var, id] : rrow) combined.emplace(var, id);
                    Match m{combined};
                    bool ok = true;
                    for (const auto& c : join.constraints) {
                        if (eval_constraint(c, m, graph) != Tri::True) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) merged.push_back(std::move(combined));
                }
            }
        }
        acc = std::move(merged);
    }
    if (!plan.residual.empty()) {
        std::vector<Binding> filtered;
        for (const auto& row : acc) {
            Match m{row};
            bool ok = true;
            for (const auto& c : plan.residual) {
                if (eval_constraint(c, m, graph) != Tri::True) {
                    ok = false;
                    break;
                }
            }
            if (ok) filtered.push_back(row);
        }
        acc = std::move(filtered);
    }
    return acc;
}

MatchSet match_with_seed(const PropertyGraph& graph, const GraphPattern& pattern,
                         const std::vector<Constraint>& constraints, const Binding& seed,
                         const MatchOptions& options) {
    pattern.validate();
    if (!feasible(constraints, &pattern)) return {};
    auto components = split_components(pattern);
    Plan plan = plan_pattern(graph, pattern, constraints);
    MatchSet result;
    auto rows = execute_plan(graph, pattern, constraints, plan, components, seed, options);
    result.matches.reserve(rows.size());
    for (auto& row : rows) result.matches.push_back(Match{std::move(row)});
    result.normalize();
    return result;
}

}  // namespace

MatchSet match_pattern(const PropertyGraph& graph, const GraphPattern& pattern,
                       const std::vector<Constraint>& constraints, const MatchOptions& options) {
    return match_with_seed(graph, pattern, constraints, {}, options);
}

MatchSet extend_match(const PropertyGraph& graph, const Ggd& ggd, const Match& source_match,
                      bool apply_target_constraints, const MatchOptions& options) {
    static const std::vector<Constraint> none;
    return match_with_seed(graph, ggd.target,
                           apply_target_constraints ? ggd.target_having : none,
                           source_match.binding, options);
}

MatchSet brute_force_match(const PropertyGraph& graph, const GraphPattern& pattern,
                           const std::vector<Constraint>& constraints,
                           const MatchOptions& options) {
    pattern.validate();
    std::vector<ObjectId> all_vertices = graph.objects_with_label(ObjectKind::Vertex, "-");
    std::vector<ObjectId> all_edges = graph.objects_with_label(ObjectKind::Edge, "-");

    struct Slot {
        std::string var;
        const std::vector<ObjectId>* candidates;
    };
    std::vector<Slot> slots;
    for (const auto& v : pattern.vertices) slots.push_back({v.var, &all_vertices});
    for (const auto& e : pattern.edges) slots.push_back({e.var, &all_edges});

    double space = 1;
    for (const auto& slot : slots) space *= static_cast<double>(slot.candidates->size());
    if (space > static_cast<double>(options.brute_force_guard)) {
        throw GuardError("brute force assignment space " + std::to_string(space) +
                         " exceeds guard");
    }

    MatchSet result;
    if (slots.empty()) {
        result.matches.push_back(Match{});
        return result;
    }
    if (space == 0) return result;

    std::vector<std::size_t> odometer(slots.size(), 0);
    while (true) {
        Binding binding;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            binding[slots[i].var] = (*slots[i].candidates)[odometer[i]];
        }
        bool ok = true;
        for (const auto& v : pattern.vertices) {
            if (!label_matches(v.label, *graph.find_vertex(binding[v.var]))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            for (const auto& e : pattern.edges) {
                const GraphObject* edge = graph.find_edge(binding[e.var]);
                if (!label_matches(e.label, *edge) || edge->src != binding[e.from] ||
                    edge->dst != binding[e.to]) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            Match m{binding};
            for (const auto& c : constraints) {
                if (eval_constraint(c, m, graph) != Tri::True) {
                    ok = false;
                    break;
                }
            }
            if (ok) result.matches.push_back(std::move(m));
        }
        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
            if (++odometer[i] < slots[i].candidates->size()) break;
            odometer[i] = 0;
        }
        if (i == slots.size()) break;
    }
    result.normalize();
    return result;
}

}  // namespace ggdr
