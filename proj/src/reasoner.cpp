#include "ggdr/reasoner.hpp"

#include <algorithm>
#include <tuple>

#include "ggdr/error.hpp"
#include "ggdr/eval.hpp"
#include "ggdr/matcher.hpp"

namespace ggdr {

namespace {

/// Search state for the exact maximum common sub-pattern.
struct IntersectSearch {
    const GraphPattern& left;
    const std::vector<Constraint>& left_constraints;
    const GraphPattern& right;
    const std::vector<Constraint>& right_constraints;
    std::size_t guard;

    std::vector<const PatternVertex*> left_vertices;
    std::vector<const PatternEdge*> left_edges;
    VarMap mapping;
    std::set<std::string> kept_edges;

    VarMap best_mapping;
    std::set<std::string> best_edges;
    std::size_t best_score = 0;
    std::size_t visited = 0;

    /// Constraints of both sides restricted to the current
    /// correspondence must admit a joint assignment (left constraints
    /// rewritten into right variables).
    bool constraints_feasible() const {
        std::vector<Constraint> joined;
        std::set<std::string> image;
        for (const auto& [l, r] : mapping) image.insert(r);
        for (const auto& c : left_constraints) {
            bool inside = true;
            for (const auto& var : c.vars()) {
                if (!mapping.count(var)) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            Constraint renamed = c;
            if (renamed.form == Constraint::Form::Dist) {
                if (renamed.lhs.is_attr()) renamed.lhs.var = mapping.at(renamed.lhs.var);
                if (renamed.rhs.is_attr()) renamed.rhs.var = mapping.at(renamed.rhs.var);
            } else {
                renamed.lvar = mapping.at(renamed.lvar);
                renamed.rvar = mapping.at(renamed.rvar);
            }
            joined.push_back(std::move(renamed));
        }
        for (const auto& c : right_constraints) {
            bool inside = true;
            for (const auto& var : c.vars()) {
                if (!image.count(var)) {
                    inside = false;
                    break;
                }
            }
            if (inside) joined.push_back(c);
        }
        return feasible(joined);
    }

    void consider_solution() {
        const std::size_t score = mapping.size();
        if (score > best_score) {
            best_score = score;
            best_mapping = mapping;
            best_edges = kept_edges;
        }
    }

    void recurse_vertex(std::size_t index) {
        if (++visited > guard) {
            throw GuardError("pattern intersection search exceeded its guard; "
                             "patterns too large for exact intersection");
        }
        if (index == left_vertices.size()) {
            recurse_edge(0);
            return;
        }
        // bound: even mapping everything left cannot beat the best
        const std::size_t optimistic =
            mapping.size() + (left_vertices.size() - index) + left_edges.size();
        if (optimistic <= best_score) return;

        const PatternVertex& v = *left_vertices[index];
        for (const auto& candidate : right.vertices) {
            if (!labels_compatible(v.label, candidate.label) &&
                !labels_compatible(candidate.label, v.label)) {
                continue;
            }
            mapping.emplace(v.var, candidate.var);
            if (constraints_feasible()) recurse_vertex(index + 1);
            mapping.erase(v.var);
        }
        recurse_vertex(index + 1);  // leave v out of the intersection
    }

    void recurse_edge(std::size_t index) {
        if (index == left_edges.size()) {
            consider_solution();
            return;
        }
        const std::size_t optimistic = mapping.size() + (left_edges.size() - index);
        if (optimistic <= best_score) return;

        const PatternEdge& e = *left_edges[index];
        auto from_it = mapping.find(e.from);
        auto to_it = mapping.find(e.to);
        if (from_it != mapping.end() && to_it != mapping.end()) {
            for (const auto& candidate : right.edges) {
                if (candidate.from != from_it->second || candidate.to != to_it->second) {
                    continue;
                }
                if (!labels_compatible(e.label, candidate.label) &&
                    !labels_compatible(candidate.label, e.label)) {
                    continue;
                }
                mapping.emplace(e.var, candidate.var);
                kept_edges.insert(e.var);
                if (constraints_feasible()) recurse_edge(index + 1);
                kept_edges.erase(e.var);
                mapping.erase(e.var);
            }
        }
        recurse_edge(index + 1);  // leave e out
    }
};

}  // namespace

Intersection intersect_patterns(const GraphPattern& left,
                                const std::vector<Constraint>& left_constraints,
                                const GraphPattern& right,
                                const std::vector<Constraint>& right_constraints,
                                std::size_t guard) {
    IntersectSearch search{left, left_constraints, right, right_constraints, guard};
    for (const auto& v : left.vertices) search.left_vertices.push_back(&v);
    for (const auto& e : left.edges) search.left_edges.push_back(&e);
    search.recurse_vertex(0);

    Intersection result;
    result.mapping = search.best_mapping;
    for (const auto& v : left.vertices) {
        if (result.mapping.count(v.var)) result.pattern.vertices.push_back(v);
    }
    for (const auto& e : left.edges) {
        if (search.best_edges.count(e.var)) result.pattern.edges.push_back(e);
    }
    // drop vertex-only images of edge variables (an edge pair only
    // counts when its endpoints are in the intersection, which the
    // search already enforces)
    return result;
}

bool interacts(const Ggd& a, const Ggd& b, InteractionSide side) {
    switch (side) {
        case InteractionSide::Source:
            return !intersect_patterns(a.source, a.source_where, b.source, b.source_where)
                        .empty();
        case InteractionSide::Target:
            return !intersect_patterns(a.target, a.target_having, b.target, b.target_having)
                        .empty();
        case InteractionSide::TargetSource:
            return !intersect_patterns(b.target, b.target_having, a.source, a.source_where)
                        .empty();
    }
    return false;
}

namespace {

/// View of the accumulated canonical graph as a pattern whose variable
/// names are the object ids, plus its enforced constraints.
struct CanonicalView {
    GraphPattern pattern;
    std::vector<Constraint> constraints;
};

CanonicalView view_of(const ChaseState& state) {
    CanonicalView view;
    const PropertyGraph& graph = state.condensed();
    for (const auto& [id, vertex] : graph.vertices()) {
        view.pattern.vertices.push_back({id, *vertex.labels.begin()});
    }
    for (const auto& [id, edge] : graph.edges()) {
        view.pattern.edges.push_back({id, *edge.labels.begin(), edge.src, edge.dst});
    }
    for (const auto& [key, klass] : state.attr_classes()) {
        for (const auto& rcq : klass.rcqs) {
            if (rcq.is_own_value()) continue;
            view.constraints.push_back(Constraint::dist(
                *rcq.fn, Term::attr(key.first, key.second), rcq.comparand, rcq.op,
                rcq.threshold));
        }
    }
    return view;
}

/// Seeds constraints into an image's range classes using the same rcq
/// semantics the chase folds with.
bool fold_canonical(ChaseState& state, const std::vector<Constraint>& constraints,
                    const Match& image) {
    bool changed = false;
    for (const auto& c : constraints) {
        if (c.form == Constraint::Form::IdentEq) {
            changed |= state.merge(image.binding.at(c.lvar), image.binding.at(c.rvar));
            continue;
        }
        if (c.form == Constraint::Form::IdentNe) continue;
        auto fold_side = [&](const Term& own, const Term& other) {
            if (!own.is_attr()) return;
            Term comparand = other;
            if (comparand.is_attr()) {
                comparand = Term::attr(state.find(image.binding.at(comparand.var)),
                                       comparand.key);
            }
            const ObjectId rep = state.find(image.binding.at(own.var));
            if (state.fold(rep, own.key, Rcq::bound(c.fn, comparand, c.op, c.threshold))) {
                changed = true;
            }
        };
        fold_side(c.lhs, c.rhs);
        fold_side(c.rhs, c.lhs);
    }
    return changed;
}

void add_source_image(CanonicalGraph& canonical, const Ggd& ggd) {
    ChaseState& state = canonical.state;
    VarMap onto;  // ggd source var -> existing object id
    if (state.graph.vertex_count() > 0) {
        CanonicalView view = view_of(state);
        Intersection common = intersect_patterns(ggd.source, ggd.source_where, view.pattern,
                                                 view.constraints);
        onto = common.mapping;
    }
    Match image;
    for (const auto& v : ggd.source.vertices) {
        auto it = onto.find(v.var);
        if (it != onto.end()) {
            image.binding.emplace(v.var, state.find(it->second));
            continue;
        }
        ObjectId id = state.graph.create_object(ObjectKind::Vertex, {v.label}, {});
        state.register_object(id, /*open=*/true);
        image.binding.emplace(v.var, id);
    }
    for (const auto& e : ggd.source.edges) {
        auto it = onto.find(e.var);
        if (it != onto.end()) {
            image.binding.emplace(e.var, state.find(it->second));
            continue;
        }
        ObjectId id = state.graph.create_object(ObjectKind::Edge, {e.label}, {},
                                                image.binding.at(e.from),
                                                image.binding.at(e.to));
        state.register_object(id, /*open=*/true);
        image.binding.emplace(e.var, id);
    }
    fold_canonical(state, ggd.source_where, image);
    canonical.source_images.emplace(ggd.name, std::move(image));
}

}  // namespace

CanonicalGraph build_canonical_graph(const GgdSet& set) {
    CanonicalGraph canonical;
    for (const auto& ggd : set.ggds) {
        if (!feasible(ggd.source_where, &ggd.source)) {
            throw IntegrityError("ggd '" + ggd.name + "' has infeasible source constraints");
        }
        add_source_image(canonical, ggd);
    }
    return canonical;
}

CanonicalGraph build_closure_graph(const Ggd& ggd) {
    GgdSet single;
    single.ggds.push_back(ggd);
    return build_canonical_graph(single);
}

SatResult check_satisfiability(const GgdSet& set, std::size_t step_cap) {
    SatResult result;
    for (const auto& ggd : set.ggds) {
        if (!feasible(ggd.source_where, &ggd.source)) {
            result.verdict = SatResult::Verdict::Unsatisfiable;
            result.detail = "source constraints of '" + ggd.name + "' are infeasible";
            return result;
        }
    }
    CanonicalGraph canonical = build_canonical_graph(set);
    ChaseOutcome outcome = run_chase(canonical.state, set, step_cap);
    result.steps = outcome.steps;
    switch (outcome.verdict) {
        case ChaseOutcome::Verdict::TerminatedValid:
            result.verdict = SatResult::Verdict::Satisfiable;
            result.witness = extract_model(canonical.state);
            break;
        case ChaseOutcome::Verdict::Inconsistent:
            result.verdict = SatResult::Verdict::Unsatisfiable;
            result.detail = "chase step " + std::to_string(outcome.failing_step) +
                            " inconsistent: " + outcome.witness;
            break;
        case ChaseOutcome::Verdict::StepCapExceeded:
            result.verdict = SatResult::Verdict::Unknown;
            result.detail = "chase exceeded the step cap";
            break;
    }
    return result;
}

namespace {

/// A constraint is guaranteed when every value admitted by the matched
/// objects' range classes satisfies it.
bool constraint_guaranteed(const ChaseState& state, const Constraint& c, const Match& match) {
    if (c.form == Constraint::Form::IdentEq) {
        return state.find(match.binding.at(c.lvar)) == state.find(match.binding.at(c.rvar));
    }
    if (c.form == Constraint::Form::IdentNe) {
        // distinct canonical objects may still coincide in some model
        return false;
    }

    struct SideInfo {
        bool is_attr = false;
        ObjectId rep;
        std::string key;
        const Value* pinned = nullptr;
        const Value* constant = nullptr;
    };
    auto resolve = [&](const Term& term) {
        SideInfo side;
        if (!term.is_attr()) {
            side.constant = &term.constant;
            return side;
        }
        side.is_attr = true;
        side.rep = state.find(match.binding.at(term.var));
        side.key = term.key;
        if (const AttrClass* klass = state.attr_class(side.rep, side.key)) {
            if (const Rcq* own = klass->own_value()) side.pinned = &own->comparand.constant;
        }
        return side;
    };
    SideInfo lhs = resolve(c.lhs);
    SideInfo rhs = resolve(c.rhs);

    auto value_of = [](const SideInfo& side) {
        return side.constant ? side.constant : side.pinned;
    };
    const Value* lv = value_of(lhs);
    const Value* rv = value_of(rhs);
    if (lv && rv) {
        const double d = distance(c.fn, *lv, *rv);
        const bool integral = (c.fn == DistanceFn::Edit || c.fn == DistanceFn::Eq) ||
                              (lv->kind() == ValueKind::Int && rv->kind() == ValueKind::Int);
        return compare_distance(d, c.op, c.threshold, integral);
    }

    // open side(s): collect every bound enforced on this distance
    // expression; their joint interval must sit inside the constraint's
    DistInterval enforced;
    bool any = false;
    auto collect = [&](const SideInfo& own, const SideInfo& other, const Term& other_term) {
        if (!own.is_attr || own.pinned) return;
        const AttrClass* klass = state.attr_class(own.rep, own.key);
        if (!klass) return;
        for (const auto& rcq : klass->rcqs) {
            if (rcq.is_own_value() || rcq.fn != c.fn) continue;
            const Term canon = state.canon_term(rcq.comparand);
            bool matches_dim = false;
            if (other.is_attr) {
                matches_dim = canon.is_attr() && canon.var == other.rep && canon.key == other.key;
                if (!matches_dim && other.pinned && !canon.is_attr()) {
                    matches_dim = canon.constant == *other.pinned;
                }
            } else {
                matches_dim = !canon.is_attr() && canon.constant == *other.constant;
            }
            (void)other_term;
            if (!matches_dim) continue;
            enforced = any ? enforced.intersect(rcq.interval()) : rcq.interval();
            any = true;
        }
    };
    collect(lhs, rhs, c.rhs);
    collect(rhs, lhs, c.lhs);
    if (!any) return false;
    return enforced.subset_of(c.admissible());
}

}  // namespace

ImplicationResult check_implication(const GgdSet& set, const Ggd& ggd, std::size_t step_cap) {
    ImplicationResult result;
    if (!feasible(ggd.source_where, &ggd.source)) {
        result.verdict = ImplicationResult::Verdict::NotImplied;
        result.detail = "source constraints of the candidate are infeasible";
        return result;
    }
    CanonicalGraph closure = build_closure_graph(ggd);
    const Match seed = closure.source_images.at(ggd.name);
    ChaseOutcome outcome = run_chase(closure.state, set, step_cap);
    result.steps = outcome.steps;
    if (outcome.verdict == ChaseOutcome::Verdict::StepCapExceeded) {
        result.verdict = ImplicationResult::Verdict::Unknown;
        result.detail = "chase exceeded the step cap";
        return result;
    }
    if (outcome.verdict == ChaseOutcome::Verdict::Inconsistent) {
        result.verdict = ImplicationResult::Verdict::NotImplied;
        result.detail = "chase became inconsistent: " + outcome.witness;
        return result;
    }
    ChaseState& state = closure.state;
    Match canonical_seed;
    for (const auto& [var, id] : seed.binding) {
        canonical_seed.binding.emplace(var, state.find(id));
    }
    MatchSet extensions = extend_match(state.condensed(), ggd, canonical_seed, false);
    for (const auto& extension : extensions.matches) {
        bool all_guaranteed = true;
        for (const auto& c : ggd.target_having) {
            if (!constraint_guaranteed(state, c, extension)) {
                all_guaranteed = false;
                break;
            }
        }
        if (all_guaranteed) {
            result.verdict = ImplicationResult::Verdict::Implied;
            return result;
        }
    }
    result.verdict = ImplicationResult::Verdict::NotImplied;
    result.detail = extensions.empty() ? "no target match in the closure graph"
                                       : "no target match guarantees the having-constraints";
    return result;
}

namespace {

std::size_t node_index(std::vector<DependencyGraph::Node>& nodes,
                       std::map<DependencyGraph::Node, std::size_t>& index,
                       const DependencyGraph::Node& node) {
    auto it = index.find(node);
    if (it != index.end()) return it->second;
    nodes.push_back(node);
    index.emplace(node, nodes.size() - 1);
    return nodes.size() - 1;
}

std::vector<DependencyGraph::Node> positions_of(const GraphPattern& pattern,
                                                const std::vector<Constraint>& constraints,
                                                const std::string& var) {
    std::vector<DependencyGraph::Node> positions;
    const std::string* label = pattern.label_of(var);
    if (!label) return positions;
    positions.push_back({*label, ""});
    std::set<std::string> keys;
    for (const auto& c : constraints) {
        if (c.form != Constraint::Form::Dist) continue;
        if (c.lhs.is_attr() && c.lhs.var == var) keys.insert(c.lhs.key);
        if (c.rhs.is_attr() && c.rhs.var == var) keys.insert(c.rhs.key);
    }
    for (const auto& key : keys) positions.push_back({*label, key});
    return positions;
}

}  // namespace

DependencyGraph build_dependency_graph(const GgdSet& set) {
    DependencyGraph graph;
    std::map<DependencyGraph::Node, std::size_t> index;
    std::set<std::tuple<std::size_t, std::size_t, bool>> seen;
    auto add_edge = [&](const DependencyGraph::Node& from, const DependencyGraph::Node& to,
                        bool special) {
        const std::size_t f = node_index(graph.nodes, index, from);
        const std::size_t t = node_index(graph.nodes, index, to);
        if (seen.insert({f, t, special}).second) graph.edges.push_back({f, t, special});
    };

    for (const auto& ggd : set.ggds) {
        std::vector<std::string> source_vars = ggd.source.vars();
        for (const auto& var : ggd.target.vars()) {
            const bool existential = !ggd.source.has_var(var);
            auto target_positions = positions_of(ggd.target, ggd.target_having, var);
            if (existential) {
                for (const auto& src_var : source_vars) {
                    for (const auto& from :
                         positions_of(ggd.source, ggd.source_where, src_var)) {
                        for (const auto& to : target_positions) add_edge(from, to, true);
                    }
                }
            } else {
                for (const auto& from : positions_of(ggd.source, ggd.source_where, var)) {
                    for (const auto& to : target_positions) add_edge(from, to, false);
                }
            }
        }
    }

    // a special edge u->v lies on a cycle iff v reaches u
    std::vector<std::vector<std::size_t>> adjacency(graph.nodes.size());
    for (const auto& e : graph.edges) adjacency[e.from].push_back(e.to);
    auto reaches = [&](std::size_t from, std::size_t to) {
        std::vector<bool> seen_nodes(graph.nodes.size(), false);
        std::vector<std::size_t> stack{from};
        seen_nodes[from] = true;
        while (!stack.empty()) {
            std::size_t node = stack.back();
            stack.pop_back();
            if (node == to) return true;
            for (std::size_t next : adjacency[node]) {
                if (!seen_nodes[next]) {
                    seen_nodes[next] = true;
                    stack.push_back(next);
                }
            }
        }
        return false;
    };
    graph.weakly_acyclic = true;
    for (const auto& e : graph.edges) {
        if (e.special && reaches(e.to, e.from)) {
            graph.weakly_acyclic = false;
            break;
        }
    }
    return graph;
}

bool is_weakly_acyclic(const GgdSet& set) {
    return build_dependency_graph(set).weakly_acyclic;
}

std::string DependencyGraph::to_dot() const {
    std::string out = "digraph dependencies {\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out += "  n" + std::to_string(i) + " [label=\"" + nodes[i].to_text() + "\"];\n";
    }
    for (const auto& e : edges) {
        out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to);
        if (e.special) out += " [style=dashed,label=\"*\"]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace ggdr
