#include "ggdr/eval.hpp"

#include <algorithm>

#include "ggdr/error.hpp"

namespace ggdr {

std::string Match::to_text() const {
    std::string out;
    for (const auto& [var, id] : binding) {
        if (!out.empty()) out += ",";
        out += var + "=" + id;
    }
    return out;
}

namespace {

struct Resolved {
    const Value* value = nullptr;
    bool missing = false;
};

Resolved resolve(const Term& term, const Match& match, const PropertyGraph& graph) {
    Resolved r;
    if (!term.is_attr()) {
        r.value = &term.constant;
        return r;
    }
    const ObjectId* id = match.lookup(term.var);
    if (!id) throw EvalError("unbound variable '" + term.var + "'");
    const GraphObject* object = graph.find(*id);
    if (!object) throw EvalError("binding references unknown object '" + *id + "'");
    r.value = object->visible_property(term.key);
    r.missing = r.value == nullptr;
    return r;
}

bool integral_distance(DistanceFn fn, const Value& a, const Value& b) {
    switch (fn) {
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

Term map_term(const Term& term, const VarMap& var_map) {
    if (!term.is_attr()) return term;
    auto it = var_map.find(term.var);
    if (it == var_map.end()) return term;
    return Term::attr(it->second, term.key);
}

std::string map_var(const std::string& var, const VarMap& var_map) {
    auto it = var_map.find(var);
    return it == var_map.end() ? var : it->second;
}

/// Plain union-find over variable names.
class VarUnion {
public:
    const std::string& find(const std::string& var) {
        auto it = parent_.find(var);
        if (it == parent_.end()) {
            parent_[var] = var;
            return parent_.find(var)->first;
        }
        if (it->second == var) return it->first;
        const std::string root = find(it->second);
        it->second = root;
        return parent_.find(root)->first;
    }

    void merge(const std::string& a, const std::string& b) {
        std::string ra = find(a);
        std::string rb = find(b);
        if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
    }

private:
    std::map<std::string, std::string> parent_;
};

}  // namespace

Tri eval_constraint(const Constraint& constraint, const Match& match,
                    const PropertyGraph& graph) {
    if (constraint.form != Constraint::Form::Dist) {
        const ObjectId* l = match.lookup(constraint.lvar);
        const ObjectId* r = match.lookup(constraint.rvar);
        if (!l || !r) throw EvalError("identity constraint over unbound variable");
        const bool equal = *l == *r;
        return (constraint.form == Constraint::Form::IdentEq) == equal ? Tri::True : Tri::False;
    }
    Resolved lhs = resolve(constraint.lhs, match, graph);
    Resolved rhs = resolve(constraint.rhs, match, graph);
    if (lhs.missing || rhs.missing) return Tri::Missing;
    const double d = distance(constraint.fn, *lhs.value, *rhs.value);
    const bool integral = integral_distance(constraint.fn, *lhs.value, *rhs.value);
    return compare_distance(d, constraint.op, constraint.threshold, integral) ? Tri::True
                                                                              : Tri::False;
}

bool satisfies_all(const std::vector<Constraint>& constraints, const Match& match,
                   const PropertyGraph& graph) {
    for (const auto& c : constraints) {
        if (eval_constraint(c, match, graph) != Tri::True) return false;
    }
    return true;
}

bool subjugates(const std::vector<Constraint>& tau, const std::vector<Constraint>& omega,
                const VarMap& var_map) {
    for (const auto& c : tau) {
        if (c.form == Constraint::Form::Dist) {
            Constraint mapped = c;
            mapped.lhs = map_term(c.lhs, var_map);
            mapped.rhs = map_term(c.rhs, var_map);
            const Dimension dim = Dimension::of(mapped);
            const DistInterval loose = mapped.admissible();
            bool witnessed = false;
            for (const auto& w : omega) {
                if (w.form != Constraint::Form::Dist) continue;
                if (!(Dimension::of(w) == dim)) continue;
                if (w.admissible().subset_of(loose)) {
                    witnessed = true;
                    break;
                }
            }
            if (!witnessed) return false;
        } else {
            const std::string l = map_var(c.lvar, var_map);
            const std::string r = map_var(c.rvar, var_map);
            bool witnessed = false;
            for (const auto& w : omega) {
                if (w.form != c.form) continue;
                if ((w.lvar == l && w.rvar == r) || (w.lvar == r && w.rvar == l)) {
                    witnessed = true;
                    break;
                }
            }
            if (!witnessed) return false;
        }
    }
    return true;
}

bool feasible(const std::vector<Constraint>& constraints, const GraphPattern* pattern) {
    VarUnion classes;
    for (const auto& c : constraints) {
        if (c.form == Constraint::Form::IdentEq) classes.merge(c.lvar, c.rvar);
    }
    for (const auto& c : constraints) {
        if (c.form == Constraint::Form::IdentNe &&
            classes.find(c.lvar) == classes.find(c.rvar)) {
            return false;
        }
    }
    if (pattern) {
        // identified variables must agree on vertex/edge kind; the id
        // spaces are disjoint
        for (const auto& c : constraints) {
            if (c.form != Constraint::Form::IdentEq) continue;
            if (pattern->has_var(c.lvar) && pattern->has_var(c.rvar) &&
                pattern->is_vertex_var(c.lvar) != pattern->is_vertex_var(c.rvar)) {
                return false;
            }
        }
    }

    // Identified variables share their attributes: canonicalize operands
    // through the union-find before grouping per distance expression.
    std::map<Dimension, DistInterval> dims;
    for (const auto& c : constraints) {
        if (c.form != Constraint::Form::Dist) continue;
        Constraint canon = c;
        if (canon.lhs.is_attr()) canon.lhs.var = classes.find(canon.lhs.var);
        if (canon.rhs.is_attr()) canon.rhs.var = classes.find(canon.rhs.var);
        const Dimension dim = Dimension::of(canon);
        auto [it, inserted] = dims.emplace(dim, canon.admissible());
        if (!inserted) it->second = it->second.intersect(canon.admissible());
        if (it->second.empty(domain_of(dim.fn))) return false;
    }
    return true;
}

}  // namespace ggdr
