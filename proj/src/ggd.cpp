#include "ggdr/ggd.hpp"

#include <algorithm>
#include <stdexcept>

#include "ggdr/error.hpp"

namespace ggdr {

bool Term::operator==(const Term& other) const {
    if (kind != other.kind) return false;
    if (kind == Kind::Attr) return var == other.var && key == other.key;
    return constant == other.constant;
}

bool Term::operator<(const Term& other) const {
    if (kind != other.kind) return kind < other.kind;
    if (kind == Kind::Attr) return std::tie(var, key) < std::tie(other.var, other.key);
    return constant < other.constant;
}

std::string Term::to_text() const {
    if (kind == Kind::Attr) return var + "." + key;
    if (constant.kind() == ValueKind::Text) {
        std::string escaped;
        for (char c : constant.text()) {
            if (c == '"' || c == '\\') escaped.push_back('\\');
            escaped.push_back(c);
        }
        return "\"" + escaped + "\"";
    }
    return constant.to_text();
}

Constraint Constraint::dist(DistanceFn fn, Term lhs, Term rhs, CompareOp op, double threshold) {
    Constraint c;
    c.form = Form::Dist;
    c.fn = fn;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.op = op;
    c.threshold = threshold;
    return c;
}

Constraint Constraint::ident(bool equal, std::string lvar, std::string rvar) {
    Constraint c;
    c.form = equal ? Form::IdentEq : Form::IdentNe;
    c.lvar = std::move(lvar);
    c.rvar = std::move(rvar);
    return c;
}

std::vector<std::string> Constraint::vars() const {
    std::vector<std::string> out;
    if (form == Form::Dist) {
        if (lhs.is_attr()) out.push_back(lhs.var);
        if (rhs.is_attr() && (out.empty() || out.front() != rhs.var)) out.push_back(rhs.var);
    } else {
        out.push_back(lvar);
        if (rvar != lvar) out.push_back(rvar);
    }
    return out;
}

bool Constraint::mentions(const std::string& var) const {
    for (const auto& v : vars()) {
        if (v == var) return true;
    }
    return false;
}

bool Constraint::mentions_attr(const std::string& var, const std::string& key) const {
    if (form != Form::Dist) return false;
    return (lhs.is_attr() && lhs.var == var && lhs.key == key) ||
           (rhs.is_attr() && rhs.var == var && rhs.key == key);
}

DistInterval Constraint::admissible() const {
    return DistInterval::of(op, threshold);
}

bool Constraint::operator==(const Constraint& other) const {
    if (form != other.form) return false;
    if (form == Form::Dist) {
        return fn == other.fn && lhs == other.lhs && rhs == other.rhs && op == other.op &&
               threshold == other.threshold;
    }
    return lvar == other.lvar && rvar == other.rvar;
}

std::string Constraint::to_text() const {
    if (form == Form::IdentEq) return lvar + " = " + rvar;
    if (form == Form::IdentNe) return lvar + " != " + rvar;
    return std::string(to_string(fn)) + "(" + lhs.to_text() + ", " + rhs.to_text() + ") " +
           to_string(op) + " " + Value(threshold).to_text();
}

Dimension Dimension::of(const Constraint& c) {
    Dimension d;
    d.fn = c.fn;
    d.a = c.lhs;
    d.b = c.rhs;
    if (d.b < d.a) std::swap(d.a, d.b);  // distances are symmetric
    return d;
}

bool Dimension::operator<(const Dimension& other) const {
    if (fn != other.fn) return fn < other.fn;
    if (!(a == other.a)) return a < other.a;
    return b < other.b;
}

bool GraphPattern::has_var(const std::string& var) const {
    return is_vertex_var(var) || is_edge_var(var);
}

bool GraphPattern::is_vertex_var(const std::string& var) const {
    return std::any_of(vertices.begin(), vertices.end(),
                       [&](const PatternVertex& v) { return v.var == var; });
}

bool GraphPattern::is_edge_var(const std::string& var) const {
    return std::any_of(edges.begin(), edges.end(),
                       [&](const PatternEdge& e) { return e.var == var; });
}

const std::string* GraphPattern::label_of(const std::string& var) const {
    for (const auto& v : vertices) {
        if (v.var == var) return &v.label;
    }
    for (const auto& e : edges) {
        if (e.var == var) return &e.label;
    }
    return nullptr;
}

std::vector<std::string> GraphPattern::vars() const {
    std::vector<std::string> out;
    for (const auto& v : vertices) out.push_back(v.var);
    for (const auto& e : edges) out.push_back(e.var);
    return out;
}

void GraphPattern::validate() const {
    std::set<std::string> seen;
    for (const auto& v : vertices) {
        if (!seen.insert(v.var).second) {
            throw IntegrityError("duplicate pattern variable '" + v.var + "'");
        }
    }
    for (const auto& e : edges) {
        if (!seen.insert(e.var).second) {
            throw IntegrityError("duplicate pattern variable '" + e.var + "'");
        }
    }
    for (const auto& e : edges) {
        if (!is_vertex_var(e.from)) {
            throw IntegrityError("edge '" + e.var + "' references undeclared vertex '" + e.from +
                                 "'");
        }
        if (!is_vertex_var(e.to)) {
            throw IntegrityError("edge '" + e.var + "' references undeclared vertex '" + e.to +
                                 "'");
        }
    }
}

bool GraphPattern::operator==(const GraphPattern& other) const {
    if (vertices.size() != other.vertices.size() || edges.size() != other.edges.size()) {
        return false;
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].var != other.vertices[i].var ||
            vertices[i].label != other.vertices[i].label) {
            return false;
        }
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& a = edges[i];
        const auto& b = other.edges[i];
        if (a.var != b.var || a.label != b.label || a.from != b.from || a.to != b.to) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> Ggd::shared_vars() const {
    std::vector<std::string> out;
    for (const auto& var : target.vars()) {
        if (source.has_var(var)) out.push_back(var);
    }
    return out;
}

std::vector<std::string> Ggd::existential_vars() const {
    std::vector<std::string> out;
    for (const auto& var : target.vars()) {
        if (!source.has_var(var)) out.push_back(var);
    }
    return out;
}

namespace {

void validate_constraints(const std::vector<Constraint>& constraints, const GraphPattern& scope,
                          const GraphPattern* source_scope, const std::string& ggd,
                          const char* block) {
    auto declared = [&](const std::string& var) {
        return scope.has_var(var) || (source_scope && source_scope->has_var(var));
    };
    for (const auto& c : constraints) {
        for (const auto& var : c.vars()) {
            if (!declared(var)) {
                throw IntegrityError("ggd '" + ggd + "': " + block + " constraint references "
                                     "undeclared variable '" + var + "'");
            }
        }
        if (c.form == Constraint::Form::Dist) {
            if (c.threshold < 0) {
                throw IntegrityError("ggd '" + ggd + "': negative threshold in " +
                                     c.to_text());
            }
            if (!c.lhs.is_attr() && !c.rhs.is_attr()) {
                throw IntegrityError("ggd '" + ggd + "': constraint compares two constants: " +
                                     c.to_text());
            }
        }
    }
}

}  // namespace

void Ggd::validate() const {
    source.validate();
    target.validate();
    for (const auto& var : shared_vars()) {
        const std::string* source_label = source.label_of(var);
        const std::string* target_label = target.label_of(var);
        if (source.is_vertex_var(var) != target.is_vertex_var(var)) {
            throw IntegrityError("ggd '" + name + "': shared variable '" + var +
                                 "' is a vertex on one side and an edge on the other");
        }
        if (!labels_compatible(*source_label, *target_label)) {
            throw IntegrityError("ggd '" + name + "': shared variable '" + var +
                                 "' has clashing labels '" + *source_label + "' and '" +
                                 *target_label + "'");
        }
    }
    validate_constraints(source_where, source, nullptr, name, "where");
    validate_constraints(target_having, target, &source, name, "having");
}

bool Ggd::operator==(const Ggd& other) const {
    return name == other.name && source == other.source && target == other.target &&
           source_where == other.source_where && target_having == other.target_having;
}

const Ggd* GgdSet::find(const std::string& name) const {
    for (const auto& ggd : ggds) {
        if (ggd.name == name) return &ggd;
    }
    return nullptr;
}

void GgdSet::validate() const {
    std::set<std::string> names;
    for (const auto& ggd : ggds) {
        if (!names.insert(ggd.name).second) {
            throw IntegrityError("duplicate ggd name '" + ggd.name + "'");
        }
        ggd.validate();
    }
}

}  // namespace ggdr
