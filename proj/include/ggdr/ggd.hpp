#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ggdr/graph.hpp"
#include "ggdr/interval.hpp"
#include "ggdr/value.hpp"

namespace ggdr {

/// One operand of a differential constraint: a property access `x.key`
/// or a constant.
struct Term {
    enum class Kind { Attr, Const };

    Kind kind = Kind::Const;
    std::string var;
    std::string key;
    Value constant;

    static Term attr(std::string var, std::string key) {
        Term t;
        t.kind = Kind::Attr;
        t.var = std::move(var);
        t.key = std::move(key);
        return t;
    }
    static Term constant_of(Value v) {
        Term t;
        t.kind = Kind::Const;
        t.constant = std::move(v);
        return t;
    }

    bool is_attr() const { return kind == Kind::Attr; }
    bool operator==(const Term& other) const;
    bool operator<(const Term& other) const;
    std::string to_text() const;
};

struct Constraint {
    enum class Form { Dist, IdentEq, IdentNe };

    Form form = Form::Dist;

    // Dist form
    DistanceFn fn = DistanceFn::Eq;
    Term lhs;
    Term rhs;
    CompareOp op = CompareOp::Le;
    double threshold = 0.0;

    // Ident forms
    std::string lvar;
    std::string rvar;

    static Constraint dist(DistanceFn fn, Term lhs, Term rhs, CompareOp op, double threshold);
    static Constraint ident(bool equal, std::string lvar, std::string rvar);

    std::vector<std::string> vars() const;
    bool mentions(const std::string& var) const;
    bool mentions_attr(const std::string& var, const std::string& key) const;

    /// Admissible distance interval (Dist form only).
    DistInterval admissible() const;

    bool operator==(const Constraint& other) const;
    std::string to_text() const;
};

/// Groups constraints that talk about the same distance expression:
/// same function over the same unordered operand pair.
struct Dimension {
    DistanceFn fn = DistanceFn::Eq;
    Term a;
    Term b;

    static Dimension of(const Constraint& c);
    bool operator==(const Dimension& other) const { return fn == other.fn && a == other.a && b == other.b; }
    bool operator<(const Dimension& other) const;
};

struct PatternVertex {
    std::string var;
    std::string label;  // "-" is the wildcard
};

struct PatternEdge {
    std::string var;
    std::string label;
    std::string from;
    std::string to;
};

struct GraphPattern {
    std::vector<PatternVertex> vertices;
    std::vector<PatternEdge> edges;

    bool has_var(const std::string& var) const;
    bool is_vertex_var(const std::string& var) const;
    bool is_edge_var(const std::string& var) const;
    const std::string* label_of(const std::string& var) const;
    std::vector<std::string> vars() const;  // declaration order
    bool empty() const { return vertices.empty() && edges.empty(); }

    /// Unique variables, declared endpoints.
    void validate() const;
    bool operator==(const GraphPattern& other) const;
};

/// Labels are compatible when equal or either side is the wildcard.
inline bool labels_compatible(const std::string& a, const std::string& b) {
    return a == b || a == kWildcardLabel || b == kWildcardLabel;
}

struct Ggd {
    std::string name;
    GraphPattern source;
    std::vector<Constraint> source_where;
    GraphPattern target;
    std::vector<Constraint> target_having;

    /// Target variables that also appear in the source (matched by name).
    std::vector<std::string> shared_vars() const;
    /// Target variables particular to the target side.
    std::vector<std::string> existential_vars() const;

    /// Checks constraint variables are declared, thresholds are
    /// non-negative, and shared variables carry compatible labels.
    void validate() const;
    bool operator==(const Ggd& other) const;
};

struct GgdSet {
    std::vector<Ggd> ggds;

    const Ggd* find(const std::string& name) const;
    void validate() const;  // per-GGD checks plus name uniqueness
    bool operator==(const GgdSet& other) const { return ggds == other.ggds; }
};

}  // namespace ggdr
