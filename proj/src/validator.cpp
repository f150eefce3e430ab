#include "ggdr/validator.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

namespace ggdr {

const char* to_string(PlanKind plan) {
    return plan == PlanKind::Anti ? "anti" : "outer";
}

namespace {

using Key = std::vector<ObjectId>;

Key project(const Match& match, const std::vector<std::string>& vars) {
    Key key;
    key.reserve(vars.size());
    for (const auto& var : vars) key.push_back(match.binding.at(var));
    return key;
}

Match combine(const Match& left, const Match& right) {
    Match combined = left;
    combined.binding.insert(right.binding.begin(), right.binding.end());
    return combined;
}

/// Splits the having-constraints per the anti-join plan: constraints
/// whose variables all live on the target-only side can filter the
/// target table before the join.
void split_target_constraints(const Ggd& ggd, std::vector<Constraint>& target_only,
                              std::vector<Constraint>& mixed) {
    for (const auto& c : ggd.target_having) {
        bool only_existential = true;
        for (const auto& var : c.vars()) {
            if (ggd.source.has_var(var)) {
                only_existential = false;
                break;
            }
        }
        if (only_existential) {
            target_only.push_back(c);
        } else {
            mixed.push_back(c);
        }
    }
}

std::vector<Match> violations_anti(const PropertyGraph& graph, const Ggd& ggd,
                                   const MatchSet& sources) {
    std::vector<Constraint> target_only, mixed;
    split_target_constraints(ggd, target_only, mixed);
    MatchSet targets = match_pattern(graph, ggd.target, target_only);

    const auto shared = ggd.shared_vars();
    std::map<Key, std::vector<const Match*>> by_key;
    for (const auto& t : targets.matches) by_key[project(t, shared)].push_back(&t);

    std::vector<Match> violated;
    for (const auto& h_s : sources.matches) {
        auto it = by_key.find(project(h_s, shared));
        bool witnessed = false;
        if (it != by_key.end()) {
            for (const Match* t : it->second) {
                if (satisfies_all(mixed, combine(h_s, *t), graph)) {
                    witnessed = true;
                    break;
                }
            }
        }
        if (!witnessed) violated.push_back(h_s);
    }
    return violated;
}

std::vector<Match> violations_outer(const PropertyGraph& graph, const Ggd& ggd,
                                    const MatchSet& sources) {
    MatchSet targets = match_pattern(graph, ggd.target, {});

    const auto shared = ggd.shared_vars();
    std::map<Key, std::vector<const Match*>> by_key;
    for (const auto& t : targets.matches) by_key[project(t, shared)].push_back(&t);

    // materialize the outer-joined rows, null-extending sources without
    // a target partner
    struct Row {
        const Match* source;
        Match combined;
        bool has_target;
    };
    std::vector<Row> rows;
    for (const auto& h_s : sources.matches) {
        auto it = by_key.find(project(h_s, shared));
        if (it == by_key.end()) {
            rows.push_back({&h_s, h_s, false});
            continue;
        }
        for (const Match* t : it->second) rows.push_back({&h_s, combine(h_s, *t), true});
    }

    std::map<const Match*, bool> witnessed;
    for (const auto& h_s : sources.matches) witnessed[&h_s] = false;
    for (const auto& row : rows) {
        if (row.has_target && satisfies_all(ggd.target_having, row.combined, graph)) {
            witnessed[row.source] = true;
        }
    }
    std::vector<Match> violated;
    for (const auto& h_s : sources.matches) {
        if (!witnessed[&h_s]) violated.push_back(h_s);
    }
    return violated;
}

}  // namespace

bool validate_ggd(const PropertyGraph& graph, const Ggd& ggd) {
    MatchSet sources = match_pattern(graph, ggd.source, ggd.source_where);
    for (const auto& h_s : sources.matches) {
        if (extend_match(graph, ggd, h_s, /*apply_target_constraints=*/true).empty()) {
            return false;
        }
    }
    return true;
}

ViolationReport find_violations(const PropertyGraph& graph, const Ggd& ggd, PlanKind plan) {
    const auto start = std::chrono::steady_clock::now();
    ViolationReport report;
    report.ggd = ggd.name;
    report.plan = plan;

    MatchSet sources = match_pattern(graph, ggd.source, ggd.source_where);
    report.source_matches = sources.size();
    report.violated = plan == PlanKind::Anti ? violations_anti(graph, ggd, sources)
                                             : violations_outer(graph, ggd, sources);

    const auto end = std::chrono::steady_clock::now();
    report.ms = std::chrono::duration<double, std::milli>(end - start).count();
    return report;
}

std::vector<ViolationReport> validate_set(const PropertyGraph& graph, const GgdSet& set,
                                          PlanKind plan, std::size_t workers) {
    std::vector<ViolationReport> reports(set.ggds.size());
    if (workers <= 1 || set.ggds.size() <= 1) {
        for (std::size_t i = 0; i < set.ggds.size(); ++i) {
            reports[i] = find_violations(graph, set.ggds[i], plan);
        }
        return reports;
    }
    workers = std::min(workers, set.ggds.size());
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < set.ggds.size(); i += workers) {
                    reports[i] = find_violations(graph, set.ggds[i], plan);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return reports;
}

}  // namespace ggdr
