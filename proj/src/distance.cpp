#include "ggdr/distance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "ggdr/error.hpp"

namespace ggdr {

const char* to_string(DistanceFn fn) {
    switch (fn) {
        case DistanceFn::AbsDiff: return "absdiff";
        case DistanceFn::Edit: return "edit";
        case DistanceFn::Jaccard: return "jaccard";
        case DistanceFn::Eq: return "eq";
    }
    return "?";
}

std::optional<DistanceFn> parse_distance_fn(std::string_view name) {
    if (name == "absdiff") return DistanceFn::AbsDiff;
    if (name == "edit") return DistanceFn::Edit;
    if (name == "jaccard") return DistanceFn::Jaccard;
    if (name == "eq") return DistanceFn::Eq;
    return std::nullopt;
}

DistanceDomain domain_of(DistanceFn fn) {
    switch (fn) {
        case DistanceFn::AbsDiff: return DistanceDomain::NonNegReal;
        case DistanceFn::Edit: return DistanceDomain::NonNegInt;
        case DistanceFn::Jaccard: return DistanceDomain::UnitReal;
        case DistanceFn::Eq: return DistanceDomain::Binary;
    }
    return DistanceDomain::NonNegReal;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t next_diag = row[j];
            std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
            diag = next_diag;
        }
    }
    return row[b.size()];
}

std::size_t bounded_edit_distance(std::string_view a, std::string_view b, std::size_t cap) {
    if (a.size() < b.size()) std::swap(a, b);
    if (a.size() - b.size() > cap) return cap + 1;
    const std::size_t inf = std::numeric_limits<std::size_t>::max() / 2;
    std::vector<std::size_t> row(b.size() + 1, inf);
    for (std::size_t j = 0; j <= std::min(b.size(), cap); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        const std::size_t lo = i > cap ? i - cap : 1;
        const std::size_t hi = std::min(b.size(), i + cap);
        std::size_t diag = lo > 1 ? row[lo - 1] : row[0];
        if (lo == 1) row[0] = i <= cap ? i : inf;
        std::size_t best = inf;
        for (std::size_t j = lo; j <= hi; ++j) {
            std::size_t next_diag = row[j];
            std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            std::size_t left = j > lo ? row[j - 1] : (lo == 1 ? row[0] : inf);
            row[j] = std::min({next_diag + 1, left + 1, diag + cost});
            diag = next_diag;
            best = std::min(best, row[j]);
        }
        if (lo > 1) row[lo - 1] = inf;
        if (hi < b.size()) row[hi + 1] = inf;
        if (best > cap) return cap + 1;
    }
    return row[b.size()] > cap ? cap + 1 : row[b.size()];
}

std::vector<std::string> jaccard_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) tokens.push_back(current);
            current.clear();
        } else {
            current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!current.empty()) tokens.push_back(current);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    return tokens;
}

double jaccard_distance(std::string_view a, std::string_view b) {
    auto ta = jaccard_tokens(a);
    auto tb = jaccard_tokens(b);
    if (ta.empty() && tb.empty()) return 0.0;
    std::vector<std::string> inter;
    std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(inter));
    const double union_size = static_cast<double>(ta.size() + tb.size() - inter.size());
    return 1.0 - static_cast<double>(inter.size()) / union_size;
}

double distance(DistanceFn fn, const Value& a, const Value& b) {
    switch (fn) {
        case DistanceFn::AbsDiff:
            if (!a.is_number() || !b.is_number()) {
                throw EvalError(std::string("absdiff requires numbers, got ") +
                                to_string(a.kind()) + " and " + to_string(b.kind()));
            }
            return std::fabs(a.number() - b.number());
        case DistanceFn::Edit:
            if (!a.is_text() || !b.is_text()) {
                throw EvalError(std::string("edit requires text, got ") + to_string(a.kind()) +
                                " and " + to_string(b.kind()));
            }
            return static_cast<double>(edit_distance(a.text(), b.text()));
        case DistanceFn::Jaccard:
            if (!a.is_text() || !b.is_text()) {
                throw EvalError(std::string("jaccard requires text, got ") +
                                to_string(a.kind()) + " and " + to_string(b.kind()));
            }
            return jaccard_distance(a.text(), b.text());
        case DistanceFn::Eq:
            return a == b ? 0.0 : 1.0;
    }
    throw EvalError("unknown distance function");
}

}  // namespace ggdr
