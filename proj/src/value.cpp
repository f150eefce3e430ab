#include "ggdr/value.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ggdr {

const char* to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::Text: return "text";
        case ValueKind::Float: return "float";
        case ValueKind::Int: return "int";
        case ValueKind::Bool: return "bool";
    }
    return "?";
}

Value::Value(double number) : data_(number) {
    if (!std::isfinite(number)) {
        throw std::invalid_argument("non-finite number is not a valid property value");
    }
}

double Value::number() const {
    if (kind() == ValueKind::Int) return static_cast<double>(std::get<std::int64_t>(data_));
    return std::get<double>(data_);
}

std::string Value::to_text() const {
    switch (kind()) {
        case ValueKind::Text:
            return text();
        case ValueKind::Bool:
            return boolean() ? "true" : "false";
        case ValueKind::Int: {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), integer());
            return std::string(buf, ptr);
        }
        case ValueKind::Float: {
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), std::get<double>(data_));
            std::string out(buf, ptr);
            if (out.find_first_of(".eE") == std::string::npos) out += ".0";
            return out;
        }
    }
    return {};
}

Value Value::parse(const std::string& raw) {
    if (!raw.empty() && raw.front() != ' ') {
        const char* first = raw.data();
        const char* last = raw.data() + raw.size();
        std::int64_t i = 0;
        auto ir = std::from_chars(first, last, i);
        if (ir.ec == std::errc{} && ir.ptr == last) return Value(i);
        double d = 0;
        auto dr = std::from_chars(first, last, d);
        if (dr.ec == std::errc{} && dr.ptr == last && std::isfinite(d)) return Value(d);
    }
    if (raw == "true") return Value(true);
    if (raw == "false") return Value(false);
    return Value(raw);
}

}  // namespace ggdr
