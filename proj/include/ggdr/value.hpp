#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace ggdr {

enum class ValueKind { Text, Float, Int, Bool };

const char* to_string(ValueKind kind);

/// A property value: text, 64-bit float, 64-bit signed integer, or boolean.
/// Values of different kinds never compare equal; floats are finite.
class Value {
public:
    Value() : data_(std::string{}) {}
    explicit Value(std::string text) : data_(std::move(text)) {}
    explicit Value(const char* text) : data_(std::string(text)) {}
    explicit Value(double number);
    explicit Value(std::int64_t number) : data_(number) {}
    explicit Value(int number) : data_(static_cast<std::int64_t>(number)) {}
    explicit Value(bool flag) : data_(flag) {}

    ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
    bool is_text() const { return kind() == ValueKind::Text; }
    bool is_number() const { return kind() == ValueKind::Float || kind() == ValueKind::Int; }

    const std::string& text() const { return std::get<std::string>(data_); }
    double number() const;
    std::int64_t integer() const { return std::get<std::int64_t>(data_); }
    bool boolean() const { return std::get<bool>(data_); }

    bool operator==(const Value& other) const { return data_ == other.data_; }
    bool operator!=(const Value& other) const { return !(*this == other); }
    bool operator<(const Value& other) const { return data_ < other.data_; }

    /// Canonical text form; floats always carry a '.' or exponent so the
    /// kind survives a print/parse round trip.
    std::string to_text() const;

    /// Typing rule for file ingestion: integer, then float, then boolean
    /// literals true|false, else text. Rejects NaN/infinity.
    static Value parse(const std::string& raw);

private:
    std::variant<std::string, double, std::int64_t, bool> data_;
};

}  // namespace ggdr
