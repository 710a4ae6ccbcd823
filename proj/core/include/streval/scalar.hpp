#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace streval {

/// Leaf payload of the intermediate representation.
///
/// Scalars live in a normalized value space: text is trimmed, decimal
/// numbers are parsed, integer-valued reals collapse to integers, and the
/// null/empty markers are explicit variants. Two scalars extracted from
/// different serializations of the same datum compare equal.
class Scalar {
public:
    struct Null {
        bool operator==(const Null&) const = default;
        auto operator<=>(const Null&) const = default;
    };
    /// Marks an empty list/object so it survives flattening into triples.
    struct EmptyContainer {
        bool operator==(const EmptyContainer&) const = default;
        auto operator<=>(const EmptyContainer&) const = default;
    };

    enum class Kind { Text, Integer, Real, Boolean, Null, Empty };

    Scalar() : value_(Null{}) {}

    /// Classifies raw text per the normalization rules: trim, parse decimal
    /// integers/reals, case-insensitive true/false, null/nil/"" -> Null.
    /// This is the only way to obtain a Text scalar, so text never shadows
    /// a numeric or boolean rendering.
    static Scalar from_text(std::string_view raw);

    /// Wraps an identifier string as Text without reclassification. Only
    /// for label-like strings (table headers in embeddings and triples),
    /// never for data values.
    static Scalar raw_text(std::string_view value);

    static Scalar integer(std::int64_t value) { return Scalar(value); }
    /// Finite reals only; integer-valued reals within int64 range collapse
    /// to Integer, non-finite input collapses to Null.
    static Scalar real(double value);
    static Scalar boolean(bool value) { return Scalar(value); }
    static Scalar null() { return Scalar(Null{}); }
    static Scalar empty_container() { return Scalar(EmptyContainer{}); }

    Kind kind() const { return static_cast<Kind>(value_.index()); }
    bool is_text() const { return kind() == Kind::Text; }
    bool is_integer() const { return kind() == Kind::Integer; }
    bool is_real() const { return kind() == Kind::Real; }
    bool is_boolean() const { return kind() == Kind::Boolean; }
    bool is_null() const { return kind() == Kind::Null; }
    bool is_empty_container() const { return kind() == Kind::Empty; }

    const std::string& as_text() const { return std::get<std::string>(value_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
    double as_real() const { return std::get<double>(value_); }
    bool as_boolean() const { return std::get<bool>(value_); }

    /// Canonical single-token rendering: integers in decimal, reals via the
    /// shortest round-trip form, booleans as true/false, null as "null",
    /// empty containers as "[]", text verbatim.
    std::string render() const;

    /// Rendering for the line-oriented debug dump, e.g. "int:42", "text:a b".
    std::string debug() const;

    bool operator==(const Scalar& other) const = default;
    auto operator<=>(const Scalar& other) const = default;

private:
    using Repr = std::variant<std::string, std::int64_t, double, bool, Null, EmptyContainer>;

    explicit Scalar(Repr value) : value_(std::move(value)) {}

    Repr value_;
};

/// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view text);

/// True iff the byte sequence is well-formed UTF-8 (no overlongs,
/// surrogates, or values beyond U+10FFFF).
bool is_valid_utf8(std::string_view text);

} // namespace streval
