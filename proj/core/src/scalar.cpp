#include "streval/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace streval {

std::string_view trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
        --end;
    return text.substr(begin, end - begin);
}

bool is_valid_utf8(std::string_view text) {
    const auto* p = reinterpret_cast<const unsigned char*>(text.data());
    std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = p[i];
        if (c < 0x80) {
            ++i;
            continue;
        }
        int len;
        std::uint32_t cp;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n)
            return false;
        for (int k = 1; k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80)
                return false;
            cp = (cp << 6) | (p[i + k] & 0x3F);
        }
        if (len == 2 && cp < 0x80)
            return false;
        if (len == 3 && cp < 0x800)
            return false;
        if (len == 4 && cp < 0x10000)
            return false;
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            return false;
        i += len;
    }
    return true;
}

namespace {

bool equals_ignore_case(std::string_view a, std::string_view b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

bool parse_integer(std::string_view text, std::int64_t& out) {
    if (text.empty())
        return false;
    std::string_view body = text;
    if (body.front() == '+')
        body.remove_prefix(1);
    if (body.empty())
        return false;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
    return ec == std::errc() && ptr == body.data() + body.size();
}

bool parse_real(std::string_view text, double& out) {
    if (text.empty())
        return false;
    // strtod accepts hex floats and inf/nan; restrict to plain decimals.
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
              c == '.' || c == 'e' || c == 'E'))
            return false;
    }
    std::string buf(text);
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size())
        return false;
    if (!std::isfinite(v))
        return false;
    out = v;
    return true;
}

} // namespace

Scalar Scalar::from_text(std::string_view raw) {
    std::string_view body = trim(raw);
    if (body.empty())
        return null();
    if (equals_ignore_case(body, "null") || equals_ignore_case(body, "nil"))
        return null();
    if (equals_ignore_case(body, "true"))
        return boolean(true);
    if (equals_ignore_case(body, "false"))
        return boolean(false);
    std::int64_t i = 0;
    if (parse_integer(body, i))
        return integer(i);
    double d = 0.0;
    if (parse_real(body, d))
        return real(d);
    return Scalar(Repr(std::in_place_type<std::string>, body));
}

Scalar Scalar::raw_text(std::string_view value) {
    return Scalar(Repr(std::in_place_type<std::string>, trim(value)));
}

Scalar Scalar::real(double value) {
    if (!std::isfinite(value))
        return null();
    double rounded = std::nearbyint(value);
    if (rounded == value &&
        value >= -9223372036854775808.0 && value < 9223372036854775808.0) {
        return integer(static_cast<std::int64_t>(value));
    }
    return Scalar(Repr(std::in_place_type<double>, value));
}

namespace {

std::string render_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

std::string Scalar::render() const {
    switch (kind()) {
    case Kind::Text:
        return as_text();
    case Kind::Integer:
        return std::to_string(as_integer());
    case Kind::Real:
        return render_double(as_real());
    case Kind::Boolean:
        return as_boolean() ? "true" : "false";
    case Kind::Null:
        return "null";
    case Kind::Empty:
        return "[]";
    }
    return {};
}

std::string Scalar::debug() const {
    switch (kind()) {
    case Kind::Text: {
        std::string out = "text:";
        for (char c : as_text()) {
            if (c == '\n')
                out += "\\n";
            else if (c == '\r')
                out += "\\r";
            else if (c == '\\')
                out += "\\\\";
            else
                out += c;
        }
        return out;
    }
    case Kind::Integer:
        return "int:" + std::to_string(as_integer());
    case Kind::Real:
        return "real:" + render_double(as_real());
    case Kind::Boolean:
        return as_boolean() ? "bool:true" : "bool:false";
    case Kind::Null:
        return "null";
    case Kind::Empty:
        return "empty";
    }
    return {};
}

} // namespace streval
