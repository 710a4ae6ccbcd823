#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace streval {

/// The eight supported serializations. Json/Xml trees carry hierarchical
/// data; the other six carry grids (JsonList/XmlList are flattened record
/// lists).
enum class Format {
    JsonTree,
    XmlTree,
    Csv,
    HtmlTable,
    MarkdownTable,
    LatexTable,
    JsonList,
    XmlList,
};

enum class Track { Structure, Table };

constexpr std::array<Format, 8> all_formats() {
    return {Format::JsonTree,      Format::XmlTree,    Format::Csv,
            Format::HtmlTable,     Format::MarkdownTable, Format::LatexTable,
            Format::JsonList,      Format::XmlList};
}

constexpr Track track_of(Format f) {
    return (f == Format::JsonTree || f == Format::XmlTree) ? Track::Structure
                                                           : Track::Table;
}

/// Stable machine token, used in manifests, results and CLI flags.
std::string_view format_token(Format f);
std::optional<Format> format_from_token(std::string_view token);

/// Human-readable name used in prompts ("JSON", "Markdown table", ...).
std::string_view format_display_name(Format f);

std::string_view track_token(Track t);

} // namespace streval
