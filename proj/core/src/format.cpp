#include "streval/format.hpp"

namespace streval {

std::string_view format_token(Format f) {
    switch (f) {
    case Format::JsonTree:
        return "json_tree";
    case Format::XmlTree:
        return "xml_tree";
    case Format::Csv:
        return "csv";
    case Format::HtmlTable:
        return "html_table";
    case Format::MarkdownTable:
        return "markdown_table";
    case Format::LatexTable:
        return "latex_table";
    case Format::JsonList:
        return "json_list";
    case Format::XmlList:
        return "xml_list";
    }
    return "?";
}

std::optional<Format> format_from_token(std::string_view token) {
    for (Format f : all_formats())
        if (format_token(f) == token)
            return f;
    return std::nullopt;
}

std::string_view format_display_name(Format f) {
    switch (f) {
    case Format::JsonTree:
        return "JSON";
    case Format::XmlTree:
        return "XML";
    case Format::Csv:
        return "CSV";
    case Format::HtmlTable:
        return "HTML table";
    case Format::MarkdownTable:
        return "Markdown table";
    case Format::LatexTable:
        return "LaTeX table";
    case Format::JsonList:
        return "JSON list of records";
    case Format::XmlList:
        return "XML list of records";
    }
    return "?";
}

std::string_view track_token(Track t) {
    return t == Track::Structure ? "structure" : "table";
}

} // namespace streval
