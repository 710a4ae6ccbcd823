#include "streval/parse.hpp"

#include <set>
#include <stdexcept>

#include "parse_util.hpp"

namespace streval {

namespace detail {

ParseOutcome finish_table_scalars(std::vector<std::string> headers,
                                  std::vector<std::vector<Scalar>> rows,
                                  std::vector<Diagnostic> diags) {
    for (auto& h : headers)
        h = std::string(trim(h));
    std::set<std::string_view> seen;
    for (const auto& h : headers) {
        if (h.empty()) {
            add_fatal(diags, 0, "empty header cell");
            return fail(std::move(diags));
        }
        if (!seen.insert(h).second) {
            add_fatal(diags, 0, "duplicate header: " + h);
            return fail(std::move(diags));
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != headers.size()) {
            add_fatal(diags, 0,
                      "row " + std::to_string(i) + " has " +
                          std::to_string(rows[i].size()) + " cells, expected " +
                          std::to_string(headers.size()));
            return fail(std::move(diags));
        }
    }
    ParseOutcome out;
    out.result = IRDoc(TableIR{std::move(headers), std::move(rows)});
    out.diagnostics = std::move(diags);
    return out;
}

ParseOutcome finish_table(std::vector<std::string> headers,
                          std::vector<std::vector<std::string>> raw_rows,
                          std::vector<Diagnostic> diags) {
    std::vector<std::vector<Scalar>> rows;
    rows.reserve(raw_rows.size());
    for (const auto& raw : raw_rows) {
        std::vector<Scalar> row;
        row.reserve(raw.size());
        for (const auto& cell : raw)
            row.push_back(Scalar::from_text(cell));
        rows.push_back(std::move(row));
    }
    return finish_table_scalars(std::move(headers), std::move(rows), std::move(diags));
}

std::string render_cell(const Scalar& cell) {
    if (cell.is_null())
        return "";
    if (cell.is_empty_container())
        return "";
    return cell.render();
}

} // namespace detail

ParseOutcome parse(Format format, std::string_view text) {
    if (!is_valid_utf8(text))
        throw std::invalid_argument("parse: input is not valid UTF-8");
    try {
        switch (format) {
        case Format::JsonTree:
            return detail::parse_json_tree(text);
        case Format::XmlTree:
            return detail::parse_xml_tree(text);
        case Format::Csv:
            return detail::parse_csv(text);
        case Format::HtmlTable:
            return detail::parse_html_table(text);
        case Format::MarkdownTable:
            return detail::parse_markdown_table(text);
        case Format::LatexTable:
            return detail::parse_latex_table(text);
        case Format::JsonList:
            return detail::parse_json_list(text);
        case Format::XmlList:
            return detail::parse_xml_list(text);
        }
        return detail::fail(0, "unknown format");
    } catch (const std::exception& e) {
        // Parsers report malformed input through diagnostics; an escaped
        // exception still honours the Bottom contract.
        return detail::fail(0, std::string("internal parser error: ") + e.what());
    }
}

std::string serialize(Format format, const IRDoc& doc) {
    if (doc.is_bottom())
        throw std::invalid_argument("serialize: cannot serialize Bottom");
    const bool needs_tree = track_of(format) == Track::Structure;
    if (needs_tree != doc.is_tree())
        throw std::invalid_argument("serialize: document track does not match format");
    switch (format) {
    case Format::JsonTree:
        return detail::serialize_json_tree(doc.tree());
    case Format::XmlTree:
        return detail::serialize_xml_tree(doc.tree());
    case Format::Csv:
        return detail::serialize_csv(doc.table());
    case Format::HtmlTable:
        return detail::serialize_html_table(doc.table());
    case Format::MarkdownTable:
        return detail::serialize_markdown_table(doc.table());
    case Format::LatexTable:
        return detail::serialize_latex_table(doc.table());
    case Format::JsonList:
        return detail::serialize_json_list(doc.table());
    case Format::XmlList:
        return detail::serialize_xml_list(doc.table());
    }
    throw std::invalid_argument("serialize: unknown format");
}

} // namespace streval
