#pragma once

// Internal helpers shared by the per-format parsers. Not installed.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streval/parse.hpp"

namespace streval::detail {

inline constexpr std::size_t kMaxNestingDepth = 512;

inline void add_fatal(std::vector<Diagnostic>& diags, std::size_t pos, std::string msg) {
    diags.push_back(Diagnostic{pos, std::move(msg), true});
}

inline ParseOutcome fail(std::vector<Diagnostic> diags) {
    ParseOutcome out;
    std::string msg = diags.empty() ? std::string("parse failed") : diags.front().message;
    out.result = IRDoc::bottom(std::move(msg));
    out.diagnostics = std::move(diags);
    return out;
}

inline ParseOutcome fail(std::size_t pos, std::string msg) {
    std::vector<Diagnostic> diags;
    add_fatal(diags, pos, std::move(msg));
    return fail(std::move(diags));
}

/// Validates headers (non-empty, unique after trimming) and row shapes,
/// then builds the grid with normalized cells. Cells arrive as raw text.
ParseOutcome finish_table(std::vector<std::string> headers,
                          std::vector<std::vector<std::string>> raw_rows,
                          std::vector<Diagnostic> diags);

/// Same, for rows whose cells are already normalized scalars.
ParseOutcome finish_table_scalars(std::vector<std::string> headers,
                                  std::vector<std::vector<Scalar>> rows,
                                  std::vector<Diagnostic> diags);

// Per-format parse entry points (text is already UTF-8 validated).
ParseOutcome parse_json_tree(std::string_view text);
ParseOutcome parse_json_list(std::string_view text);
ParseOutcome parse_xml_tree(std::string_view text);
ParseOutcome parse_xml_list(std::string_view text);
ParseOutcome parse_csv(std::string_view text);
ParseOutcome parse_markdown_table(std::string_view text);
ParseOutcome parse_latex_table(std::string_view text);
ParseOutcome parse_html_table(std::string_view text);

// Per-format serializers (document variant already checked).
std::string serialize_json_tree(const TreeNode& tree);
std::string serialize_json_list(const TableIR& table);
std::string serialize_xml_tree(const TreeNode& tree);
std::string serialize_xml_list(const TableIR& table);
std::string serialize_csv(const TableIR& table);
std::string serialize_markdown_table(const TableIR& table);
std::string serialize_latex_table(const TableIR& table);
std::string serialize_html_table(const TableIR& table);

/// Cell rendering shared by the grid serializers: null becomes the empty
/// cell, everything else uses the canonical scalar rendering.
std::string render_cell(const Scalar& cell);

} // namespace streval::detail
