#include <cctype>

#include "parse_util.hpp"

namespace streval::detail {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

/// Splits one pipe-table row into unescaped cell texts. The leading pipe
/// is required; a trailing unescaped pipe is consumed when present.
std::optional<std::vector<std::string>> split_row(std::string_view line) {
    std::string_view body = trim(line);
    if (body.empty() || body.front() != '|')
        return std::nullopt;
    body.remove_prefix(1);

    std::vector<std::string> cells;
    std::string cell;
    bool closed = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '\\' && i + 1 < body.size() && (body[i + 1] == '|' || body[i + 1] == '\\')) {
            cell += body[i + 1];
            ++i;
            continue;
        }
        if (c == '|') {
            cells.push_back(cell);
            cell.clear();
            closed = i + 1 == body.size();
            continue;
        }
        cell += c;
        closed = false;
    }
    if (!closed)
        cells.push_back(cell);
    return cells;
}

bool is_separator_cell(std::string_view cell) {
    std::string_view body = trim(cell);
    if (!body.empty() && body.front() == ':')
        body.remove_prefix(1);
    if (!body.empty() && body.back() == ':')
        body.remove_suffix(1);
    if (body.empty())
        return false;
    for (char c : body)
        if (c != '-')
            return false;
    return true;
}

} // namespace

ParseOutcome parse_markdown_table(std::string_view text) {
    auto lines = split_lines(text);

    std::vector<std::vector<std::string>> table_rows;
    std::size_t i = 0;
    while (i < lines.size() && trim(lines[i]).empty())
        ++i;
    if (i == lines.size())
        return fail(0, "empty input");
    for (; i < lines.size(); ++i) {
        std::string_view line = trim(lines[i]);
        if (line.empty())
            break; // blank line ends the table block
        auto cells = split_row(lines[i]);
        if (!cells)
            return fail(0, "line is not a table row: " + std::string(line));
        table_rows.push_back(std::move(*cells));
    }
    for (; i < lines.size(); ++i) {
        if (!trim(lines[i]).empty())
            return fail(0, "content after the table block");
    }

    if (table_rows.size() < 2)
        return fail(0, "missing separator row");
    const auto& sep = table_rows[1];
    if (sep.size() != table_rows[0].size())
        return fail(0, "separator row width does not match header");
    for (const auto& cell : sep) {
        if (!is_separator_cell(cell))
            return fail(0, "malformed separator row");
    }

    std::vector<std::string> headers = std::move(table_rows[0]);
    std::vector<std::vector<std::string>> rows(
        std::make_move_iterator(table_rows.begin() + 2),
        std::make_move_iterator(table_rows.end()));
    return finish_table(std::move(headers), std::move(rows), {});
}

std::string serialize_markdown_table(const TableIR& table) {
    auto escape = [](std::string_view cell) {
        std::string out;
        for (char c : cell) {
            if (c == '\\')
                out += "\\\\";
            else if (c == '|')
                out += "\\|";
            else if (c == '\n' || c == '\r')
                out += ' '; // pipe tables are single-line; lossy outside the corpus
            else
                out += c;
        }
        return out;
    };

    std::string out;
    auto emit_row = [&](const std::vector<std::string>& cells) {
        out += '|';
        for (const auto& c : cells) {
            out += ' ';
            out += c;
            out += " |";
        }
        out += '\n';
    };

    std::vector<std::string> headers;
    headers.reserve(table.headers.size());
    for (const auto& h : table.headers)
        headers.push_back(escape(h));
    emit_row(headers);

    std::vector<std::string> separators(table.headers.size(), "---");
    emit_row(separators);

    for (const auto& row : table.rows) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (const auto& cell : row)
            cells.push_back(escape(render_cell(cell)));
        emit_row(cells);
    }
    return out;
}

} // namespace streval::detail
