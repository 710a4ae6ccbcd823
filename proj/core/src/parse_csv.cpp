#include "parse_util.hpp"

namespace streval::detail {

// RFC 4180 dialect: comma delimiter, double-quote escaping, first row is
// the header, LF (or CRLF) row endings. Ragged rows and stray quotes are
// fatal; leniency would make the parse non-deterministic across inputs
// that differ in meaning.

ParseOutcome parse_csv(std::string_view text) {
    if (trim(text).empty())
        return fail(0, "empty input");

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> current;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool row_has_content = false;

    auto end_field = [&] {
        current.push_back(field);
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(current));
        current.clear();
        row_has_content = false;
    };

    const std::size_t n = text.size();
    for (std::size_t i = 0; i < n; ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || field_was_quoted)
                return fail(i, "unexpected quote inside unquoted field");
            in_quotes = true;
            field_was_quoted = true;
            row_has_content = true;
            break;
        case ',':
            end_field();
            row_has_content = true;
            break;
        case '\r':
            if (i + 1 < n && text[i + 1] == '\n')
                ++i;
            end_row();
            break;
        case '\n':
            end_row();
            break;
        default:
            if (field_was_quoted)
                return fail(i, "content after closing quote");
            field += c;
            row_has_content = true;
        }
    }
    if (in_quotes)
        return fail(n, "unterminated quoted field");
    if (row_has_content || !current.empty())
        end_row();

    if (rows.empty())
        return fail(0, "no rows");
    std::vector<std::string> headers = std::move(rows.front());
    rows.erase(rows.begin());
    return finish_table(std::move(headers), std::move(rows), {});
}

std::string serialize_csv(const TableIR& table) {
    auto escape = [](std::string_view cell) {
        bool needs_quotes = cell.find_first_of(",\"\n\r") != std::string_view::npos;
        if (!needs_quotes)
            return std::string(cell);
        std::string out = "\"";
        for (char c : cell) {
            if (c == '"')
                out += "\"\"";
            else
                out += c;
        }
        out += '"';
        return out;
    };

    std::string out;
    for (std::size_t j = 0; j < table.headers.size(); ++j) {
        if (j)
            out += ',';
        out += escape(table.headers[j]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j)
                out += ',';
            out += escape(render_cell(row[j]));
        }
        out += '\n';
    }
    return out;
}

} // namespace streval::detail
