#include <cctype>

#include "parse_util.hpp"

namespace streval::detail {

namespace {

constexpr std::string_view kBegin = "\\begin{tabular}";
constexpr std::string_view kEnd = "\\end{tabular}";

} // namespace

// Single tabular environment: & separates cells, \\ terminates rows,
// \hline is ignored, the first row is the header. Supported escapes:
// \& \% \_ \# \$ \{ \} and \textbackslash{}. Unescaped % starts a
// comment. Any other command or a bare brace is fatal.

ParseOutcome parse_latex_table(std::string_view text) {
    auto begin = text.find(kBegin);
    if (begin == std::string_view::npos)
        return fail(0, "no tabular environment");
    std::size_t pos = begin + kBegin.size();

    // Column specification in braces.
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos >= text.size() || text[pos] != '{')
        return fail(pos, "missing column specification");
    int brace_depth = 0;
    for (; pos < text.size(); ++pos) {
        if (text[pos] == '{')
            ++brace_depth;
        else if (text[pos] == '}') {
            --brace_depth;
            if (brace_depth == 0) {
                ++pos;
                break;
            }
        }
    }
    if (brace_depth != 0)
        return fail(pos, "unterminated column specification");

    auto end = text.find(kEnd, pos);
    if (end == std::string_view::npos)
        return fail(pos, "missing \\end{tabular}");
    std::string_view body = text.substr(pos, end - pos);
    if (body.find(kBegin) != std::string_view::npos)
        return fail(pos, "nested tabular environment");
    if (!trim(text.substr(end + kEnd.size())).empty())
        return fail(end, "content after \\end{tabular}");

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> current;
    std::string cell;
    bool row_open = false;

    auto end_cell = [&] {
        current.push_back(cell);
        cell.clear();
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back(std::move(current));
        current.clear();
        row_open = false;
    };

    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '\\') {
            if (i + 1 >= body.size())
                return fail(pos + i, "dangling backslash");
            char next = body[i + 1];
            if (next == '\\') {
                end_row();
                ++i;
                continue;
            }
            if (next == '&' || next == '%' || next == '_' || next == '#' ||
                next == '$' || next == '{' || next == '}') {
                cell += next;
                row_open = true;
                ++i;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(next))) {
                std::size_t j = i + 1;
                while (j < body.size() && std::isalpha(static_cast<unsigned char>(body[j])))
                    ++j;
                std::string_view command = body.substr(i + 1, j - i - 1);
                if (command == "hline") {
                    i = j - 1;
                    continue;
                }
                if (command == "textbackslash") {
                    if (body.substr(j, 2) == "{}")
                        j += 2;
                    cell += '\\';
                    row_open = true;
                    i = j - 1;
                    continue;
                }
                return fail(pos + i, "unsupported command: \\" + std::string(command));
            }
            return fail(pos + i, "unsupported escape");
        }
        if (c == '&') {
            end_cell();
            row_open = true;
            continue;
        }
        if (c == '%') {
            while (i < body.size() && body[i] != '\n')
                ++i;
            continue;
        }
        if (c == '{' || c == '}')
            return fail(pos + i, "unexpected brace");
        cell += c;
        if (!std::isspace(static_cast<unsigned char>(c)))
            row_open = true;
    }
    if (row_open || !current.empty())
        end_row();

    if (rows.empty())
        return fail(begin, "empty tabular body");
    std::vector<std::string> headers = std::move(rows.front());
    rows.erase(rows.begin());
    return finish_table(std::move(headers), std::move(rows), {});
}

std::string serialize_latex_table(const TableIR& table) {
    auto escape = [](std::string_view cell) {
        std::string out;
        for (char c : cell) {
            switch (c) {
            case '\\':
                out += "\\textbackslash{}";
                break;
            case '&':
            case '%':
            case '_':
            case '#':
            case '$':
            case '{':
            case '}':
                out += '\\';
                out += c;
                break;
            case '\n':
            case '\r':
                out += ' '; // cells are single-line; lossy outside the corpus
                break;
            default:
                out += c;
            }
        }
        return out;
    };

    std::string out = "\\begin{tabular}{";
    out.append(table.headers.size(), 'l');
    out += "}\n";
    for (std::size_t j = 0; j < table.headers.size(); ++j) {
        if (j)
            out += " & ";
        out += escape(table.headers[j]);
    }
    out += " \\\\\n\\hline\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j)
                out += " & ";
            out += escape(render_cell(row[j]));
        }
        out += " \\\\\n";
    }
    out += "\\end{tabular}\n";
    return out;
}

} // namespace streval::detail
