#include <cctype>

#include "parse_util.hpp"

namespace streval {

namespace {

/// Returns the body of the first fenced code block, if any.
std::optional<std::string_view> strip_code_fence(std::string_view text) {
    auto open = text.find("```");
    if (open == std::string_view::npos)
        return std::nullopt;
    auto body_start = text.find('\n', open);
    if (body_start == std::string_view::npos)
        return std::nullopt;
    ++body_start;
    auto close = text.find("```", body_start);
    if (close == std::string_view::npos)
        return text.substr(body_start); // unterminated fence: take the rest
    return text.substr(body_start, close - body_start);
}

/// First balanced top-level JSON object or array, string-aware.
std::optional<std::string_view> first_json_payload(std::string_view text) {
    auto start = text.find_first_of("{[");
    if (start == std::string_view::npos)
        return std::nullopt;
    std::size_t depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"')
            in_string = true;
        else if (c == '{' || c == '[')
            ++depth;
        else if (c == '}' || c == ']') {
            if (depth == 0)
                return std::nullopt;
            if (--depth == 0)
                return text.substr(start, i - start + 1);
        }
    }
    return std::nullopt;
}

/// First complete element: from the first start tag to the matching close
/// of that element. Quotes inside tags are honoured; comments and
/// prolog/doctype blocks are skipped.
std::optional<std::string_view> first_markup_payload(std::string_view text,
                                                     bool html_table_only) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    std::size_t start = std::string_view::npos;
    std::string root_name;
    std::size_t depth = 0;
    while (i < n) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        if (text.substr(i, 4) == "<!--") {
            auto end = text.find("-->", i);
            if (end == std::string_view::npos)
                return std::nullopt;
            i = end + 3;
            continue;
        }
        if (text.substr(i, 2) == "<!" || text.substr(i, 2) == "<?") {
            auto end = text.find('>', i);
            if (end == std::string_view::npos)
                return std::nullopt;
            i = end + 1;
            continue;
        }
        std::size_t tag_start = i;
        ++i;
        bool closing = i < n && text[i] == '/';
        if (closing)
            ++i;
        std::string name;
        while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                         text[i] == '-' || text[i] == '_' || text[i] == '@' ||
                         text[i] == '.'))
            name += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i++])));
        if (name.empty()) {
            ++i;
            continue;
        }
        // Scan to '>' honouring quotes.
        bool in_quote = false;
        char quote = 0;
        bool self_closing = false;
        for (; i < n; ++i) {
            char c = text[i];
            if (in_quote) {
                if (c == quote)
                    in_quote = false;
                continue;
            }
            if (c == '"' || c == '\'') {
                in_quote = true;
                quote = c;
                continue;
            }
            if (c == '>') {
                self_closing = i > 0 && text[i - 1] == '/';
                ++i;
                break;
            }
        }
        if (start == std::string_view::npos) {
            if (closing)
                continue;
            if (html_table_only && name != "table")
                continue;
            start = tag_start;
            root_name = name;
            if (self_closing)
                return text.substr(start, i - start);
            depth = 1;
            continue;
        }
        if (name == root_name) {
            if (closing) {
                if (--depth == 0)
                    return text.substr(start, i - start);
            } else if (!self_closing) {
                ++depth;
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string_view> latex_payload(std::string_view text) {
    auto start = text.find("\\begin{tabular}");
    if (start == std::string_view::npos)
        return std::nullopt;
    constexpr std::string_view kEnd = "\\end{tabular}";
    auto end = text.find(kEnd, start);
    if (end == std::string_view::npos)
        return std::nullopt;
    return text.substr(start, end + kEnd.size() - start);
}

std::optional<std::string_view> markdown_payload(std::string_view text) {
    std::size_t line_start = 0;
    std::size_t block_start = std::string_view::npos;
    std::size_t block_end = std::string_view::npos;
    std::size_t block_lines = 0;
    while (line_start <= text.size()) {
        auto line_end = text.find('\n', line_start);
        std::size_t end = line_end == std::string_view::npos ? text.size() : line_end;
        std::string_view line = trim(text.substr(line_start, end - line_start));
        bool is_table_line = !line.empty() && line.front() == '|';
        if (is_table_line) {
            if (block_start == std::string_view::npos)
                block_start = line_start;
            block_end = end;
            ++block_lines;
        } else if (block_start != std::string_view::npos) {
            break; // first block only
        }
        if (line_end == std::string_view::npos)
            break;
        line_start = line_end + 1;
    }
    if (block_start == std::string_view::npos || block_lines < 2)
        return std::nullopt;
    return text.substr(block_start, block_end - block_start);
}

} // namespace

std::string extract_candidate(std::string_view raw_model_output, Format format) {
    std::string_view scope = raw_model_output;
    bool fenced = false;
    if (auto fence = strip_code_fence(scope)) {
        scope = *fence;
        fenced = true;
    }

    std::optional<std::string_view> payload;
    switch (format) {
    case Format::JsonTree:
    case Format::JsonList:
        payload = first_json_payload(scope);
        break;
    case Format::XmlTree:
    case Format::XmlList:
        payload = first_markup_payload(scope, false);
        break;
    case Format::HtmlTable:
        payload = first_markup_payload(scope, true);
        break;
    case Format::LatexTable:
        payload = latex_payload(scope);
        break;
    case Format::MarkdownTable:
        payload = markdown_payload(scope);
        break;
    case Format::Csv:
        // CSV has no bracketing syntax; the fence is the only wrapper cue,
        // and blank lines around the fenced block are not content.
        if (fenced)
            payload = trim(scope);
        break;
    }
    if (payload)
        return std::string(*payload);
    if (fenced)
        return std::string(scope);
    return std::string(raw_model_output);
}

} // namespace streval
