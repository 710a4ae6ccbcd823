#include <cctype>

#include "parse_util.hpp"

namespace streval::detail {

namespace {

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string decode_html_entities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        if (raw[i] != '&') {
            out += raw[i++];
            continue;
        }
        auto semi = raw.find(';', i);
        if (semi == std::string_view::npos || semi - i > 12) {
            out += raw[i++];
            continue;
        }
        std::string_view name = raw.substr(i + 1, semi - i - 1);
        if (name == "amp")
            out += '&';
        else if (name == "lt")
            out += '<';
        else if (name == "gt")
            out += '>';
        else if (name == "quot")
            out += '"';
        else if (name == "apos" || name == "#39")
            out += '\'';
        else if (name == "nbsp")
            out += ' ';
        else if (!name.empty() && name[0] == '#') {
            std::uint32_t cp = 0;
            bool valid = false;
            std::size_t k = 1;
            int base = 10;
            if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
                base = 16;
                k = 2;
            }
            for (; k < name.size(); ++k) {
                char c = name[k];
                int digit;
                if (std::isdigit(static_cast<unsigned char>(c)))
                    digit = c - '0';
                else if (base == 16 && std::isxdigit(static_cast<unsigned char>(c)))
                    digit = std::tolower(c) - 'a' + 10;
                else {
                    valid = false;
                    break;
                }
                cp = cp * base + static_cast<std::uint32_t>(digit);
                valid = cp <= 0x10FFFF;
                if (!valid)
                    break;
            }
            if (valid && cp > 0 && !(cp >= 0xD800 && cp <= 0xDFFF)) {
                if (cp < 0x80) {
                    out += static_cast<char>(cp);
                } else if (cp < 0x800) {
                    out += static_cast<char>(0xC0 | (cp >> 6));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                } else if (cp < 0x10000) {
                    out += static_cast<char>(0xE0 | (cp >> 12));
                    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                } else {
                    out += static_cast<char>(0xF0 | (cp >> 18));
                    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
                    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                }
            } else {
                out += raw.substr(i, semi - i + 1);
            }
        } else {
            out += raw.substr(i, semi - i + 1);
        }
        i = semi + 1;
    }
    return out;
}

struct HtmlTag {
    std::string name;   // lowercase
    bool closing = false;
    bool self_closing = false;
    bool has_span_attr = false;
    std::size_t position = 0;
};

/// Token scanner over the supported subset: table, thead, tbody, tr, th,
/// td. Comments and doctypes are skipped. Returns false with a diagnostic
/// on malformed tags.
class HtmlScanner {
public:
    HtmlScanner(std::string_view text, std::vector<Diagnostic>& diags)
        : text_(text), diags_(diags) {}

    /// Advances to the next tag, collecting intervening text.
    std::optional<HtmlTag> next_tag(std::string& text_between) {
        text_between.clear();
        while (pos_ < text_.size()) {
            if (text_[pos_] != '<') {
                text_between += text_[pos_++];
                continue;
            }
            if (text_.substr(pos_, 4) == "<!--") {
                auto end = text_.find("-->", pos_);
                if (end == std::string_view::npos) {
                    add_fatal(diags_, pos_, "unterminated comment");
                    return std::nullopt;
                }
                pos_ = end + 3;
                continue;
            }
            if (text_.substr(pos_, 2) == "<!") {
                auto end = text_.find('>', pos_);
                if (end == std::string_view::npos) {
                    add_fatal(diags_, pos_, "unterminated declaration");
                    return std::nullopt;
                }
                pos_ = end + 1;
                continue;
            }
            return read_tag();
        }
        return std::nullopt; // end of input, no diagnostic
    }

    bool at_end() const { return pos_ >= text_.size(); }
    std::size_t position() const { return pos_; }

private:
    std::optional<HtmlTag> read_tag() {
        HtmlTag tag;
        tag.position = pos_;
        ++pos_; // '<'
        if (pos_ < text_.size() && text_[pos_] == '/') {
            tag.closing = true;
            ++pos_;
        }
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-'))
            name += text_[pos_++];
        if (name.empty()) {
            add_fatal(diags_, tag.position, "malformed tag");
            return std::nullopt;
        }
        tag.name = to_lower(name);

        // Attribute region up to '>'.
        std::string attr_region;
        bool in_quote = false;
        char quote = 0;
        for (; pos_ < text_.size(); ++pos_) {
            char c = text_[pos_];
            if (in_quote) {
                attr_region += c;
                if (c == quote)
                    in_quote = false;
                continue;
            }
            if (c == '"' || c == '\'') {
                in_quote = true;
                quote = c;
                attr_region += c;
                continue;
            }
            if (c == '>')
                break;
            attr_region += c;
        }
        if (pos_ >= text_.size()) {
            add_fatal(diags_, tag.position, "unterminated tag");
            return std::nullopt;
        }
        ++pos_; // '>'
        std::string lowered = to_lower(attr_region);
        if (!lowered.empty() && trim(lowered).size() && trim(lowered).back() == '/')
            tag.self_closing = true;
        if (lowered.find("colspan") != std::string::npos ||
            lowered.find("rowspan") != std::string::npos)
            tag.has_span_attr = true;
        return tag;
    }

    std::string_view text_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
};

} // namespace

// Supported shape: table / thead / tbody / tr / th / td, header = the
// first row, merged cells (colspan/rowspan) are fatal because they break
// the grid invariant. Content after </table> is ignored.

ParseOutcome parse_html_table(std::string_view text) {
    std::vector<Diagnostic> diags;
    HtmlScanner scanner(text, diags);
    std::string between;

    // Find <table>.
    std::optional<HtmlTag> tag;
    for (;;) {
        tag = scanner.next_tag(between);
        if (!tag) {
            if (!diags.empty())
                return fail(std::move(diags));
            return fail(0, "no table element");
        }
        if (!trim(between).empty())
            return fail(tag->position, "unexpected text before table");
        if (tag->name == "table" && !tag->closing)
            break;
        return fail(tag->position, "unexpected tag: " + tag->name);
    }

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> current_row;
    bool in_row = false;
    bool done = false;

    while (!done) {
        tag = scanner.next_tag(between);
        if (!tag) {
            if (!diags.empty())
                return fail(std::move(diags));
            return fail(scanner.position(), "unterminated table");
        }
        if (!trim(between).empty())
            return fail(tag->position, "stray text inside table");
        if (tag->has_span_attr)
            return fail(tag->position, "merged cells are not supported");

        const std::string& name = tag->name;
        if (name == "thead" || name == "tbody") {
            continue; // structural grouping only
        }
        if (name == "tr") {
            if (tag->closing) {
                if (!in_row)
                    return fail(tag->position, "</tr> without <tr>");
                rows.push_back(std::move(current_row));
                current_row.clear();
                in_row = false;
            } else {
                if (in_row)
                    return fail(tag->position, "nested <tr>");
                in_row = true;
            }
            continue;
        }
        if (name == "th" || name == "td") {
            if (tag->closing)
                return fail(tag->position, "unexpected closing cell tag");
            if (!in_row)
                return fail(tag->position, "cell outside of a row");
            if (tag->self_closing) {
                current_row.emplace_back();
                continue;
            }
            // Collect cell text up to the matching close tag.
            auto inner = scanner.next_tag(between);
            if (!inner) {
                if (!diags.empty())
                    return fail(std::move(diags));
                return fail(scanner.position(), "unterminated cell");
            }
            if (!(inner->closing && inner->name == name))
                return fail(inner->position, "markup inside cell");
            current_row.push_back(decode_html_entities(between));
            continue;
        }
        if (name == "table") {
            if (!tag->closing)
                return fail(tag->position, "nested table");
            if (in_row)
                return fail(tag->position, "unclosed row");
            done = true;
            continue;
        }
        return fail(tag->position, "unsupported tag: " + name);
    }

    if (rows.empty())
        return fail(0, "table has no rows");
    std::vector<std::string> headers = std::move(rows.front());
    rows.erase(rows.begin());
    return finish_table(std::move(headers), std::move(rows), std::move(diags));
}

std::string serialize_html_table(const TableIR& table) {
    auto escape = [](std::string_view cell) {
        std::string out;
        for (char c : cell) {
            if (c == '&')
                out += "&amp;";
            else if (c == '<')
                out += "&lt;";
            else if (c == '>')
                out += "&gt;";
            else
                out += c;
        }
        return out;
    };

    std::string out = "<table>\n  <thead>\n    <tr>";
    for (const auto& h : table.headers)
        out += "<th>" + escape(h) + "</th>";
    out += "</tr>\n  </thead>\n  <tbody>\n";
    for (const auto& row : table.rows) {
        out += "    <tr>";
        for (const auto& cell : row)
            out += "<td>" + escape(render_cell(cell)) + "</td>";
        out += "</tr>\n";
    }
    out += "  </tbody>\n</table>\n";
    return out;
}

} // namespace streval::detail
