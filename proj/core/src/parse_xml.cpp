#include <algorithm>
#include <cctype>

#include "parse_util.hpp"

namespace streval::detail {

namespace {

/// Minimal XML reader for the dialect this toolkit emits: elements,
/// attributes, character data, entity references, comments, and an
/// optional prolog. Anything else (CDATA, processing instructions beyond
/// the prolog, mixed content) is a fatal diagnostic.
struct XmlAttr {
    std::string name;
    std::string value;
};

struct XmlElement {
    std::string name;
    std::vector<XmlAttr> attrs;
    std::vector<XmlElement> children;
    std::string text; // concatenated character data, entity-decoded
    std::size_t position = 0;
};

class XmlReader {
public:
    XmlReader(std::string_view text, std::vector<Diagnostic>& diags)
        : text_(text), diags_(diags) {}

    std::optional<XmlElement> read_document() {
        skip_misc();
        if (eof()) {
            fatal("empty document");
            return std::nullopt;
        }
        auto root = read_element(0);
        if (!root)
            return std::nullopt;
        skip_misc();
        if (!eof())
            fatal("content after document element");
        if (!diags_.empty())
            return std::nullopt;
        return root;
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() { return text_[pos_++]; }

    void fatal(std::string msg) { add_fatal(diags_, pos_, std::move(msg)); }

    void skip_whitespace() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    bool try_skip(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    // Whitespace, comments, prolog, doctype.
    void skip_misc() {
        for (;;) {
            skip_whitespace();
            if (try_skip("<!--")) {
                auto end = text_.find("-->", pos_);
                if (end == std::string_view::npos) {
                    fatal("unterminated comment");
                    pos_ = text_.size();
                    return;
                }
                pos_ = end + 3;
            } else if (try_skip("<?")) {
                auto end = text_.find("?>", pos_);
                if (end == std::string_view::npos) {
                    fatal("unterminated processing instruction");
                    pos_ = text_.size();
                    return;
                }
                pos_ = end + 2;
            } else if (text_.substr(pos_, 2) == "<!") {
                auto end = text_.find('>', pos_);
                if (end == std::string_view::npos) {
                    fatal("unterminated declaration");
                    pos_ = text_.size();
                    return;
                }
                pos_ = end + 1;
            } else {
                return;
            }
        }
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
               c == '.' || c == ':' || c == '@';
    }

    std::string read_name() {
        std::string name;
        while (!eof() && is_name_char(peek()))
            name += get();
        return name;
    }

    std::string decode_entities(std::string_view raw) {
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
            else if (name == "apos")
                out += '\'';
            else if (!name.empty() && name[0] == '#') {
                std::uint32_t cp = 0;
                bool valid = name.size() > 1;
                if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
                    for (std::size_t k = 2; k < name.size() && valid; ++k) {
                        char c = name[k];
                        if (!std::isxdigit(static_cast<unsigned char>(c)))
                            valid = false;
                        else
                            cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(c))
                                                ? c - '0'
                                                : std::tolower(c) - 'a' + 10);
                        if (cp > 0x10FFFF)
                            valid = false;
                    }
                    valid = valid && name.size() > 2;
                } else {
                    for (std::size_t k = 1; k < name.size() && valid; ++k) {
                        if (!std::isdigit(static_cast<unsigned char>(name[k])))
                            valid = false;
                        else
                            cp = cp * 10 + (name[k] - '0');
                        if (cp > 0x10FFFF)
                            valid = false;
                    }
                }
                if (valid && cp > 0 && !(cp >= 0xD800 && cp <= 0xDFFF)) {
                    append_utf8(out, cp);
                } else {
                    out += raw.substr(i, semi - i + 1);
                }
            } else {
                // Unknown entity: keep it verbatim.
                out += raw.substr(i, semi - i + 1);
            }
            i = semi + 1;
        }
        return out;
    }

    static void append_utf8(std::string& out, std::uint32_t cp) {
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
    }

    std::optional<XmlElement> read_element(std::size_t depth) {
        if (depth > kMaxNestingDepth) {
            fatal("nesting depth exceeds limit");
            return std::nullopt;
        }
        XmlElement el;
        el.position = pos_;
        if (eof() || get() != '<') {
            fatal("expected element start");
            return std::nullopt;
        }
        el.name = read_name();
        if (el.name.empty()) {
            fatal("missing element name");
            return std::nullopt;
        }
        // Attributes.
        for (;;) {
            skip_whitespace();
            if (eof()) {
                fatal("unterminated start tag");
                return std::nullopt;
            }
            if (peek() == '/' || peek() == '>')
                break;
            XmlAttr attr;
            attr.name = read_name();
            if (attr.name.empty()) {
                fatal("malformed attribute");
                return std::nullopt;
            }
            skip_whitespace();
            if (eof() || get() != '=') {
                fatal("attribute without value");
                return std::nullopt;
            }
            skip_whitespace();
            if (eof() || (peek() != '"' && peek() != '\'')) {
                fatal("unquoted attribute value");
                return std::nullopt;
            }
            char quote = get();
            auto end = text_.find(quote, pos_);
            if (end == std::string_view::npos) {
                fatal("unterminated attribute value");
                return std::nullopt;
            }
            attr.value = decode_entities(text_.substr(pos_, end - pos_));
            pos_ = end + 1;
            el.attrs.push_back(std::move(attr));
        }
        if (peek() == '/') {
            ++pos_;
            if (eof() || get() != '>') {
                fatal("malformed self-closing tag");
                return std::nullopt;
            }
            return el;
        }
        ++pos_; // consume '>'

        // Content: character data and child elements.
        std::string raw_text;
        for (;;) {
            if (eof()) {
                fatal("unterminated element: " + el.name);
                return std::nullopt;
            }
            if (peek() == '<') {
                if (try_skip("<!--")) {
                    auto end = text_.find("-->", pos_);
                    if (end == std::string_view::npos) {
                        fatal("unterminated comment");
                        return std::nullopt;
                    }
                    pos_ = end + 3;
                    continue;
                }
                if (text_.substr(pos_, 2) == "</") {
                    pos_ += 2;
                    std::string close = read_name();
                    skip_whitespace();
                    if (eof() || get() != '>') {
                        fatal("malformed end tag");
                        return std::nullopt;
                    }
                    if (close != el.name) {
                        fatal("mismatched end tag: expected </" + el.name + ">, got </" +
                              close + ">");
                        return std::nullopt;
                    }
                    break;
                }
                auto child = read_element(depth + 1);
                if (!child)
                    return std::nullopt;
                el.children.push_back(std::move(*child));
            } else {
                raw_text += get();
            }
        }
        std::string decoded = decode_entities(raw_text);
        if (!el.children.empty() && !trim(decoded).empty()) {
            add_fatal(diags_, el.position, "mixed content in element: " + el.name);
            return std::nullopt;
        }
        el.text = std::string(trim(decoded));
        return el;
    }

    std::string_view text_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
};

// Tree mapping. Element names become Dict keys, repeated "item" children
// become List elements, a single "empty" child marks an empty container,
// attributes become "@name" entries, text-plus-attributes adds a "#text"
// entry. The reverse direction emits only elements, so the reserved names
// are the whole wire convention.

bool all_items(const XmlElement& el) {
    return !el.children.empty() &&
           std::all_of(el.children.begin(), el.children.end(),
                       [](const XmlElement& c) { return c.name == "item"; });
}

bool is_empty_marker(const XmlElement& el) {
    return el.children.size() == 1 && el.children.front().name == "empty" &&
           el.children.front().children.empty() &&
           el.children.front().attrs.empty() && el.children.front().text.empty() &&
           el.attrs.empty();
}

std::vector<TreeNode> content_nodes(const XmlElement& el, bool& fatal_flag,
                                    std::vector<Diagnostic>& diags);

/// Nodes contributed by one element when it appears in list position.
std::vector<TreeNode> element_as_list_item(const XmlElement& el, bool& fatal_flag,
                                           std::vector<Diagnostic>& diags) {
    return content_nodes(el, fatal_flag, diags);
}

/// The children of a Dict entry (or of the root) built from an element's
/// attributes and content.
std::vector<TreeNode> content_nodes(const XmlElement& el, bool& fatal_flag,
                                    std::vector<Diagnostic>& diags) {
    std::vector<TreeNode> out;
    for (const auto& attr : el.attrs) {
        out.push_back(TreeNode::dict(
            "@" + attr.name, {TreeNode::value(Scalar::from_text(attr.value))}));
    }
    if (is_empty_marker(el)) {
        out.push_back(TreeNode::value(Scalar::empty_container()));
        return out;
    }
    if (all_items(el)) {
        std::vector<TreeNode> elements;
        for (const auto& item : el.children) {
            for (auto& n : element_as_list_item(item, fatal_flag, diags))
                elements.push_back(std::move(n));
        }
        out.push_back(TreeNode::list(std::move(elements)));
        return out;
    }
    if (!el.children.empty()) {
        for (const auto& child : el.children) {
            if (child.name == "empty" && child.children.empty() && child.text.empty()) {
                add_fatal(diags, child.position, "reserved element <empty> misused");
                fatal_flag = true;
                return out;
            }
            out.push_back(
                TreeNode::dict(child.name, content_nodes(child, fatal_flag, diags)));
        }
        return out;
    }
    if (!el.text.empty() && !el.attrs.empty()) {
        out.push_back(TreeNode::dict("#text", {TreeNode::value(Scalar::from_text(el.text))}));
        return out;
    }
    if (!out.empty() && el.text.empty())
        return out; // attributes only
    out.push_back(TreeNode::value(Scalar::from_text(el.text)));
    return out;
}

} // namespace

ParseOutcome parse_xml_tree(std::string_view text) {
    std::vector<Diagnostic> diags;
    XmlReader reader(text, diags);
    auto root = reader.read_document();
    if (!root)
        return fail(std::move(diags));
    bool fatal_flag = false;
    std::vector<TreeNode> top;
    if (root->name == "root" && root->attrs.empty()) {
        top = content_nodes(*root, fatal_flag, diags);
    } else {
        top.push_back(TreeNode::dict(root->name, content_nodes(*root, fatal_flag, diags)));
    }
    if (fatal_flag)
        return fail(std::move(diags));
    ParseOutcome out;
    out.result = IRDoc(TreeNode::root(std::move(top)));
    out.diagnostics = std::move(diags);
    return out;
}

ParseOutcome parse_xml_list(std::string_view text) {
    std::vector<Diagnostic> diags;
    XmlReader reader(text, diags);
    auto root = reader.read_document();
    if (!root)
        return fail(std::move(diags));
    if (!root->attrs.empty())
        return fail(root->position, "XML list: attributes on the list element");
    if (!root->children.empty() && !root->text.empty())
        return fail(root->position, "XML list: unexpected text content");

    std::vector<std::string> headers;
    std::vector<std::vector<Scalar>> rows;
    for (const auto& record : root->children) {
        if (!record.attrs.empty())
            return fail(record.position, "XML list: attributes on a record element");
        if (record.children.empty() && !record.text.empty())
            return fail(record.position, "XML list: record without field elements");
        for (const auto& field : record.children) {
            if (!field.children.empty())
                return fail(field.position, "XML list: nested value under " + field.name);
            if (!field.attrs.empty())
                return fail(field.position, "XML list: attributes on field " + field.name);
            if (std::find(headers.begin(), headers.end(), field.name) == headers.end())
                headers.push_back(field.name);
        }
    }
    for (const auto& record : root->children) {
        std::vector<Scalar> row;
        row.reserve(headers.size());
        for (const auto& h : headers) {
            auto it = std::find_if(record.children.begin(), record.children.end(),
                                   [&](const XmlElement& f) { return f.name == h; });
            row.push_back(it == record.children.end() ? Scalar::null()
                                                      : Scalar::from_text(it->text));
        }
        rows.push_back(std::move(row));
    }
    return finish_table_scalars(std::move(headers), std::move(rows), std::move(diags));
}

namespace {

std::string escape_xml(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

void indent(std::string& out, std::size_t depth) {
    out.append(depth * 2, ' ');
}

void emit_open(std::string& out, std::size_t depth, std::string_view name) {
    indent(out, depth);
    out += '<';
    out += name;
    out += '>';
}

void emit_scalar_element(std::string& out, std::size_t depth, std::string_view name,
                         const Scalar& s) {
    indent(out, depth);
    if (s.is_null()) {
        out += '<';
        out += name;
        out += "/>\n";
        return;
    }
    if (s.is_empty_container()) {
        out += '<';
        out += name;
        out += "><empty/></";
        out += name;
        out += ">\n";
        return;
    }
    out += '<';
    out += name;
    out += '>';
    out += escape_xml(s.render());
    out += "</";
    out += name;
    out += ">\n";
}

void emit_children(std::string& out, std::size_t depth,
                   const std::vector<TreeNode>& children);

void emit_element(std::string& out, std::size_t depth, std::string_view name,
                  const TreeNode& node) {
    // One element wrapping the children of a Dict entry / list item.
    const auto& kids = node.children();
    if (kids.size() == 1 && kids.front().kind() == NodeKind::Value) {
        emit_scalar_element(out, depth, name, *kids.front().scalar());
        return;
    }
    if (kids.empty()) {
        indent(out, depth);
        out += '<';
        out += name;
        out += "/>\n";
        return;
    }
    emit_open(out, depth, name);
    out += '\n';
    emit_children(out, depth + 1, kids);
    indent(out, depth);
    out += "</";
    out += name;
    out += ">\n";
}

void emit_list_item(std::string& out, std::size_t depth, const TreeNode& item) {
    switch (item.kind()) {
    case NodeKind::Value:
        emit_scalar_element(out, depth, "item", *item.scalar());
        break;
    case NodeKind::List: {
        emit_open(out, depth, "item");
        out += '\n';
        for (const auto& sub : item.children())
            emit_list_item(out, depth + 1, sub);
        indent(out, depth);
        out += "</item>\n";
        break;
    }
    case NodeKind::Dict: {
        emit_open(out, depth, "item");
        out += '\n';
        emit_element(out, depth + 1, *item.key(), item);
        indent(out, depth);
        out += "</item>\n";
        break;
    }
    case NodeKind::Root:
        break;
    }
}

void emit_children(std::string& out, std::size_t depth,
                   const std::vector<TreeNode>& children) {
    for (const auto& c : children) {
        switch (c.kind()) {
        case NodeKind::Dict:
            emit_element(out, depth, *c.key(), c);
            break;
        case NodeKind::List:
            for (const auto& item : c.children())
                emit_list_item(out, depth, item);
            break;
        case NodeKind::Value:
            emit_scalar_element(out, depth, "value", *c.scalar());
            break;
        case NodeKind::Root:
            break;
        }
    }
}

} // namespace

std::string serialize_xml_tree(const TreeNode& tree) {
    const auto& kids = tree.children();
    std::string out;
    if (kids.empty())
        return "<root/>\n";
    if (kids.size() == 1 && kids.front().kind() == NodeKind::Value) {
        const Scalar& s = *kids.front().scalar();
        if (s.is_empty_container())
            return "<root><empty/></root>\n";
        if (s.is_null())
            return "<root/>\n";
        return "<root>" + escape_xml(s.render()) + "</root>\n";
    }
    out += "<root>\n";
    emit_children(out, 1, kids);
    out += "</root>\n";
    return out;
}

std::string serialize_xml_list(const TableIR& table) {
    std::string out = "<records>\n";
    for (const auto& row : table.rows) {
        out += "  <record>\n";
        for (std::size_t j = 0; j < table.headers.size(); ++j) {
            const Scalar& cell = row[j];
            if (cell.is_null() || cell.is_empty_container()) {
                out += "    <" + table.headers[j] + "/>\n";
            } else {
                out += "    <" + table.headers[j] + ">" + escape_xml(cell.render()) +
                       "</" + table.headers[j] + ">\n";
            }
        }
        out += "  </record>\n";
    }
    out += "</records>\n";
    return out;
}

} // namespace streval::detail
