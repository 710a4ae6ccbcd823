#include <nlohmann/json.hpp>

#include "parse_util.hpp"

namespace streval::detail {

namespace {

using Json = nlohmann::ordered_json;

/// Bracket-depth prescan; keeps degenerate deeply nested inputs away from
/// the recursive parser.
std::optional<std::size_t> excessive_depth(std::string_view text) {
    std::size_t depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
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
        else if (c == '{' || c == '[') {
            if (++depth > kMaxNestingDepth)
                return i;
        } else if (c == '}' || c == ']') {
            if (depth)
                --depth;
        }
    }
    return std::nullopt;
}

Scalar scalar_from_json(const Json& v) {
    switch (v.type()) {
    case Json::value_t::string:
        return Scalar::from_text(v.get<std::string>());
    case Json::value_t::number_integer:
        return Scalar::integer(v.get<std::int64_t>());
    case Json::value_t::number_unsigned: {
        auto u = v.get<std::uint64_t>();
        if (u <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            return Scalar::integer(static_cast<std::int64_t>(u));
        return Scalar::real(static_cast<double>(u));
    }
    case Json::value_t::number_float:
        return Scalar::real(v.get<double>());
    case Json::value_t::boolean:
        return Scalar::boolean(v.get<bool>());
    default:
        return Scalar::null();
    }
}

/// Converts a JSON value into IR nodes. Objects contribute one Dict entry
/// per key (there is no object node of its own), so the result is a node
/// sequence rather than a single node.
std::vector<TreeNode> nodes_from_json(const Json& v) {
    std::vector<TreeNode> out;
    if (v.is_object()) {
        if (v.empty()) {
            out.push_back(TreeNode::value(Scalar::empty_container()));
            return out;
        }
        for (const auto& [key, child] : v.items()) {
            std::string trimmed_key{trim(key)};
            out.push_back(TreeNode::dict(std::move(trimmed_key), nodes_from_json(child)));
        }
        return out;
    }
    if (v.is_array()) {
        if (v.empty()) {
            out.push_back(TreeNode::value(Scalar::empty_container()));
            return out;
        }
        std::vector<TreeNode> elements;
        for (const auto& e : v) {
            for (auto& n : nodes_from_json(e))
                elements.push_back(std::move(n));
        }
        out.push_back(TreeNode::list(std::move(elements)));
        return out;
    }
    out.push_back(TreeNode::value(scalar_from_json(v)));
    return out;
}

std::optional<Json> parse_json_text(std::string_view text,
                                    std::vector<Diagnostic>& diags) {
    if (auto pos = excessive_depth(text)) {
        add_fatal(diags, *pos, "nesting depth exceeds limit");
        return std::nullopt;
    }
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        add_fatal(diags, e.byte, e.what());
        return std::nullopt;
    }
}

} // namespace

ParseOutcome parse_json_tree(std::string_view text) {
    std::vector<Diagnostic> diags;
    auto doc = parse_json_text(text, diags);
    if (!doc)
        return fail(std::move(diags));
    ParseOutcome out;
    out.result = IRDoc(TreeNode::root(nodes_from_json(*doc)));
    out.diagnostics = std::move(diags);
    return out;
}

ParseOutcome parse_json_list(std::string_view text) {
    std::vector<Diagnostic> diags;
    auto doc = parse_json_text(text, diags);
    if (!doc)
        return fail(std::move(diags));
    if (!doc->is_array())
        return fail(0, "JSON list: top-level value is not an array");

    std::vector<std::string> headers;
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < doc->size(); ++i) {
        const Json& record = (*doc)[i];
        if (!record.is_object())
            return fail(0, "JSON list: record " + std::to_string(i) + " is not an object");
        for (const auto& [key, cell] : record.items()) {
            if (cell.is_object() || cell.is_array())
                return fail(0, "JSON list: nested value under key " + key);
            std::string name{trim(key)};
            if (std::find(headers.begin(), headers.end(), name) == headers.end())
                headers.push_back(std::move(name));
        }
    }
    for (const Json& record : *doc) {
        std::vector<Scalar> row;
        row.reserve(headers.size());
        for (const auto& h : headers) {
            auto it = record.find(h);
            row.push_back(it == record.end() ? Scalar::null() : scalar_from_json(*it));
        }
        rows.push_back(std::move(row));
    }
    return finish_table_scalars(std::move(headers), std::move(rows), std::move(diags));
}

namespace {

// Serialization side. Plain nlohmann::json keeps object keys sorted,
// matching the fixed output style; ordered_json preserves column order
// where the list encoding requires it.
using SortedJson = nlohmann::json;

template <typename J>
J json_from_scalar(const Scalar& s) {
    switch (s.kind()) {
    case Scalar::Kind::Text:
        return J(s.as_text());
    case Scalar::Kind::Integer:
        return J(s.as_integer());
    case Scalar::Kind::Real:
        return J(s.as_real());
    case Scalar::Kind::Boolean:
        return J(s.as_boolean());
    case Scalar::Kind::Null:
        return J(nullptr);
    case Scalar::Kind::Empty:
        return J::array();
    }
    return J(nullptr);
}

SortedJson json_from_children(const std::vector<TreeNode>& children);

SortedJson json_from_list(const TreeNode& list) {
    SortedJson arr = SortedJson::array();
    for (const auto& c : list.children()) {
        switch (c.kind()) {
        case NodeKind::Value:
            arr.push_back(json_from_scalar<SortedJson>(*c.scalar()));
            break;
        case NodeKind::List:
            arr.push_back(json_from_list(c));
            break;
        case NodeKind::Dict: {
            // Each Dict child of a list becomes its own one-entry object;
            // this avoids duplicate keys when sibling entries repeat.
            SortedJson obj = SortedJson::object();
            obj[*c.key()] = json_from_children(c.children());
            arr.push_back(std::move(obj));
            break;
        }
        case NodeKind::Root:
            break;
        }
    }
    return arr;
}

SortedJson json_from_children(const std::vector<TreeNode>& children) {
    if (children.empty())
        return nullptr;
    const bool all_dict =
        std::all_of(children.begin(), children.end(),
                    [](const TreeNode& c) { return c.kind() == NodeKind::Dict; });
    if (all_dict) {
        SortedJson obj = SortedJson::object();
        for (const auto& c : children)
            obj[*c.key()] = json_from_children(c.children());
        return obj;
    }
    if (children.size() == 1) {
        const TreeNode& only = children.front();
        if (only.kind() == NodeKind::Value)
            return json_from_scalar<SortedJson>(*only.scalar());
        if (only.kind() == NodeKind::List)
            return json_from_list(only);
    }
    // Irregular shapes (possible after corruption) degrade to an array.
    SortedJson arr = SortedJson::array();
    for (const auto& c : children) {
        if (c.kind() == NodeKind::Dict) {
            SortedJson obj = SortedJson::object();
            obj[*c.key()] = json_from_children(c.children());
            arr.push_back(std::move(obj));
        } else if (c.kind() == NodeKind::List) {
            arr.push_back(json_from_list(c));
        } else if (c.kind() == NodeKind::Value) {
            arr.push_back(json_from_scalar<SortedJson>(*c.scalar()));
        }
    }
    return arr;
}

} // namespace

std::string serialize_json_tree(const TreeNode& tree) {
    return json_from_children(tree.children()).dump(2);
}

std::string serialize_json_list(const TableIR& table) {
    Json arr = Json::array();
    for (const auto& row : table.rows) {
        Json record = Json::object();
        for (std::size_t j = 0; j < table.headers.size(); ++j) {
            const Scalar& cell = row[j];
            record[table.headers[j]] = cell.is_empty_container()
                                           ? Json(nullptr)
                                           : json_from_scalar<Json>(cell);
        }
        arr.push_back(std::move(record));
    }
    return arr.dump(2);
}

} // namespace streval::detail
