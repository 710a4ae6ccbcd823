#include "streval/describe.hpp"

#include <stdexcept>

namespace streval {

namespace {

void describe_tree(const TreeNode& node, std::string& path,
                   std::vector<std::string>& statements) {
    std::string saved = path;
    if (node.kind() == NodeKind::Root) {
        path = "root";
    } else {
        if (node.index()) {
            path += '/';
            path += std::to_string(*node.index());
        }
        if (node.kind() == NodeKind::Dict) {
            path += '/';
            path += *node.key();
        }
    }
    if (node.kind() == NodeKind::Value) {
        const Scalar& s = *node.scalar();
        if (s.is_empty_container()) {
            statements.push_back("Under the path " + path +
                                 ", there exists an empty container.");
        } else {
            statements.push_back("Under the path " + path +
                                 ", there exists a node with value " + s.render() + ".");
        }
    } else {
        for (const auto& c : node.children())
            describe_tree(c, path, statements);
    }
    path = std::move(saved);
}

std::string join_headers(const std::vector<std::string>& headers) {
    std::string out;
    for (std::size_t j = 0; j < headers.size(); ++j) {
        if (j)
            out += ", ";
        out += headers[j];
    }
    return out;
}

} // namespace

Description describe(const IRDoc& doc, Format target) {
    if (doc.is_bottom())
        throw std::invalid_argument("describe: cannot describe Bottom");
    const bool wants_tree = track_of(target) == Track::Structure;
    if (wants_tree != doc.is_tree())
        throw std::invalid_argument("describe: document track does not match target format");

    Description desc;
    desc.target_format = target;
    const std::string format_name{format_display_name(target)};

    if (doc.is_tree()) {
        desc.preamble = "Reconstruct the data as " + format_name + ".";
        std::string path;
        // Pre-order over the canonical tree, so equal documents render
        // byte-identical prompts regardless of key order.
        TreeNode canonical = canonicalize(doc.tree());
        describe_tree(canonical, path, desc.statements);
        return desc;
    }

    const TableIR& table = doc.table();
    desc.preamble = "Reconstruct the data as " + format_name + ". The table has " +
                    std::to_string(table.headers.size()) + " columns (" +
                    join_headers(table.headers) + ") and " +
                    std::to_string(table.rows.size()) + " rows.";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        for (std::size_t j = 0; j < table.headers.size(); ++j) {
            desc.statements.push_back("In row " + std::to_string(i + 1) +
                                      ", the value of column " + table.headers[j] +
                                      " is " + table.rows[i][j].render() + ".");
        }
    }
    return desc;
}

std::string render_prompt(const Description& desc) {
    std::string out = "Output only the requested ";
    out += format_display_name(desc.target_format);
    out += "; no explanation.\n";
    out += desc.preamble;
    for (const auto& s : desc.statements) {
        out += '\n';
        out += s;
    }
    return out;
}

} // namespace streval
