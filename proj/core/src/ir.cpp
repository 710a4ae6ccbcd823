#include "streval/ir.hpp"

#include <sstream>

namespace streval {

bool ir_equal(const IRDoc& a, const IRDoc& b) {
    if (a.is_bottom() || b.is_bottom())
        return a.is_bottom() && b.is_bottom();
    if (a.is_tree() != b.is_tree())
        return false;
    if (a.is_tree())
        return canonicalize(a.tree()) == canonicalize(b.tree());
    return a.table() == b.table();
}

std::size_t ir_node_count(const IRDoc& doc) {
    if (doc.is_bottom())
        return 0;
    if (doc.is_table())
        return node_count(embed_table(doc.table()));
    return node_count(doc.tree());
}

namespace {

void dump_node(std::ostringstream& out, const TreeNode& node, std::size_t depth) {
    out << depth << ' ' << node_kind_name(node.kind());
    if (node.key())
        out << " key=" << *node.key();
    if (node.index())
        out << " index=" << *node.index();
    if (node.scalar())
        out << " value=" << node.scalar()->debug();
    out << '\n';
    for (const auto& c : node.children())
        dump_node(out, c, depth + 1);
}

} // namespace

std::string debug_dump(const IRDoc& doc) {
    std::ostringstream out;
    if (doc.is_bottom()) {
        out << "bottom";
        if (!doc.bottom_info().message.empty())
            out << ' ' << doc.bottom_info().message;
        out << '\n';
        return out.str();
    }
    if (doc.is_table()) {
        const auto& t = doc.table();
        out << "table cols=" << t.headers.size() << " rows=" << t.rows.size() << '\n';
        for (std::size_t j = 0; j < t.headers.size(); ++j)
            out << "header " << j << ' ' << t.headers[j] << '\n';
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            for (std::size_t j = 0; j < t.rows[i].size(); ++j)
                out << "cell " << i << ' ' << j << ' ' << t.rows[i][j].debug() << '\n';
        return out.str();
    }
    out << "tree\n";
    dump_node(out, doc.tree(), 0);
    return out.str();
}

} // namespace streval
