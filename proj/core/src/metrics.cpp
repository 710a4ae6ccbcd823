#include "streval/metrics.hpp"

#include <algorithm>

namespace streval {

namespace {

/// Path segments along a root-to-leaf walk: ROOT contributes "root", a
/// node indexed under a List contributes its decimal index, a Dict entry
/// contributes its key (after the index when it has both).
void append_segments(const TreeNode& node, std::vector<std::string>& segments) {
    if (node.kind() == NodeKind::Root) {
        segments.push_back("root");
        return;
    }
    if (node.index())
        segments.push_back(std::to_string(*node.index()));
    if (node.kind() == NodeKind::Dict)
        segments.push_back(*node.key());
}

std::string join_segments(const std::vector<std::string>& segments, std::size_t count) {
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i)
            out += '/';
        out += segments[i];
    }
    return out;
}

void flatten_tree(const TreeNode& node, std::vector<std::string>& segments,
                  TripleSet& out) {
    std::size_t before = segments.size();
    append_segments(node, segments);
    if (node.kind() == NodeKind::Value) {
        SemanticTriple triple;
        if (segments.size() > 1) {
            triple.path = join_segments(segments, segments.size() - 1);
            triple.key = segments.back();
        } else {
            // Leaf directly under ROOT with neither key nor index.
            triple.path = segments.front();
            triple.key = "";
        }
        triple.value = *node.scalar();
        out.insert(std::move(triple));
    } else {
        for (const auto& c : node.children())
            flatten_tree(c, segments, out);
    }
    segments.resize(before);
}

} // namespace

TripleSet flatten(const IRDoc& doc) {
    TripleSet out;
    if (doc.is_bottom())
        return out;
    if (doc.is_table()) {
        const auto& t = doc.table();
        for (const auto& h : t.headers)
            out.insert(SemanticTriple{"header", h, Scalar::raw_text(h)});
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const std::string row_path = "row/" + std::to_string(i);
            for (std::size_t j = 0; j < t.rows[i].size() && j < t.headers.size(); ++j)
                out.insert(SemanticTriple{row_path, t.headers[j], t.rows[i][j]});
        }
        return out;
    }
    std::vector<std::string> segments;
    flatten_tree(doc.tree(), segments, out);
    return out;
}

double csa(const IRDoc& orig, const IRDoc& gen) {
    if (orig.is_bottom() || gen.is_bottom())
        return 0.0;
    TripleSet a = flatten(orig);
    TripleSet b = flatten(gen);
    if (a.empty() && b.empty())
        return 1.0;
    std::size_t common = 0;
    for (const auto& t : a)
        if (b.count(t))
            ++common;
    const std::size_t unions = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(unions);
}

namespace {

TreeNode metric_tree(const IRDoc& doc) {
    if (doc.is_table())
        return canonicalize(embed_table(doc.table()));
    return canonicalize(doc.tree());
}

} // namespace

double nted(const IRDoc& a, const IRDoc& b) {
    if (a.is_bottom() || b.is_bottom())
        return 0.0;
    TreeNode ta = metric_tree(a);
    TreeNode tb = metric_tree(b);
    const std::size_t distance = ted(ta, tb);
    const std::size_t larger = std::max(node_count(ta), node_count(tb));
    // The distance can exceed the larger node count when restructuring
    // forces delete+insert pairs; clamp to keep the declared [0,1] range.
    const double raw = 1.0 - static_cast<double>(distance) / static_cast<double>(larger);
    return raw < 0.0 ? 0.0 : raw;
}

} // namespace streval
