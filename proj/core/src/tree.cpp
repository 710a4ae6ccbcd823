#include "streval/tree.hpp"

#include <algorithm>

namespace streval {

std::string_view node_kind_name(NodeKind kind) {
    switch (kind) {
    case NodeKind::Root:
        return "ROOT";
    case NodeKind::Dict:
        return "DICT";
    case NodeKind::List:
        return "LIST";
    case NodeKind::Value:
        return "VALUE";
    }
    return "?";
}

TreeNode TreeNode::root(std::vector<TreeNode> children) {
    TreeNode n;
    n.kind_ = NodeKind::Root;
    n.children_ = std::move(children);
    for (auto& c : n.children_)
        c.index_.reset();
    return n;
}

TreeNode TreeNode::dict(std::string key, std::vector<TreeNode> children) {
    TreeNode n;
    n.kind_ = NodeKind::Dict;
    n.key_ = std::move(key);
    n.children_ = std::move(children);
    for (auto& c : n.children_)
        c.index_.reset();
    return n;
}

TreeNode TreeNode::list(std::vector<TreeNode> children) {
    TreeNode n;
    n.kind_ = NodeKind::List;
    n.children_ = std::move(children);
    n.reindex_children();
    return n;
}

TreeNode TreeNode::value(Scalar v) {
    TreeNode n;
    n.kind_ = NodeKind::Value;
    n.value_ = std::move(v);
    return n;
}

void TreeNode::reindex_children() {
    if (kind_ == NodeKind::List) {
        std::uint32_t i = 0;
        for (auto& c : children_)
            c.index_ = i++;
    } else {
        for (auto& c : children_)
            c.index_.reset();
    }
}

bool TreeNode::operator==(const TreeNode& other) const {
    return kind_ == other.kind_ && key_ == other.key_ && value_ == other.value_ &&
           index_ == other.index_ && children_ == other.children_;
}

std::size_t node_count(const TreeNode& tree) {
    std::size_t total = 1;
    for (const auto& c : tree.children())
        total += node_count(c);
    return total;
}

std::size_t tree_depth(const TreeNode& tree) {
    std::size_t deepest = 0;
    for (const auto& c : tree.children())
        deepest = std::max(deepest, 1 + tree_depth(c));
    return deepest;
}

namespace {

void canonicalize_in_place(TreeNode& node) {
    for (auto& c : node.mutable_children())
        canonicalize_in_place(c);
    if (node.kind() == NodeKind::List)
        return;
    auto& kids = node.mutable_children();
    bool all_dict = !kids.empty() &&
                    std::all_of(kids.begin(), kids.end(), [](const TreeNode& c) {
                        return c.kind() == NodeKind::Dict;
                    });
    if (all_dict) {
        std::stable_sort(kids.begin(), kids.end(),
                         [](const TreeNode& a, const TreeNode& b) {
                             return *a.key() < *b.key();
                         });
    }
}

} // namespace

TreeNode canonicalize(TreeNode tree) {
    canonicalize_in_place(tree);
    return tree;
}

namespace {

std::optional<std::string> validate_node(const TreeNode& node, bool is_root,
                                         bool parent_is_list, std::uint32_t position) {
    switch (node.kind()) {
    case NodeKind::Root:
        if (!is_root)
            return "ROOT node below the tree root";
        if (node.key() || node.scalar() || node.index())
            return "ROOT node carries key, value, or index";
        break;
    case NodeKind::Dict:
        if (!node.key())
            return "DICT node without key";
        if (node.scalar())
            return "DICT node carries a value";
        break;
    case NodeKind::List:
        if (node.key() || node.scalar())
            return "LIST node carries key or value";
        break;
    case NodeKind::Value:
        if (!node.scalar())
            return "VALUE node without value";
        if (!node.children().empty())
            return "VALUE node with children";
        break;
    }
    if (!is_root) {
        if (parent_is_list) {
            if (!node.index())
                return "child of LIST without index";
            if (*node.index() != position)
                return "LIST child index does not match sibling position";
        } else if (node.index()) {
            return "index on a node whose parent is not a LIST";
        }
    }
    bool node_is_list = node.kind() == NodeKind::List;
    std::uint32_t pos = 0;
    for (const auto& c : node.children()) {
        if (auto err = validate_node(c, false, node_is_list, pos))
            return err;
        ++pos;
    }
    return std::nullopt;
}

} // namespace

std::optional<std::string> validate_tree(const TreeNode& tree) {
    if (tree.kind() != NodeKind::Root)
        return "tree root is not a ROOT node";
    return validate_node(tree, true, false, 0);
}

} // namespace streval
