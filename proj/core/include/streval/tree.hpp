#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streval/scalar.hpp"

namespace streval {

enum class NodeKind { Root, Dict, List, Value };

std::string_view node_kind_name(NodeKind kind);

/// Recursive AST node for hierarchical data.
///
/// Kinds and their fields:
///   Root  - tree root only; no key, value, or index
///   Dict  - a keyed entry of an object; key set, value absent
///   List  - ordered container; key and value absent
///   Value - leaf; value set, children empty
///
/// A node carries an index exactly when its parent is a List node; the
/// index equals its 0-based position among siblings. Indices are assigned
/// by the list() factory, so hand-built trees keep the invariant.
class TreeNode {
public:
    TreeNode() : kind_(NodeKind::Root) {}

    static TreeNode root(std::vector<TreeNode> children = {});
    static TreeNode dict(std::string key, std::vector<TreeNode> children);
    static TreeNode list(std::vector<TreeNode> children);
    static TreeNode value(Scalar v);

    NodeKind kind() const { return kind_; }
    const std::optional<std::string>& key() const { return key_; }
    const std::optional<Scalar>& scalar() const { return value_; }
    const std::optional<std::uint32_t>& index() const { return index_; }
    const std::vector<TreeNode>& children() const { return children_; }

    bool operator==(const TreeNode& other) const;

    /// Mutation hooks used by canonicalize/corruption; both re-establish the
    /// index invariant on the touched sibling range.
    std::vector<TreeNode>& mutable_children() { return children_; }
    void reindex_children();
    void set_scalar(Scalar v) { value_ = std::move(v); }
    void set_key(std::string k) { key_ = std::move(k); }

private:
    friend class TreeBuilder;

    NodeKind kind_;
    std::optional<std::string> key_;
    std::optional<Scalar> value_;
    std::optional<std::uint32_t> index_;
    std::vector<TreeNode> children_;
};

/// Total node count, including the root itself.
std::size_t node_count(const TreeNode& tree);

/// Maximum node depth, root at 0.
std::size_t tree_depth(const TreeNode& tree);

/// Stably sorts every uniform group of Dict-kind siblings by key; children
/// of List nodes keep their order and indices. Idempotent and
/// count-preserving; key reordering in objects becomes a no-op for the
/// edit-distance and triple metrics.
TreeNode canonicalize(TreeNode tree);

/// Checks the kind/field constraints listed on TreeNode. Returns an
/// explanation for the first violation, or nullopt when the tree is valid.
std::optional<std::string> validate_tree(const TreeNode& tree);

} // namespace streval
