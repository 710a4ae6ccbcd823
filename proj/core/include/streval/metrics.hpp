#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>

#include "streval/ir.hpp"

namespace streval {

/// Label used by the edit-distance kernel. Two nodes rename for free iff
/// kind, tag and value all match; the tag is the Dict key, the decimal
/// list index for children of List nodes, or empty.
struct NodeLabel {
    NodeKind kind = NodeKind::Root;
    std::string tag;
    std::optional<Scalar> value;

    bool operator==(const NodeLabel&) const = default;
};

NodeLabel node_label(const TreeNode& node);

/// Exact minimum unit-cost edit distance (insert/delete/rename) between
/// two labeled ordered trees. Both inputs are expected canonicalized so
/// dictionary key order never costs edits. Symmetric; zero iff the trees
/// are label-identical.
std::size_t ted(const TreeNode& a, const TreeNode& b);

/// Normalized topological consistency: 1 - TED / max(|a|, |b|), in [0,1].
/// Tables are embedded into tree form, trees canonicalized. Bottom on
/// either side scores 0; identical non-Bottom documents score 1.
double nted(const IRDoc& a, const IRDoc& b);

/// Atomic information unit: full path from the root, field name or list
/// index, normalized value. Compares by exact (path, key, value) equality.
struct SemanticTriple {
    std::string path;
    std::string key;
    Scalar value;

    bool operator==(const SemanticTriple&) const = default;
    auto operator<=>(const SemanticTriple&) const = default;
};

using TripleSet = std::set<SemanticTriple>;

/// Semantic flattening. Trees emit one triple per leaf: the path collects
/// dictionary keys and list indices down to the leaf's parent, the key is
/// the leaf's own key or index, and empty containers surface with the
/// empty-container marker. Tables emit ("header", h, h) per column plus
/// ("row/i", h, cell) per cell with 0-based row index. Bottom flattens to
/// the empty set.
TripleSet flatten(const IRDoc& doc);

/// Content semantic accuracy: Jaccard similarity of the two triple sets.
/// Both sides empty scores 1 (identity of emptiness); Bottom on either
/// side scores 0. Symmetric, path-sensitive, and key-permutation
/// invariant through canonical paths.
double csa(const IRDoc& orig, const IRDoc& gen);

} // namespace streval
