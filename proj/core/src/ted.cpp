#include "streval/metrics.hpp"

#include <algorithm>
#include <vector>

namespace streval {

NodeLabel node_label(const TreeNode& node) {
    NodeLabel label;
    label.kind = node.kind();
    if (node.kind() == NodeKind::Dict)
        label.tag = *node.key();
    else if (node.index())
        label.tag = std::to_string(*node.index());
    label.value = node.scalar();
    return label;
}

namespace {

/// Postorder view of a tree for the Zhang-Shasha recurrence: labels,
/// leftmost-leaf-descendant indices, and keyroots (nodes with a left
/// sibling, plus the root).
struct PostorderTree {
    std::vector<NodeLabel> labels;
    std::vector<int> leftmost;
    std::vector<int> keyroots;
};

int collect_postorder(const TreeNode& node, PostorderTree& out) {
    int first_leaf = -1;
    for (const auto& c : node.children()) {
        int child_leftmost = collect_postorder(c, out);
        if (first_leaf < 0)
            first_leaf = child_leftmost;
    }
    int id = static_cast<int>(out.labels.size());
    if (first_leaf < 0)
        first_leaf = id;
    out.labels.push_back(node_label(node));
    out.leftmost.push_back(first_leaf);
    return first_leaf;
}

PostorderTree build_postorder(const TreeNode& root) {
    PostorderTree t;
    collect_postorder(root, t);
    // The highest postorder index per leftmost-leaf value is a keyroot.
    std::vector<int> last_for_leftmost(t.labels.size(), -1);
    for (int i = 0; i < static_cast<int>(t.labels.size()); ++i)
        last_for_leftmost[t.leftmost[i]] = i;
    for (int v : last_for_leftmost)
        if (v >= 0)
            t.keyroots.push_back(v);
    std::sort(t.keyroots.begin(), t.keyroots.end());
    return t;
}

class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols)
        : cols_(cols), data_(rows * cols, 0) {}

    std::size_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::size_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t cols_;
    std::vector<std::size_t> data_;
};

} // namespace

std::size_t ted(const TreeNode& a, const TreeNode& b) {
    PostorderTree ta = build_postorder(a);
    PostorderTree tb = build_postorder(b);
    const int na = static_cast<int>(ta.labels.size());
    const int nb = static_cast<int>(tb.labels.size());

    Matrix treedist(na, nb);
    Matrix fd(na + 1, nb + 1);

    for (int i : ta.keyroots) {
        for (int j : tb.keyroots) {
            const int li = ta.leftmost[i];
            const int lj = tb.leftmost[j];
            const int m = i - li + 2;
            const int n = j - lj + 2;
            const int ioff = li - 1;
            const int joff = lj - 1;

            fd.at(0, 0) = 0;
            for (int x = 1; x < m; ++x)
                fd.at(x, 0) = fd.at(x - 1, 0) + 1;
            for (int y = 1; y < n; ++y)
                fd.at(0, y) = fd.at(0, y - 1) + 1;

            for (int x = 1; x < m; ++x) {
                for (int y = 1; y < n; ++y) {
                    const int ai = x + ioff;
                    const int bj = y + joff;
                    const std::size_t del = fd.at(x - 1, y) + 1;
                    const std::size_t ins = fd.at(x, y - 1) + 1;
                    if (ta.leftmost[ai] == li && tb.leftmost[bj] == lj) {
                        const std::size_t rename_cost =
                            ta.labels[ai] == tb.labels[bj] ? 0 : 1;
                        const std::size_t ren = fd.at(x - 1, y - 1) + rename_cost;
                        const std::size_t best = std::min({del, ins, ren});
                        fd.at(x, y) = best;
                        treedist.at(ai, bj) = best;
                    } else {
                        const int p = ta.leftmost[ai] - 1 - ioff;
                        const int q = tb.leftmost[bj] - 1 - joff;
                        const std::size_t sub = fd.at(p, q) + treedist.at(ai, bj);
                        fd.at(x, y) = std::min({del, ins, sub});
                    }
                }
            }
        }
    }
    return treedist.at(na - 1, nb - 1);
}

} // namespace streval
