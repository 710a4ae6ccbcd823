#include "streval/table.hpp"

namespace streval {

TreeNode embed_table(const TableIR& table) {
    std::vector<TreeNode> header_cells;
    header_cells.reserve(table.headers.size());
    for (const auto& h : table.headers)
        header_cells.push_back(TreeNode::value(Scalar::raw_text(h)));

    std::vector<TreeNode> row_nodes;
    row_nodes.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        std::vector<TreeNode> cells;
        cells.reserve(row.size());
        for (const auto& cell : row)
            cells.push_back(TreeNode::value(cell));
        row_nodes.push_back(TreeNode::list(std::move(cells)));
    }

    std::vector<TreeNode> top;
    top.push_back(TreeNode::dict("header", std::move(header_cells)));
    top.push_back(TreeNode::list(std::move(row_nodes)));
    return TreeNode::root(std::move(top));
}

} // namespace streval
