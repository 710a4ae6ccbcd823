#pragma once

#include <string>
#include <variant>

#include "streval/table.hpp"
#include "streval/tree.hpp"

namespace streval {

/// Parse-failure value. Compares equal only to other Bottom values; the
/// diagnostic message is carried for reporting and ignored by equality.
struct Bottom {
    std::string message;
};

/// The unified intermediate representation: a hierarchical tree, a grid,
/// or the failure marker. Immutable by convention once built.
class IRDoc {
public:
    IRDoc() : doc_(Bottom{}) {}
    IRDoc(TreeNode tree) : doc_(std::move(tree)) {}
    IRDoc(TableIR table) : doc_(std::move(table)) {}
    IRDoc(Bottom bottom) : doc_(std::move(bottom)) {}

    static IRDoc bottom(std::string message = {}) { return IRDoc(Bottom{std::move(message)}); }

    bool is_tree() const { return std::holds_alternative<TreeNode>(doc_); }
    bool is_table() const { return std::holds_alternative<TableIR>(doc_); }
    bool is_bottom() const { return std::holds_alternative<Bottom>(doc_); }

    const TreeNode& tree() const { return std::get<TreeNode>(doc_); }
    const TableIR& table() const { return std::get<TableIR>(doc_); }
    const Bottom& bottom_info() const { return std::get<Bottom>(doc_); }

private:
    std::variant<TreeNode, TableIR, Bottom> doc_;
};

/// Structural equality modulo canonicalization: trees compare after
/// canonicalize, tables compare headers and rows in order, Bottom equals
/// only Bottom.
bool ir_equal(const IRDoc& a, const IRDoc& b);

/// Node count of the document's tree form (tables via embed_table).
/// Bottom counts as zero.
std::size_t ir_node_count(const IRDoc& doc);

/// Stable line-oriented dump for golden-file tests. One node per line with
/// a depth prefix for trees; "header"/"cell" records for tables:
///
///   tree
///   0 ROOT
///   1 DICT key=user
///   2 LIST
///   3 VALUE index=0 value=text:Alice
///
///   table cols=2 rows=1
///   header 0 Name
///   cell 0 0 text:Bob
///
///   bottom <message>
std::string debug_dump(const IRDoc& doc);

} // namespace streval
