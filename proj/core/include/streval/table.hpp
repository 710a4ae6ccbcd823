#pragma once

#include <string>
#include <vector>

#include "streval/scalar.hpp"
#include "streval/tree.hpp"

namespace streval {

/// Grid IR for the table track: an ordered header schema plus rows of
/// cells. Every row has exactly headers.size() cells; headers are
/// non-empty after trimming.
struct TableIR {
    std::vector<std::string> headers;
    std::vector<std::vector<Scalar>> rows;

    bool operator==(const TableIR&) const = default;
};

/// Deterministic tree embedding used so both tracks share the edit-distance
/// kernel:
///
///   ROOT
///     DICT "header"      one VALUE child per header string, in order
///     LIST               one LIST child per row, cells as VALUE children
///
/// Node count is 2 + n + 1 + m + m*n for n headers and m rows. The
/// embedding is injective on valid tables: distinct tables give distinct
/// trees.
TreeNode embed_table(const TableIR& table);

} // namespace streval
