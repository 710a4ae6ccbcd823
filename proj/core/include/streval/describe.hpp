#pragma once

#include <string>
#include <vector>

#include "streval/format.hpp"
#include "streval/ir.hpp"

namespace streval {

/// Natural-language rendering of a document: enough to rebuild the IR,
/// nothing more. Statements follow deterministic traversal order
/// (row-major for grids, depth-first pre-order for trees).
struct Description {
    std::string preamble;
    std::vector<std::string> statements;
    Format target_format = Format::JsonTree;
};

/// Coordinate templates for grids ("In row {i}, the value of column {h}
/// is {v}.", 1-based rows) and path templates for trees ("Under the path
/// {p}, there exists a node with value {v}.", slash-joined from root).
/// Empty containers get their own clause. Throws std::invalid_argument on
/// Bottom input or a track mismatch with the target format.
Description describe(const IRDoc& doc, Format target);

/// Fixed zero-shot prompt: system instruction, preamble, then every
/// statement verbatim, newline-separated. Deterministic, so equal
/// documents give byte-identical prompts.
std::string render_prompt(const Description& desc);

} // namespace streval
