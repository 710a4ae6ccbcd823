#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "streval/format.hpp"
#include "streval/ir.hpp"

namespace streval {

struct Diagnostic {
    std::size_t position = 0;
    std::string message;
    bool fatal = true;
};

/// Result of the deterministic parsing function. The document is Bottom
/// exactly when at least one fatal diagnostic was recorded.
struct ParseOutcome {
    IRDoc result;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !result.is_bottom(); }
};

/// Maps raw text in the given format to the IR. Structure formats yield
/// trees, table formats yield grids. Malformed input never throws: it
/// yields Bottom with diagnostics. The only hard error is invalid UTF-8
/// (std::invalid_argument).
ParseOutcome parse(Format format, std::string_view text);

/// Inverse of parse for non-Bottom documents of the matching track.
/// Output is deterministic and fixed-style (2-space indented JSON with
/// sorted keys, 2-space indented XML, LF line endings) so that
/// parse(format, serialize(format, doc)) is ir_equal to doc.
/// Throws std::invalid_argument on Bottom input or track mismatch.
std::string serialize(Format format, const IRDoc& doc);

/// Isolates the first complete payload candidate for the format from raw
/// model output: strips code fences and surrounding prose (balanced JSON
/// value, first element/table/tabular block, contiguous pipe-table run).
/// Returns the input unchanged when no wrapper is detected.
std::string extract_candidate(std::string_view raw_model_output, Format format);

} // namespace streval
