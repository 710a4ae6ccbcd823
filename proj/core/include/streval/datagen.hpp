#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "streval/describe.hpp"
#include "streval/format.hpp"
#include "streval/ir.hpp"

namespace streval {

enum class Complexity { Simple, Nested, LongList, Sparse, TextHeavy, Symbolic };

constexpr std::array<Complexity, 6> all_complexities() {
    return {Complexity::Simple,    Complexity::Nested,   Complexity::LongList,
            Complexity::Sparse,    Complexity::TextHeavy, Complexity::Symbolic};
}

std::string_view complexity_token(Complexity c);
std::optional<Complexity> complexity_from_token(std::string_view token);

inline std::vector<Format> default_formats() {
    const auto a = all_formats();
    return std::vector<Format>(a.begin(), a.end());
}

inline std::vector<Complexity> default_complexities() {
    const auto a = all_complexities();
    return std::vector<Complexity>(a.begin(), a.end());
}

/// Size knobs for the seeded generator. Nested grids are realized as wide
/// tables since a grid cannot nest.
struct CorpusConfig {
    std::uint64_t master_seed = 42;
    std::size_t samples_per_category = 2;
    /// Overrides keyed "format:complexity" (tokens), e.g. "csv:simple".
    std::map<std::string, std::size_t> per_category;

    std::size_t nesting_depth_min = 3;
    std::size_t nesting_depth_max = 6;
    std::size_t list_len_min = 50;
    std::size_t list_len_max = 200;
    double sparsity = 0.5;
    std::size_t text_len_min = 200;
    std::size_t text_len_max = 800;
    double symbol_density = 0.4;

    std::vector<Format> formats = default_formats();
    std::vector<Complexity> complexities = default_complexities();
};

/// One corpus unit. Self-consistent by construction:
/// parse(format, raw) is ir_equal to ir, and description == describe(ir, format).
struct Sample {
    std::string id;
    Format format = Format::JsonTree;
    Complexity complexity = Complexity::Simple;
    std::uint64_t seed = 0;
    std::string raw;
    IRDoc ir;
    Description description;
};

/// Deterministic in (format, complexity, seed, config). Throws
/// std::logic_error if the generated sample fails its own invariants.
Sample gen_sample(Format format, Complexity complexity, std::uint64_t seed,
                  const CorpusConfig& config);

/// All configured categories in stable (format, complexity, index) order,
/// with per-sample seeds split off the master seed.
std::vector<Sample> gen_corpus(const CorpusConfig& config);

/// Manifest I/O: one self-contained JSON object per line with fields
/// id, format, complexity, seed, raw, description (the rendered prompt).
std::string manifest_line(const Sample& sample);
void write_manifest(const std::vector<Sample>& corpus, const std::string& path);

/// Loads a manifest, re-parses each raw payload, and checks stored
/// prompts against re-rendered ones. Throws std::runtime_error with the
/// offending line on any inconsistency.
std::vector<Sample> load_manifest(const std::string& path);

} // namespace streval
