#include "streval/datagen.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "streval/parse.hpp"
#include "streval/rng.hpp"

namespace streval {

std::string_view complexity_token(Complexity c) {
    switch (c) {
    case Complexity::Simple:
        return "simple";
    case Complexity::Nested:
        return "nested";
    case Complexity::LongList:
        return "long_list";
    case Complexity::Sparse:
        return "sparse";
    case Complexity::TextHeavy:
        return "text_heavy";
    case Complexity::Symbolic:
        return "symbolic";
    }
    return "?";
}

std::optional<Complexity> complexity_from_token(std::string_view token) {
    for (Complexity c : all_complexities())
        if (complexity_token(c) == token)
            return c;
    return std::nullopt;
}

namespace {

// Identifier-safe vocabulary; keys and headers stay reconstructable from
// the description templates (single token, no reserved words).
constexpr std::array<std::string_view, 40> kWords = {
    "alpha",  "beta",   "gamma",  "delta",  "sensor", "region", "status",
    "input",  "output", "config", "metric", "window", "batch",  "cache",
    "vector", "matrix", "signal", "filter", "weight", "offset", "volume",
    "period", "record", "source", "target", "bucket", "stream", "policy",
    "tenant", "branch", "widget", "packet", "symbol", "series", "margin",
    "detail", "sample", "module", "handle", "anchor"};

// One of each character class that needs format-specific escaping: JSON
// quote/backslash, Markdown pipe, XML/HTML angle brackets and ampersand,
// LaTeX specials, CSV comma.
constexpr std::string_view kSymbolGuard = "q\"b\\s|p&a<t>pc%u_h#br{cl}d$cm,";

constexpr std::string_view kSymbols = "\"\\|&<>%_#{}$,';:=";

std::string pick_word(SplitMix64& rng) {
    return std::string(kWords[rng.below(kWords.size())]);
}

std::vector<std::string> pick_identifiers(SplitMix64& rng, std::size_t count) {
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string name = pick_word(rng);
        if (std::find(out.begin(), out.end(), name) != out.end())
            name += "_" + std::to_string(rng.below(1000)) + "_" + std::to_string(i);
        out.push_back(std::move(name));
    }
    return out;
}

Scalar random_scalar(SplitMix64& rng) {
    switch (rng.below(5)) {
    case 0:
        return Scalar::from_text(pick_word(rng));
    case 1:
        return Scalar::integer(static_cast<std::int64_t>(rng.range(0, 99999)) - 5000);
    case 2:
        return Scalar::real(static_cast<double>(rng.range(1, 999999)) / 128.0);
    case 3:
        return Scalar::boolean(rng.below(2) == 0);
    default:
        return Scalar::from_text(pick_word(rng) + " " + pick_word(rng));
    }
}

std::string long_text(SplitMix64& rng, const CorpusConfig& cfg) {
    const std::size_t target = rng.range(cfg.text_len_min, cfg.text_len_max);
    std::string out = pick_word(rng);
    while (out.size() < target) {
        out += ' ';
        out += pick_word(rng);
    }
    return out;
}

std::string symbolic_text(SplitMix64& rng, const CorpusConfig& cfg) {
    std::string out = pick_word(rng);
    const std::size_t pieces = rng.range(2, 5);
    for (std::size_t i = 0; i < pieces; ++i) {
        if (rng.chance(cfg.symbol_density))
            out += kSymbols[rng.below(kSymbols.size())];
        else
            out += ' ';
        out += pick_word(rng);
    }
    return out;
}

// ---- structure track ----------------------------------------------------

std::vector<TreeNode> scalar_entries(SplitMix64& rng, std::size_t count) {
    auto keys = pick_identifiers(rng, count);
    std::vector<TreeNode> entries;
    entries.reserve(count);
    for (auto& k : keys)
        entries.push_back(TreeNode::dict(std::move(k), {TreeNode::value(random_scalar(rng))}));
    return entries;
}

TreeNode simple_tree(SplitMix64& rng) {
    return TreeNode::root(scalar_entries(rng, rng.range(2, 5)));
}

/// Builds a container spine of exactly `levels` container levels below the
/// root, alternating objects and lists, with scalar padding on the side.
std::vector<TreeNode> nested_level(SplitMix64& rng, std::size_t levels, bool dict_level) {
    if (levels == 0)
        return {TreeNode::value(random_scalar(rng))};
    if (dict_level) {
        const std::size_t width = rng.range(1, 3);
        auto keys = pick_identifiers(rng, width);
        const std::size_t deep_slot = rng.below(width);
        std::vector<TreeNode> entries;
        for (std::size_t i = 0; i < width; ++i) {
            std::vector<TreeNode> children =
                i == deep_slot ? nested_level(rng, levels - 1, false)
                               : std::vector<TreeNode>{TreeNode::value(random_scalar(rng))};
            entries.push_back(TreeNode::dict(std::move(keys[i]), std::move(children)));
        }
        return entries;
    }
    const std::size_t width = rng.range(1, 3);
    const std::size_t deep_slot = rng.below(width);
    std::vector<TreeNode> elements;
    for (std::size_t i = 0; i < width; ++i) {
        if (i == deep_slot) {
            auto inner = nested_level(rng, levels - 1, true);
            // An object inside a list keeps its entries as siblings.
            for (auto& n : inner)
                elements.push_back(std::move(n));
        } else {
            elements.push_back(TreeNode::value(random_scalar(rng)));
        }
    }
    return {TreeNode::list(std::move(elements))};
}

TreeNode nested_tree(SplitMix64& rng, const CorpusConfig& cfg) {
    const std::size_t depth = rng.range(cfg.nesting_depth_min, cfg.nesting_depth_max);
    return TreeNode::root(nested_level(rng, depth, true));
}

TreeNode long_list_tree(SplitMix64& rng, const CorpusConfig& cfg) {
    const std::size_t n = rng.range(cfg.list_len_min, cfg.list_len_max);
    std::vector<TreeNode> elements;
    elements.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        elements.push_back(TreeNode::value(random_scalar(rng)));
    std::vector<TreeNode> entries;
    entries.push_back(TreeNode::dict("label", {TreeNode::value(Scalar::from_text(pick_word(rng)))}));
    entries.push_back(TreeNode::dict("items", {TreeNode::list(std::move(elements))}));
    return TreeNode::root(std::move(entries));
}

TreeNode sparse_tree(SplitMix64& rng, const CorpusConfig& cfg) {
    const std::size_t count = rng.range(8, 16);
    auto keys = pick_identifiers(rng, count);
    const std::size_t nulls =
        std::min(count, static_cast<std::size_t>(cfg.sparsity * count + 0.5));
    std::vector<bool> is_null(count, false);
    std::fill(is_null.begin(), is_null.begin() + nulls, true);
    for (std::size_t i = count; i > 1; --i)
        std::swap(is_null[i - 1], is_null[rng.below(i)]);
    std::vector<TreeNode> entries;
    for (std::size_t i = 0; i < count; ++i) {
        Scalar v = is_null[i] ? Scalar::null() : random_scalar(rng);
        entries.push_back(TreeNode::dict(std::move(keys[i]), {TreeNode::value(v)}));
    }
    return TreeNode::root(std::move(entries));
}

TreeNode text_heavy_tree(SplitMix64& rng, const CorpusConfig& cfg) {
    const std::size_t count = rng.range(2, 4);
    auto keys = pick_identifiers(rng, count);
    std::vector<TreeNode> entries;
    for (auto& k : keys) {
        entries.push_back(TreeNode::dict(
            std::move(k), {TreeNode::value(Scalar::from_text(long_text(rng, cfg)))}));
    }
    return TreeNode::root(std::move(entries));
}

TreeNode symbolic_tree(SplitMix64& rng, const CorpusConfig& cfg) {
    const std::size_t count = rng.range(3, 6);
    auto keys = pick_identifiers(rng, count);
    std::vector<TreeNode> entries;
    for (std::size_t i = 0; i < count; ++i) {
        Scalar v = i == 0 ? Scalar::from_text(kSymbolGuard)
                          : Scalar::from_text(symbolic_text(rng, cfg));
        entries.push_back(TreeNode::dict(std::move(keys[i]), {TreeNode::value(v)}));
    }
    return TreeNode::root(std::move(entries));
}

// ---- table track ----------------------------------------------------------

TableIR make_table(SplitMix64& rng, std::size_t cols, std::size_t rows) {
    TableIR t;
    t.headers = pick_identifiers(rng, cols);
    t.rows.resize(rows);
    for (auto& row : t.rows) {
        row.reserve(cols);
        for (std::size_t j = 0; j < cols; ++j)
            row.push_back(random_scalar(rng));
    }
    return t;
}

TableIR table_for(SplitMix64& rng, Complexity complexity, const CorpusConfig& cfg) {
    switch (complexity) {
    case Complexity::Simple:
        return make_table(rng, rng.range(2, 5), rng.range(1, 5));
    case Complexity::Nested:
        // Grids cannot nest; nested stress becomes column-count stress.
        return make_table(rng, rng.range(12, 24), rng.range(2, 5));
    case Complexity::LongList:
        return make_table(rng, rng.range(3, 6), rng.range(cfg.list_len_min, cfg.list_len_max));
    case Complexity::Sparse: {
        TableIR t = make_table(rng, rng.range(4, 8), rng.range(5, 10));
        const std::size_t cells = t.headers.size() * t.rows.size();
        const std::size_t nulls = static_cast<std::size_t>(cfg.sparsity * cells + 0.5);
        std::vector<std::size_t> order(cells);
        for (std::size_t i = 0; i < cells; ++i)
            order[i] = i;
        for (std::size_t i = cells; i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);
        for (std::size_t k = 0; k < nulls && k < cells; ++k) {
            std::size_t flat = order[k];
            t.rows[flat / t.headers.size()][flat % t.headers.size()] = Scalar::null();
        }
        return t;
    }
    case Complexity::TextHeavy: {
        TableIR t = make_table(rng, rng.range(2, 4), rng.range(2, 5));
        for (auto& row : t.rows)
            for (auto& cell : row)
                cell = Scalar::from_text(long_text(rng, cfg));
        return t;
    }
    case Complexity::Symbolic: {
        TableIR t = make_table(rng, rng.range(2, 5), rng.range(2, 5));
        for (auto& row : t.rows)
            for (auto& cell : row)
                if (rng.chance(0.7))
                    cell = Scalar::from_text(symbolic_text(rng, cfg));
        t.rows[0][0] = Scalar::from_text(kSymbolGuard);
        return t;
    }
    }
    return make_table(rng, 2, 1);
}

IRDoc generate_ir(Format format, Complexity complexity, SplitMix64& rng,
                  const CorpusConfig& cfg) {
    if (track_of(format) == Track::Table)
        return IRDoc(table_for(rng, complexity, cfg));
    switch (complexity) {
    case Complexity::Simple:
        return IRDoc(simple_tree(rng));
    case Complexity::Nested:
        return IRDoc(nested_tree(rng, cfg));
    case Complexity::LongList:
        return IRDoc(long_list_tree(rng, cfg));
    case Complexity::Sparse:
        return IRDoc(sparse_tree(rng, cfg));
    case Complexity::TextHeavy:
        return IRDoc(text_heavy_tree(rng, cfg));
    case Complexity::Symbolic:
        return IRDoc(symbolic_tree(rng, cfg));
    }
    return IRDoc(simple_tree(rng));
}

} // namespace

Sample gen_sample(Format format, Complexity complexity, std::uint64_t seed,
                  const CorpusConfig& config) {
    SplitMix64 rng(seed);
    Sample s;
    s.format = format;
    s.complexity = complexity;
    s.seed = seed;
    s.ir = generate_ir(format, complexity, rng, config);
    s.raw = serialize(format, s.ir);
    s.description = describe(s.ir, format);

    if (s.ir.is_tree()) {
        if (auto err = validate_tree(s.ir.tree()))
            throw std::logic_error("gen_sample: invalid tree: " + *err);
        if (complexity == Complexity::Nested &&
            tree_depth(s.ir.tree()) < config.nesting_depth_min)
            throw std::logic_error("gen_sample: nested sample below configured depth");
    }
    ParseOutcome reparsed = parse(format, s.raw);
    if (!ir_equal(reparsed.result, s.ir))
        throw std::logic_error("gen_sample: sample does not round-trip through " +
                               std::string(format_token(format)));
    return s;
}

std::vector<Sample> gen_corpus(const CorpusConfig& config) {
    std::vector<Sample> corpus;
    std::size_t category_index = 0;
    for (Format f : config.formats) {
        for (Complexity c : config.complexities) {
            std::string key = std::string(format_token(f)) + ":" +
                              std::string(complexity_token(c));
            std::size_t count = config.samples_per_category;
            if (auto it = config.per_category.find(key); it != config.per_category.end())
                count = it->second;
            for (std::size_t i = 0; i < count; ++i) {
                const std::uint64_t seed = SplitMix64::derive(
                    config.master_seed, (category_index << 20) | i);
                Sample s = gen_sample(f, c, seed, config);
                s.id = key;
                s.id[s.id.find(':')] = '-';
                s.id += "-";
                std::string idx = std::to_string(i);
                s.id += std::string(4 - std::min<std::size_t>(4, idx.size()), '0') + idx;
                corpus.push_back(std::move(s));
            }
            ++category_index;
        }
    }
    return corpus;
}

std::string manifest_line(const Sample& sample) {
    nlohmann::json line;
    line["id"] = sample.id;
    line["format"] = std::string(format_token(sample.format));
    line["complexity"] = std::string(complexity_token(sample.complexity));
    line["seed"] = sample.seed;
    line["raw"] = sample.raw;
    line["description"] = render_prompt(sample.description);
    return line.dump();
}

void write_manifest(const std::vector<Sample>& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open manifest for writing: " + path);
    for (const auto& s : corpus)
        out << manifest_line(s) << '\n';
    if (!out)
        throw std::runtime_error("failed writing manifest: " + path);
}

std::vector<Sample> load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open manifest: " + path);
    std::vector<Sample> corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed manifest line: " + e.what());
        }
        Sample s;
        try {
            s.id = record.at("id").get<std::string>();
            auto fmt = format_from_token(record.at("format").get<std::string>());
            auto cx = complexity_from_token(record.at("complexity").get<std::string>());
            if (!fmt || !cx)
                throw std::runtime_error("unknown format or complexity token");
            s.format = *fmt;
            s.complexity = *cx;
            s.seed = record.at("seed").get<std::uint64_t>();
            s.raw = record.at("raw").get<std::string>();
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        ParseOutcome outcome = parse(s.format, s.raw);
        if (!outcome.ok())
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": raw payload does not parse (" + s.id + ")");
        s.ir = outcome.result;
        s.description = describe(s.ir, s.format);
        if (record.contains("description") &&
            record["description"].get<std::string>() != render_prompt(s.description)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": stored prompt does not match the document (" +
                                     s.id + ")");
        }
        corpus.push_back(std::move(s));
    }
    return corpus;
}

} // namespace streval
