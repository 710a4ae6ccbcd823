#pragma once

// Declarative config document for the CLI: one JSON file carrying the
// corpus knobs and the run parameters. Every key is optional; flags
// override file values.
//
// {
//   "corpus": {
//     "master_seed": 42, "samples_per_category": 2,
//     "per_category": {"csv:simple": 5},
//     "nesting_depth_min": 3, "nesting_depth_max": 6,
//     "list_len_min": 50, "list_len_max": 200,
//     "sparsity": 0.5, "text_len_min": 200, "text_len_max": 800,
//     "symbol_density": 0.4,
//     "formats": ["json_tree", "csv", ...],
//     "complexities": ["simple", "nested", ...]
//   },
//   "run": {
//     "backend": "oracle" | "corruptor" | "replay" | "http",
//     "endpoint": "http://host:port/v1/chat/completions",
//     "model": "name", "temperature": 0.1, "max_tokens": 4096,
//     "timeout_ms": 30000, "retries": 3, "api_key_env": "STREVAL_API_KEY",
//     "cassette": "cassette.jsonl",
//     "corruption_rate": 0.3, "corruption_seed": 7,
//     "jobs": 2
//   }
// }

#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "streval/datagen.hpp"
#include "streval/harness.hpp"

namespace streval::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ToolConfig {
    CorpusConfig corpus;
    RunConfig run;
};

inline void apply_corpus_json(const nlohmann::json& j, CorpusConfig& cfg) {
    if (j.contains("master_seed"))
        cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("samples_per_category"))
        cfg.samples_per_category = j.at("samples_per_category").get<std::size_t>();
    if (j.contains("per_category"))
        for (const auto& [key, value] : j.at("per_category").items())
            cfg.per_category[key] = value.get<std::size_t>();
    if (j.contains("nesting_depth_min"))
        cfg.nesting_depth_min = j.at("nesting_depth_min").get<std::size_t>();
    if (j.contains("nesting_depth_max"))
        cfg.nesting_depth_max = j.at("nesting_depth_max").get<std::size_t>();
    if (j.contains("list_len_min"))
        cfg.list_len_min = j.at("list_len_min").get<std::size_t>();
    if (j.contains("list_len_max"))
        cfg.list_len_max = j.at("list_len_max").get<std::size_t>();
    if (j.contains("sparsity"))
        cfg.sparsity = j.at("sparsity").get<double>();
    if (j.contains("text_len_min"))
        cfg.text_len_min = j.at("text_len_min").get<std::size_t>();
    if (j.contains("text_len_max"))
        cfg.text_len_max = j.at("text_len_max").get<std::size_t>();
    if (j.contains("symbol_density"))
        cfg.symbol_density = j.at("symbol_density").get<double>();
    if (j.contains("formats")) {
        cfg.formats.clear();
        for (const auto& token : j.at("formats")) {
            auto f = format_from_token(token.get<std::string>());
            if (!f)
                throw ConfigError("unknown format token: " + token.get<std::string>());
            cfg.formats.push_back(*f);
        }
    }
    if (j.contains("complexities")) {
        cfg.complexities.clear();
        for (const auto& token : j.at("complexities")) {
            auto c = complexity_from_token(token.get<std::string>());
            if (!c)
                throw ConfigError("unknown complexity token: " + token.get<std::string>());
            cfg.complexities.push_back(*c);
        }
    }
    if (cfg.nesting_depth_min > cfg.nesting_depth_max ||
        cfg.list_len_min > cfg.list_len_max || cfg.text_len_min > cfg.text_len_max)
        throw ConfigError("empty range in corpus config");
    if (cfg.sparsity < 0.0 || cfg.sparsity > 1.0)
        throw ConfigError("sparsity outside [0, 1]");
}

inline void apply_run_json(const nlohmann::json& j, RunConfig& cfg) {
    if (j.contains("backend")) {
        auto kind = backend_kind_from_token(j.at("backend").get<std::string>());
        if (!kind)
            throw ConfigError("unknown backend token: " +
                              j.at("backend").get<std::string>());
        cfg.backend = *kind;
    }
    if (j.contains("endpoint"))
        cfg.endpoint = j.at("endpoint").get<std::string>();
    if (j.contains("model"))
        cfg.model = j.at("model").get<std::string>();
    if (j.contains("temperature"))
        cfg.temperature = j.at("temperature").get<double>();
    if (j.contains("max_tokens"))
        cfg.max_tokens = j.at("max_tokens").get<std::size_t>();
    if (j.contains("timeout_ms"))
        cfg.timeout_ms = j.at("timeout_ms").get<std::size_t>();
    if (j.contains("retries"))
        cfg.retries = j.at("retries").get<std::size_t>();
    if (j.contains("api_key_env"))
        cfg.api_key_env = j.at("api_key_env").get<std::string>();
    if (j.contains("cassette"))
        cfg.cassette_path = j.at("cassette").get<std::string>();
    if (j.contains("corruption_rate"))
        cfg.corruption_rate = j.at("corruption_rate").get<double>();
    if (j.contains("corruption_seed"))
        cfg.corruption_seed = j.at("corruption_seed").get<std::uint64_t>();
    if (j.contains("jobs"))
        cfg.jobs = j.at("jobs").get<std::size_t>();
    if (cfg.temperature < 0.0)
        throw ConfigError("temperature must be >= 0");
    if (cfg.corruption_rate < 0.0 || cfg.corruption_rate > 1.0)
        throw ConfigError("corruption_rate outside [0, 1]");
}

inline ToolConfig load_config(const std::string& path) {
    ToolConfig cfg;
    if (path.empty())
        return cfg;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    try {
        if (doc.contains("corpus"))
            apply_corpus_json(doc.at("corpus"), cfg.corpus);
        if (doc.contains("run"))
            apply_run_json(doc.at("run"), cfg.run);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return cfg;
}

} // namespace streval::cli
