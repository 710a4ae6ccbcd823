#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "config_file.hpp"
#include "streval/datagen.hpp"
#include "streval/harness.hpp"
#include "streval/metrics.hpp"
#include "streval/parse.hpp"
#include "streval/report.hpp"
#include "streval/text_metrics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1; // usage or configuration problem
constexpr int kExitData = 2; // malformed/inconsistent data files
constexpr int kExitBackend = 3; // backend or network failure

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open file: " + path);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

std::vector<streval::Sample> load_corpus(const std::string& manifest_path) {
    try {
        return streval::load_manifest(manifest_path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const streval::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace streval;

    CLI::App app{"Self-supervised structured-data fidelity evaluation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed_flag;
    std::string out_path;
    std::optional<std::size_t> jobs_flag;
    app.add_option("--config", config_path, "JSON config file (corpus + run keys)");
    app.add_option("--seed", seed_flag, "Master seed override");
    app.add_option("--out", out_path, "Output path");
    app.add_option("--jobs", jobs_flag, "Concurrent backend requests");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a seeded corpus manifest");
    gen->fallthrough();
    // describe
    auto* describe_cmd =
        app.add_subcommand("describe", "Render prompts from a manifest");
    describe_cmd->fallthrough();
    std::string manifest_path;
    describe_cmd->add_option("--manifest", manifest_path, "Corpus manifest")->required();
    // run
    auto* run_cmd = app.add_subcommand("run", "Evaluate a backend over a corpus");
    run_cmd->fallthrough();
    std::string run_manifest;
    std::string backend_token;
    std::string endpoint;
    std::string model;
    std::string cassette;
    std::optional<double> rate_flag;
    std::optional<std::uint64_t> corruption_seed_flag;
    std::optional<double> temperature_flag;
    std::optional<std::size_t> max_tokens_flag;
    std::optional<std::size_t> retries_flag;
    std::optional<std::size_t> timeout_flag;
    run_cmd->add_option("--manifest", run_manifest, "Corpus manifest")->required();
    run_cmd->add_option("--backend", backend_token, "oracle|corruptor|replay|http");
    run_cmd->add_option("--endpoint", endpoint, "Chat-completions URL");
    run_cmd->add_option("--model", model, "Model name for the HTTP backend");
    run_cmd->add_option("--cassette", cassette, "Cassette path for replay");
    run_cmd->add_option("--rate", rate_flag, "Corruption rate in [0,1]");
    run_cmd->add_option("--corruption-seed", corruption_seed_flag, "Corruption seed");
    run_cmd->add_option("--temperature", temperature_flag, "Sampling temperature");
    run_cmd->add_option("--max-tokens", max_tokens_flag, "Max output tokens");
    run_cmd->add_option("--retries", retries_flag, "Transport retry count");
    run_cmd->add_option("--timeout-ms", timeout_flag, "Per-request timeout");
    // score
    auto* score_cmd = app.add_subcommand("score", "Score a generated file against an original");
    score_cmd->fallthrough();
    std::string score_format;
    std::string orig_path;
    std::string gen_path;
    score_cmd->add_option("--format", score_format, "Format token")->required();
    score_cmd->add_option("--orig", orig_path, "Original file")->required();
    score_cmd->add_option("--gen", gen_path, "Generated file")->required();
    // report
    auto* report_cmd = app.add_subcommand("report", "Aggregate results and export tables");
    report_cmd->fallthrough();
    std::string report_results;
    std::string report_manifest;
    std::string emit_token = "csv";
    std::string variance_out;
    std::string heatmap_metric;
    std::string heatmap_axis = "format";
    std::string heatmap_out;
    report_cmd->add_option("--results", report_results, "Results .jsonl (repeatable)")
        ->required();
    report_cmd->add_option("--manifest", report_manifest, "Corpus manifest")->required();
    report_cmd->add_option("--emit", emit_token, "csv|json");
    report_cmd->add_option("--variance-out", variance_out,
                           "Also write cross-model variance to this path");
    report_cmd->add_option("--heatmap", heatmap_metric,
                           "Also write a heatmap for this metric");
    report_cmd->add_option("--heatmap-axis", heatmap_axis, "format|complexity");
    report_cmd->add_option("--heatmap-out", heatmap_out, "Heatmap output path");
    // record
    auto* record_cmd = app.add_subcommand("record", "Capture a replay cassette over HTTP");
    record_cmd->fallthrough();
    std::string record_manifest;
    std::string record_endpoint;
    std::string record_model;
    std::string record_cassette_path;
    record_cmd->add_option("--manifest", record_manifest, "Corpus manifest")->required();
    record_cmd->add_option("--endpoint", record_endpoint, "Chat-completions URL");
    record_cmd->add_option("--model", record_model, "Model name");
    record_cmd->add_option("--cassette", record_cassette_path, "Cassette output path")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    streval::cli::ToolConfig config;
    int config_status = run_guarded([&] {
        config = streval::cli::load_config(config_path);
        return kExitOk;
    });
    if (config_status != kExitOk)
        return config_status;
    if (seed_flag)
        config.corpus.master_seed = *seed_flag;
    if (jobs_flag)
        config.run.jobs = *jobs_flag;

    if (gen->parsed()) {
        return run_guarded([&] {
            if (out_path.empty())
                throw streval::cli::ConfigError("gen requires --out");
            auto corpus = gen_corpus(config.corpus);
            write_manifest(corpus, out_path);
            std::cerr << "wrote " << corpus.size() << " samples to " << out_path << '\n';
            return kExitOk;
        });
    }

    if (describe_cmd->parsed()) {
        return run_guarded([&] {
            auto corpus = load_corpus(manifest_path);
            std::ofstream file;
            std::ostream* out = &std::cout;
            if (!out_path.empty()) {
                file.open(out_path, std::ios::binary);
                if (!file)
                    throw DataError("cannot open output: " + out_path);
                out = &file;
            }
            for (const auto& sample : corpus) {
                nlohmann::json line;
                line["id"] = sample.id;
                line["prompt"] = render_prompt(sample.description);
                *out << line.dump() << '\n';
            }
            return kExitOk;
        });
    }

    if (run_cmd->parsed()) {
        return run_guarded([&] {
            if (out_path.empty())
                throw streval::cli::ConfigError("run requires --out");
            if (!backend_token.empty()) {
                auto kind = backend_kind_from_token(backend_token);
                if (!kind)
                    throw streval::cli::ConfigError("unknown backend: " + backend_token);
                config.run.backend = *kind;
            }
            if (!endpoint.empty())
                config.run.endpoint = endpoint;
            if (!model.empty())
                config.run.model = model;
            if (!cassette.empty())
                config.run.cassette_path = cassette;
            if (rate_flag)
                config.run.corruption_rate = *rate_flag;
            if (corruption_seed_flag)
                config.run.corruption_seed = *corruption_seed_flag;
            if (temperature_flag)
                config.run.temperature = *temperature_flag;
            if (max_tokens_flag)
                config.run.max_tokens = *max_tokens_flag;
            if (retries_flag)
                config.run.retries = *retries_flag;
            if (timeout_flag)
                config.run.timeout_ms = *timeout_flag;

            auto corpus = load_corpus(run_manifest);
            std::vector<EvalRecord> records;
            try {
                records = run_pipeline(corpus, config.run);
            } catch (const std::exception& e) {
                // Pre-flight failures: missing cassettes or endpoints.
                std::cerr << "backend error: " << e.what() << '\n';
                return kExitBackend;
            }
            write_results(records, out_path);
            std::size_t bottoms = 0;
            for (const auto& r : records)
                if (!r.parsed_ok)
                    ++bottoms;
            std::cerr << "wrote " << records.size() << " records to " << out_path
                      << " (" << bottoms << " bottom)\n";
            return kExitOk;
        });
    }

    if (score_cmd->parsed()) {
        return run_guarded([&] {
            auto format = format_from_token(score_format);
            if (!format)
                throw streval::cli::ConfigError("unknown format: " + score_format);
            const std::string orig_text = read_file(orig_path);
            const std::string gen_text = read_file(gen_path);
            auto orig = parse(*format, orig_text);
            if (!orig.ok())
                throw DataError("original does not parse: " +
                                orig.result.bottom_info().message);
            auto gen_outcome = parse(*format, extract_candidate(gen_text, *format));

            nlohmann::json result;
            result["format"] = score_format;
            result["parse_status"] = gen_outcome.ok() ? "ok" : "bottom";
            result["csa"] = csa(orig.result, gen_outcome.result);
            result["nted"] = nted(orig.result, gen_outcome.result);
            result["rouge1"] = rouge_n(orig_text, gen_text, 1);
            result["rouge2"] = rouge_n(orig_text, gen_text, 2);
            result["bleu"] = bleu(orig_text, gen_text);
            const std::string text = result.dump(2) + "\n";
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out)
                    throw DataError("cannot open output: " + out_path);
                out << text;
            }
            return kExitOk;
        });
    }

    if (report_cmd->parsed()) {
        return run_guarded([&] {
            if (out_path.empty())
                throw streval::cli::ConfigError("report requires --out");
            EmitFormat emit_format;
            if (emit_token == "csv")
                emit_format = EmitFormat::Csv;
            else if (emit_token == "json")
                emit_format = EmitFormat::Json;
            else
                throw streval::cli::ConfigError("unknown emit format: " + emit_token);

            auto corpus = load_corpus(report_manifest);
            std::vector<EvalRecord> records;
            try {
                records = load_results(report_results);
            } catch (const std::exception& e) {
                throw DataError(e.what());
            }
            Summary summary;
            try {
                summary = aggregate(records, corpus);
            } catch (const std::exception& e) {
                throw DataError(e.what());
            }
            emit_summary(summary, out_path, emit_format);

            if (!variance_out.empty()) {
                std::set<std::string> models;
                for (const auto& row : summary.rows)
                    models.insert(row.model);
                if (models.size() < 2)
                    throw DataError("variance needs results from at least two models");
                emit_variance(variance_across_models({summary}), variance_out,
                              emit_format);
            }
            if (!heatmap_metric.empty()) {
                auto metric = metric_from_token(heatmap_metric);
                if (!metric)
                    throw streval::cli::ConfigError("unknown metric: " + heatmap_metric);
                if (heatmap_out.empty())
                    throw streval::cli::ConfigError("--heatmap requires --heatmap-out");
                emit_heatmap(summary, *metric, heatmap_axis, heatmap_out, emit_format);
            }
            return kExitOk;
        });
    }

    if (record_cmd->parsed()) {
        return run_guarded([&] {
            if (!record_endpoint.empty())
                config.run.endpoint = record_endpoint;
            if (!record_model.empty())
                config.run.model = record_model;
            config.run.backend = BackendKind::HttpChat;
            auto corpus = load_corpus(record_manifest);
            std::vector<std::string> failures;
            try {
                failures = record_cassette(corpus, config.run, record_cassette_path);
            } catch (const std::exception& e) {
                std::cerr << "backend error: " << e.what() << '\n';
                return kExitBackend;
            }
            for (const auto& f : failures)
                std::cerr << "failed: " << f << '\n';
            if (!failures.empty() && failures.size() == corpus.size()) {
                std::cerr << "all requests failed\n";
                return kExitBackend;
            }
            std::cerr << "recorded " << (corpus.size() - failures.size())
                      << " responses to " << record_cassette_path << '\n';
            return kExitOk;
        });
    }

    return kExitUsage;
}
