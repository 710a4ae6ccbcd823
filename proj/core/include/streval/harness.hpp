#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "streval/datagen.hpp"
#include "streval/format.hpp"
#include "streval/ir.hpp"

namespace streval {

enum class BackendKind { HttpChat, Replay, Oracle, Corruptor };

std::string_view backend_kind_token(BackendKind kind);
std::optional<BackendKind> backend_kind_from_token(std::string_view token);

struct RunConfig {
    BackendKind backend = BackendKind::Oracle;

    // HTTP chat-completions backend.
    std::string endpoint;      // e.g. http://host:port/v1/chat/completions
    std::string model;
    double temperature = 0.1;
    std::size_t max_tokens = 4096;
    std::size_t timeout_ms = 30000;
    std::size_t retries = 3;
    std::string api_key_env = "STREVAL_API_KEY";

    // Replay backend.
    std::string cassette_path;

    // Corruptor backend.
    double corruption_rate = 0.0;
    std::uint64_t corruption_seed = 1;

    std::size_t jobs = 1;
};

/// Per-sample scores and provenance. Text metrics are computed on the
/// (reference raw, model raw output) pair whatever the parse status, so
/// n-gram scores stay defined for unparseable generations.
struct EvalRecord {
    std::string id;
    std::string raw_output;
    std::string extracted;
    bool parsed_ok = false;
    double csa = 0.0;
    double nted = 0.0;
    double rouge1 = 0.0;
    double rouge2 = 0.0;
    double bleu = 0.0;
    std::int64_t latency_ms = 0;
    std::string backend;
};

std::string eval_record_line(const EvalRecord& record);
EvalRecord eval_record_from_line(const std::string& line);
void write_results(const std::vector<EvalRecord>& records, const std::string& path);
std::vector<EvalRecord> load_results(const std::string& path);

/// A model stand-in: given the rendered prompt and the sample it belongs
/// to, produce raw text. Errors are reported by throwing; the pipeline
/// converts per-sample failures into Bottom records after retries.
class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string name() const = 0;
    virtual std::string invoke(const Sample& sample, const std::string& prompt) = 0;
    /// Transport-level failures are retried; content is never retried.
    virtual bool retryable() const { return false; }
};

std::unique_ptr<Backend> make_oracle_backend();
std::unique_ptr<Backend> make_corruptor_backend(double rate, std::uint64_t seed);
std::unique_ptr<Backend> make_replay_backend(const std::string& cassette_path);
std::unique_ptr<Backend> make_http_backend(const RunConfig& config);
std::unique_ptr<Backend> make_backend(const RunConfig& config);

/// Runs the closed loop over the corpus: render prompt, query the
/// backend, extract and re-parse the candidate, and score against the
/// sample's own IR. One record per sample, ordered by sample id; samples
/// may be evaluated concurrently up to config.jobs.
std::vector<EvalRecord> run_pipeline(const std::vector<Sample>& corpus,
                                     const RunConfig& config);

/// Value noise plus occasional structural damage, deterministic in
/// (doc, rate, seed). Each leaf value is replaced with probability
/// `rate` by a fresh scalar guaranteed to differ. With probability
/// rate/2, one Dict entry is re-parented one level up (trees) or one
/// column is dropped (tables). rate = 0 returns the document unchanged.
IRDoc corrupt(const IRDoc& doc, double rate, std::uint64_t seed);

/// Records (prompt hash -> response) pairs against the configured HTTP
/// backend so later runs can replay without network access. Per-sample
/// failures are reported in the returned list; partial cassettes are
/// valid.
std::vector<std::string> record_cassette(const std::vector<Sample>& corpus,
                                         const RunConfig& http_config,
                                         const std::string& cassette_path);

} // namespace streval
