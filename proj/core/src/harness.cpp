#include "streval/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "streval/metrics.hpp"
#include "streval/parse.hpp"
#include "streval/text_metrics.hpp"

namespace streval {

namespace detail_harness {
bool is_transport_error(const std::exception& e);
}

namespace {

EvalRecord evaluate_sample(const Sample& sample, Backend& backend,
                           const RunConfig& config, bool measure_latency) {
    EvalRecord record;
    record.id = sample.id;
    record.backend = backend.name();

    const std::string prompt = render_prompt(sample.description);
    std::string output;
    bool have_output = false;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t attempt = 0;
    for (;;) {
        try {
            output = backend.invoke(sample, prompt);
            have_output = true;
            break;
        } catch (const std::exception& e) {
            const bool retry = backend.retryable() &&
                               detail_harness::is_transport_error(e) &&
                               attempt < config.retries;
            if (!retry) {
                record.backend += std::string(" [") + e.what() + "]";
                break;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(50u << attempt));
            ++attempt;
        }
    }
    if (measure_latency) {
        record.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
    }

    record.raw_output = have_output ? output : std::string();
    record.rouge1 = rouge_n(sample.raw, record.raw_output, 1);
    record.rouge2 = rouge_n(sample.raw, record.raw_output, 2);
    record.bleu = bleu(sample.raw, record.raw_output);

    IRDoc generated = IRDoc::bottom("no output");
    if (have_output) {
        record.extracted = extract_candidate(record.raw_output, sample.format);
        if (is_valid_utf8(record.extracted)) {
            generated = parse(sample.format, record.extracted).result;
        } else {
            generated = IRDoc::bottom("invalid UTF-8 in model output");
        }
    }
    record.parsed_ok = !generated.is_bottom();
    record.csa = csa(sample.ir, generated);
    record.nted = nted(sample.ir, generated);
    return record;
}

} // namespace

std::vector<EvalRecord> run_pipeline(const std::vector<Sample>& corpus,
                                     const RunConfig& config) {
    auto backend = make_backend(config); // config errors surface before any request
    const bool measure_latency = config.backend == BackendKind::HttpChat;

    std::vector<EvalRecord> records(corpus.size());
    const std::size_t jobs = std::max<std::size_t>(1, config.jobs);
    if (jobs == 1 || corpus.size() <= 1) {
        for (std::size_t i = 0; i < corpus.size(); ++i)
            records[i] = evaluate_sample(corpus[i], *backend, config, measure_latency);
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::string failure_message;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= corpus.size() || failed.load())
                    return;
                try {
                    records[i] =
                        evaluate_sample(corpus[i], *backend, config, measure_latency);
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    failure_message = e.what();
                    failed.store(true);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(jobs, corpus.size()); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
        if (failed.load())
            throw std::runtime_error("pipeline worker failed: " + failure_message);
    }

    std::sort(records.begin(), records.end(),
              [](const EvalRecord& a, const EvalRecord& b) { return a.id < b.id; });
    return records;
}

std::string eval_record_line(const EvalRecord& r) {
    nlohmann::json line;
    line["id"] = r.id;
    line["raw_output"] = r.raw_output;
    line["extracted"] = r.extracted;
    line["parse_status"] = r.parsed_ok ? "ok" : "bottom";
    line["csa"] = r.csa;
    line["nted"] = r.nted;
    line["rouge1"] = r.rouge1;
    line["rouge2"] = r.rouge2;
    line["bleu"] = r.bleu;
    line["latency_ms"] = r.latency_ms;
    line["backend"] = r.backend;
    return line.dump();
}

EvalRecord eval_record_from_line(const std::string& line) {
    auto j = nlohmann::json::parse(line);
    EvalRecord r;
    r.id = j.at("id").get<std::string>();
    r.raw_output = j.at("raw_output").get<std::string>();
    r.extracted = j.at("extracted").get<std::string>();
    r.parsed_ok = j.at("parse_status").get<std::string>() == "ok";
    r.csa = j.at("csa").get<double>();
    r.nted = j.at("nted").get<double>();
    r.rouge1 = j.at("rouge1").get<double>();
    r.rouge2 = j.at("rouge2").get<double>();
    r.bleu = j.at("bleu").get<double>();
    r.latency_ms = j.at("latency_ms").get<std::int64_t>();
    r.backend = j.at("backend").get<std::string>();
    return r;
}

void write_results(const std::vector<EvalRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open results for writing: " + path);
    for (const auto& r : records)
        out << eval_record_line(r) << '\n';
    if (!out)
        throw std::runtime_error("failed writing results: " + path);
}

std::vector<EvalRecord> load_results(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open results: " + path);
    std::vector<EvalRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        try {
            records.push_back(eval_record_from_line(line));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return records;
}

} // namespace streval
