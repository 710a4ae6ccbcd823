#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "streval/harness.hpp"
#include "streval/parse.hpp"
#include "streval/rng.hpp"

namespace streval {

namespace {

/// Thrown by backends; the pipeline retries transport errors only.
struct BackendError : std::runtime_error {
    BackendError(const std::string& message, bool transport)
        : std::runtime_error(message), transport_error(transport) {}
    bool transport_error;
};

std::string hash_hex(std::string_view text) {
    std::uint64_t h = SplitMix64::hash(text);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

class OracleBackend final : public Backend {
public:
    std::string name() const override { return "oracle"; }
    std::string invoke(const Sample& sample, const std::string&) override {
        return serialize(sample.format, sample.ir);
    }
};

Scalar fresh_scalar(SplitMix64& rng, const Scalar& avoid) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        Scalar candidate;
        switch (rng.below(4)) {
        case 0:
            candidate = Scalar::from_text("swap" + std::to_string(rng.below(100000)));
            break;
        case 1:
            candidate = Scalar::integer(static_cast<std::int64_t>(rng.below(1000000)));
            break;
        case 2:
            candidate = Scalar::real(static_cast<double>(rng.range(1, 99999)) / 64.0);
            break;
        default:
            candidate = Scalar::boolean(rng.below(2) == 0);
            break;
        }
        if (!(candidate == avoid))
            return candidate;
    }
    std::int64_t base = avoid.is_integer() ? avoid.as_integer() : 0;
    return Scalar::integer(base + 1 + static_cast<std::int64_t>(rng.below(1000)));
}

void corrupt_leaves(TreeNode& node, double rate, SplitMix64& rng) {
    if (node.kind() == NodeKind::Value) {
        if (rng.chance(rate))
            node.set_scalar(fresh_scalar(rng, *node.scalar()));
        return;
    }
    for (auto& c : node.mutable_children())
        corrupt_leaves(c, rate, rng);
}

/// Child-index paths of every Dict node that has a grandparent.
void collect_movable(const TreeNode& node, std::vector<std::size_t>& prefix,
                     std::vector<std::vector<std::size_t>>& out) {
    for (std::size_t i = 0; i < node.children().size(); ++i) {
        prefix.push_back(i);
        const TreeNode& child = node.children()[i];
        if (child.kind() == NodeKind::Dict && prefix.size() >= 2)
            out.push_back(prefix);
        collect_movable(child, prefix, out);
        prefix.pop_back();
    }
}

TreeNode* node_at(TreeNode& root, const std::vector<std::size_t>& path,
                  std::size_t depth) {
    TreeNode* n = &root;
    for (std::size_t i = 0; i < depth; ++i)
        n = &n->mutable_children()[path[i]];
    return n;
}

void reparent_one_level_up(TreeNode& root, const std::vector<std::size_t>& path) {
    TreeNode* grandparent = node_at(root, path, path.size() - 2);
    TreeNode* parent = node_at(root, path, path.size() - 1);
    const std::size_t child_pos = path.back();
    const std::size_t parent_pos = path[path.size() - 2];

    TreeNode moved = parent->children()[child_pos];
    parent->mutable_children().erase(parent->mutable_children().begin() + child_pos);
    parent->reindex_children();
    auto& siblings = grandparent->mutable_children();
    siblings.insert(siblings.begin() + parent_pos + 1, std::move(moved));
    grandparent->reindex_children();
}

} // namespace

IRDoc corrupt(const IRDoc& doc, double rate, std::uint64_t seed) {
    if (doc.is_bottom())
        throw std::invalid_argument("corrupt: Bottom input");
    if (rate < 0.0 || rate > 1.0)
        throw std::invalid_argument("corrupt: rate outside [0, 1]");
    if (rate == 0.0)
        return doc;
    SplitMix64 rng(SplitMix64::derive(seed, 0x5EEDC0DE));

    if (doc.is_table()) {
        TableIR t = doc.table();
        for (auto& row : t.rows)
            for (auto& cell : row)
                if (rng.chance(rate))
                    cell = fresh_scalar(rng, cell);
        if (t.headers.size() >= 2 && rng.chance(rate / 2.0)) {
            const std::size_t col = rng.below(t.headers.size());
            t.headers.erase(t.headers.begin() + col);
            for (auto& row : t.rows)
                row.erase(row.begin() + col);
        }
        return IRDoc(std::move(t));
    }

    TreeNode tree = doc.tree();
    corrupt_leaves(tree, rate, rng);
    if (rng.chance(rate / 2.0)) {
        std::vector<std::vector<std::size_t>> movable;
        std::vector<std::size_t> prefix;
        collect_movable(tree, prefix, movable);
        if (!movable.empty())
            reparent_one_level_up(tree, movable[rng.below(movable.size())]);
    }
    return IRDoc(std::move(tree));
}

namespace {

class CorruptorBackend final : public Backend {
public:
    CorruptorBackend(double rate, std::uint64_t seed) : rate_(rate), seed_(seed) {}

    std::string name() const override {
        std::ostringstream out;
        out << "corruptor(rate=" << rate_ << ",seed=" << seed_ << ")";
        return out.str();
    }

    std::string invoke(const Sample& sample, const std::string&) override {
        const std::uint64_t sample_seed =
            SplitMix64::derive(seed_, SplitMix64::hash(sample.id) ^ sample.seed);
        IRDoc damaged = corrupt(sample.ir, rate_, sample_seed);
        return serialize(sample.format, damaged);
    }

private:
    double rate_;
    std::uint64_t seed_;
};

class ReplayBackend final : public Backend {
public:
    explicit ReplayBackend(const std::string& cassette_path) : path_(cassette_path) {
        std::ifstream in(cassette_path, std::ios::binary);
        if (!in)
            throw std::runtime_error("replay: cannot open cassette: " + cassette_path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty())
                continue;
            try {
                auto record = nlohmann::json::parse(line);
                responses_[record.at("prompt_hash").get<std::string>()] =
                    record.at("response").get<std::string>();
            } catch (const std::exception& e) {
                throw std::runtime_error("replay: bad cassette line " +
                                         std::to_string(line_no) + ": " + e.what());
            }
        }
    }

    std::string name() const override { return "replay(" + path_ + ")"; }

    std::string invoke(const Sample&, const std::string& prompt) override {
        auto it = responses_.find(hash_hex(prompt));
        if (it == responses_.end())
            throw BackendError("cassette miss", false);
        return it->second;
    }

private:
    std::string path_;
    std::map<std::string, std::string> responses_;
};

class HttpChatBackend final : public Backend {
public:
    explicit HttpChatBackend(const RunConfig& config) : config_(config) {
        auto scheme_end = config.endpoint.find("://");
        if (scheme_end == std::string::npos)
            throw std::runtime_error("http backend: endpoint must be a full URL");
        auto path_start = config.endpoint.find('/', scheme_end + 3);
        if (path_start == std::string::npos) {
            base_ = config.endpoint;
            path_ = "/v1/chat/completions";
        } else {
            base_ = config.endpoint.substr(0, path_start);
            path_ = config.endpoint.substr(path_start);
        }
        if (const char* key = std::getenv(config.api_key_env.c_str()))
            api_key_ = key;
    }

    std::string name() const override { return "http(" + config_.model + ")"; }
    bool retryable() const override { return true; }

    std::string invoke(const Sample&, const std::string& prompt) override {
        nlohmann::json body;
        body["model"] = config_.model;
        body["temperature"] = config_.temperature;
        body["max_tokens"] = config_.max_tokens;
        body["messages"] = nlohmann::json::array(
            {nlohmann::json{{"role", "user"}, {"content", prompt}}});

        httplib::Client client(base_);
        client.set_connection_timeout(static_cast<time_t>(config_.timeout_ms / 1000),
                                      static_cast<time_t>((config_.timeout_ms % 1000) * 1000));
        client.set_read_timeout(static_cast<time_t>(config_.timeout_ms / 1000),
                                static_cast<time_t>((config_.timeout_ms % 1000) * 1000));
        httplib::Headers headers;
        if (!api_key_.empty())
            headers.emplace("Authorization", "Bearer " + api_key_);

        auto res = client.Post(path_, headers, body.dump(), "application/json");
        if (!res)
            throw BackendError("transport error: " + httplib::to_string(res.error()), true);
        if (res->status < 200 || res->status >= 300) {
            // 5xx and 429 are worth retrying; 4xx content errors are not.
            const bool transient = res->status >= 500 || res->status == 429;
            throw BackendError("http status " + std::to_string(res->status), transient);
        }
        try {
            auto payload = nlohmann::json::parse(res->body);
            return payload.at("choices").at(0).at("message").at("content")
                .get<std::string>();
        } catch (const std::exception& e) {
            throw BackendError(std::string("malformed response: ") + e.what(), false);
        }
    }

private:
    RunConfig config_;
    std::string base_;
    std::string path_;
    std::string api_key_;
};

} // namespace

std::string_view backend_kind_token(BackendKind kind) {
    switch (kind) {
    case BackendKind::HttpChat:
        return "http";
    case BackendKind::Replay:
        return "replay";
    case BackendKind::Oracle:
        return "oracle";
    case BackendKind::Corruptor:
        return "corruptor";
    }
    return "?";
}

std::optional<BackendKind> backend_kind_from_token(std::string_view token) {
    for (BackendKind k : {BackendKind::HttpChat, BackendKind::Replay,
                          BackendKind::Oracle, BackendKind::Corruptor})
        if (backend_kind_token(k) == token)
            return k;
    return std::nullopt;
}

std::unique_ptr<Backend> make_oracle_backend() { return std::make_unique<OracleBackend>(); }

std::unique_ptr<Backend> make_corruptor_backend(double rate, std::uint64_t seed) {
    if (rate < 0.0 || rate > 1.0)
        throw std::runtime_error("corruptor: rate outside [0, 1]");
    return std::make_unique<CorruptorBackend>(rate, seed);
}

std::unique_ptr<Backend> make_replay_backend(const std::string& cassette_path) {
    return std::make_unique<ReplayBackend>(cassette_path);
}

std::unique_ptr<Backend> make_http_backend(const RunConfig& config) {
    if (config.endpoint.empty())
        throw std::runtime_error("http backend: endpoint is required");
    return std::make_unique<HttpChatBackend>(config);
}

std::unique_ptr<Backend> make_backend(const RunConfig& config) {
    switch (config.backend) {
    case BackendKind::Oracle:
        return make_oracle_backend();
    case BackendKind::Corruptor:
        return make_corruptor_backend(config.corruption_rate, config.corruption_seed);
    case BackendKind::Replay:
        return make_replay_backend(config.cassette_path);
    case BackendKind::HttpChat:
        return make_http_backend(config);
    }
    throw std::runtime_error("unknown backend kind");
}

std::vector<std::string> record_cassette(const std::vector<Sample>& corpus,
                                         const RunConfig& http_config,
                                         const std::string& cassette_path) {
    auto backend = make_http_backend(http_config);
    std::ofstream out(cassette_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open cassette for writing: " + cassette_path);

    std::vector<std::string> failures;
    std::map<std::string, bool> seen;
    for (const auto& sample : corpus) {
        const std::string prompt = render_prompt(sample.description);
        const std::string key = hash_hex(prompt);
        if (seen.count(key))
            continue;
        try {
            std::string response;
            std::size_t attempt = 0;
            for (;;) {
                try {
                    response = backend->invoke(sample, prompt);
                    break;
                } catch (const BackendError& e) {
                    if (!e.transport_error || attempt >= http_config.retries)
                        throw;
                    ++attempt;
                }
            }
            nlohmann::json record;
            record["prompt_hash"] = key;
            record["response"] = response;
            out << record.dump() << '\n';
            seen[key] = true;
        } catch (const std::exception& e) {
            failures.push_back(sample.id + ": " + e.what());
        }
    }
    return failures;
}

namespace detail_harness {

// Shared with harness.cpp so the retry policy sees transport flags.
bool is_transport_error(const std::exception& e) {
    const auto* be = dynamic_cast<const BackendError*>(&e);
    return be != nullptr && be->transport_error;
}

} // namespace detail_harness

} // namespace streval
