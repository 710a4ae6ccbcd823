#pragma once

#include <map>
#include <string>
#include <vector>

#include "streval/datagen.hpp"
#include "streval/harness.hpp"

namespace streval {

/// One aggregation row: exact arithmetic means for every metric within a
/// (model, format, complexity) group, plus the sample count and the share
/// of Bottom parses.
struct SummaryRow {
    std::string model;
    std::string format;     // format token
    std::string complexity; // complexity token
    std::size_t count = 0;
    double csa = 0.0;
    double nted = 0.0;
    double rouge1 = 0.0;
    double rouge2 = 0.0;
    double bleu = 0.0;
    double bottom_rate = 0.0;
};

struct Summary {
    std::vector<SummaryRow> rows; // ordered by (model, format, complexity)
};

enum class Metric { Csa, Nted, Rouge1, Rouge2, Bleu };

std::string_view metric_token(Metric m);
std::optional<Metric> metric_from_token(std::string_view token);
double metric_of(const SummaryRow& row, Metric m);

/// Population variance of per-model track means, one value per
/// (metric, track).
struct VarianceReport {
    // keys: (metric token, track token) -> sigma^2
    std::map<std::pair<std::string, std::string>, double> variance;
};

/// Groups records by (model label, format, complexity). Record ids must
/// resolve in the manifest corpus; an unresolvable id throws
/// std::runtime_error naming it. The model label is the backend metadata
/// up to the first space or '[' (failure notes do not split groups).
Summary aggregate(const std::vector<EvalRecord>& records,
                  const std::vector<Sample>& corpus);

/// Per-model per-track means derived from a summary by count-weighted
/// averaging of its rows.
std::map<std::string, std::map<std::string, double>>
model_track_means(const Summary& summary, Metric metric);

/// Population variance across model-level track means; requires at least
/// two distinct models (std::invalid_argument otherwise).
VarianceReport variance_across_models(const std::vector<Summary>& summaries);

enum class EmitFormat { Csv, Json };

/// Fixed column order, 4-decimal fixed-point scores, atomic
/// write-then-rename. JSON mirrors the CSV semantics.
void emit_summary(const Summary& summary, const std::string& path, EmitFormat format);
void emit_variance(const VarianceReport& report, const std::string& path,
                   EmitFormat format);

/// Matrix export for external plotting: rows = models, columns = formats
/// (axis="format") or complexities (axis="complexity"), cells = the mean
/// of the chosen metric.
void emit_heatmap(const Summary& summary, Metric metric, const std::string& axis,
                  const std::string& path, EmitFormat format);

/// Parses a summary CSV produced by emit_summary (used by round-trip
/// tests and downstream tooling).
Summary parse_summary_csv(const std::string& text);
std::string render_summary_csv(const Summary& summary);

} // namespace streval
