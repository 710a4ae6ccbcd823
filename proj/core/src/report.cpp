#include "streval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace streval {

std::string_view metric_token(Metric m) {
    switch (m) {
    case Metric::Csa:
        return "csa";
    case Metric::Nted:
        return "nted";
    case Metric::Rouge1:
        return "rouge1";
    case Metric::Rouge2:
        return "rouge2";
    case Metric::Bleu:
        return "bleu";
    }
    return "?";
}

std::optional<Metric> metric_from_token(std::string_view token) {
    for (Metric m : {Metric::Csa, Metric::Nted, Metric::Rouge1, Metric::Rouge2, Metric::Bleu})
        if (metric_token(m) == token)
            return m;
    return std::nullopt;
}

double metric_of(const SummaryRow& row, Metric m) {
    switch (m) {
    case Metric::Csa:
        return row.csa;
    case Metric::Nted:
        return row.nted;
    case Metric::Rouge1:
        return row.rouge1;
    case Metric::Rouge2:
        return row.rouge2;
    case Metric::Bleu:
        return row.bleu;
    }
    return 0.0;
}

namespace {

std::string model_label(const EvalRecord& record) {
    // Strip failure notes appended after the backend name.
    auto cut = record.backend.find(" [");
    return record.backend.substr(0, cut);
}

struct Accumulator {
    std::size_t count = 0;
    std::size_t bottoms = 0;
    double csa = 0, nted = 0, rouge1 = 0, rouge2 = 0, bleu = 0;
};

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
}

// Label cells (model names) may contain commas; standard CSV quoting.
std::string csv_cell(std::string_view cell) {
    if (cell.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(cell);
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"')
            out += "\"\"";
        else
            out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"' && cell.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out)
            throw std::runtime_error("failed writing: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

} // namespace

Summary aggregate(const std::vector<EvalRecord>& records,
                  const std::vector<Sample>& corpus) {
    std::map<std::string, const Sample*> by_id;
    for (const auto& s : corpus)
        by_id[s.id] = &s;

    std::map<std::tuple<std::string, std::string, std::string>, Accumulator> groups;
    for (const auto& r : records) {
        auto it = by_id.find(r.id);
        if (it == by_id.end())
            throw std::runtime_error("aggregate: record id not in manifest: " + r.id);
        const Sample& s = *it->second;
        auto key = std::make_tuple(model_label(r), std::string(format_token(s.format)),
                                   std::string(complexity_token(s.complexity)));
        Accumulator& acc = groups[key];
        ++acc.count;
        if (!r.parsed_ok)
            ++acc.bottoms;
        acc.csa += r.csa;
        acc.nted += r.nted;
        acc.rouge1 += r.rouge1;
        acc.rouge2 += r.rouge2;
        acc.bleu += r.bleu;
    }

    Summary summary;
    for (const auto& [key, acc] : groups) {
        SummaryRow row;
        row.model = std::get<0>(key);
        row.format = std::get<1>(key);
        row.complexity = std::get<2>(key);
        row.count = acc.count;
        const double n = static_cast<double>(acc.count);
        row.csa = acc.csa / n;
        row.nted = acc.nted / n;
        row.rouge1 = acc.rouge1 / n;
        row.rouge2 = acc.rouge2 / n;
        row.bleu = acc.bleu / n;
        row.bottom_rate = static_cast<double>(acc.bottoms) / n;
        summary.rows.push_back(std::move(row));
    }
    return summary; // std::map iteration gives lexicographic key order
}

std::map<std::string, std::map<std::string, double>>
model_track_means(const Summary& summary, Metric metric) {
    // model -> track -> (weighted sum, count)
    std::map<std::string, std::map<std::string, std::pair<double, double>>> acc;
    for (const auto& row : summary.rows) {
        auto f = format_from_token(row.format);
        if (!f)
            throw std::runtime_error("model_track_means: unknown format token: " + row.format);
        const std::string track{track_token(track_of(*f))};
        auto& cell = acc[row.model][track];
        cell.first += metric_of(row, metric) * static_cast<double>(row.count);
        cell.second += static_cast<double>(row.count);
    }
    std::map<std::string, std::map<std::string, double>> out;
    for (const auto& [model, tracks] : acc)
        for (const auto& [track, sums] : tracks)
            out[model][track] = sums.first / sums.second;
    return out;
}

VarianceReport variance_across_models(const std::vector<Summary>& summaries) {
    std::set<std::string> models;
    for (const auto& s : summaries)
        for (const auto& row : s.rows)
            models.insert(row.model);
    if (models.size() < 2)
        throw std::invalid_argument("variance_across_models: need at least 2 models");

    VarianceReport report;
    for (Metric m : {Metric::Csa, Metric::Nted, Metric::Rouge1, Metric::Rouge2, Metric::Bleu}) {
        // track -> per-model means
        std::map<std::string, std::vector<double>> by_track;
        for (const auto& s : summaries) {
            for (const auto& [model, tracks] : model_track_means(s, m)) {
                (void)model;
                for (const auto& [track, mean] : tracks)
                    by_track[track].push_back(mean);
            }
        }
        for (const auto& [track, means] : by_track) {
            double sum = 0.0;
            for (double v : means)
                sum += v;
            const double mean = sum / static_cast<double>(means.size());
            double sq = 0.0;
            for (double v : means)
                sq += (v - mean) * (v - mean);
            report.variance[{std::string(metric_token(m)), track}] =
                sq / static_cast<double>(means.size());
        }
    }
    return report;
}

std::string render_summary_csv(const Summary& summary) {
    std::string out = "model,format,complexity,count,csa,nted,rouge1,rouge2,bleu,bottom_rate\n";
    for (const auto& row : summary.rows) {
        out += csv_cell(row.model) + ',' + row.format + ',' + row.complexity + ',' +
               std::to_string(row.count) + ',' + fixed4(row.csa) + ',' +
               fixed4(row.nted) + ',' + fixed4(row.rouge1) + ',' + fixed4(row.rouge2) +
               ',' + fixed4(row.bleu) + ',' + fixed4(row.bottom_rate) + '\n';
    }
    return out;
}

Summary parse_summary_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("summary csv: empty input");
    Summary summary;
    while (std::getline(in, line)) {
        if (trim(line).empty())
            continue;
        std::vector<std::string> cells = split_csv_row(line);
        if (cells.size() != 10)
            throw std::runtime_error("summary csv: malformed row: " + line);
        SummaryRow row;
        row.model = cells[0];
        row.format = cells[1];
        row.complexity = cells[2];
        row.count = static_cast<std::size_t>(std::stoull(cells[3]));
        row.csa = std::stod(cells[4]);
        row.nted = std::stod(cells[5]);
        row.rouge1 = std::stod(cells[6]);
        row.rouge2 = std::stod(cells[7]);
        row.bleu = std::stod(cells[8]);
        row.bottom_rate = std::stod(cells[9]);
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

void emit_summary(const Summary& summary, const std::string& path, EmitFormat format) {
    if (format == EmitFormat::Csv) {
        atomic_write(path, render_summary_csv(summary));
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : summary.rows) {
        nlohmann::json r;
        r["model"] = row.model;
        r["format"] = row.format;
        r["complexity"] = row.complexity;
        r["count"] = row.count;
        r["csa"] = fixed4(row.csa);
        r["nted"] = fixed4(row.nted);
        r["rouge1"] = fixed4(row.rouge1);
        r["rouge2"] = fixed4(row.rouge2);
        r["bleu"] = fixed4(row.bleu);
        r["bottom_rate"] = fixed4(row.bottom_rate);
        rows.push_back(std::move(r));
    }
    atomic_write(path, rows.dump(2) + "\n");
}

void emit_variance(const VarianceReport& report, const std::string& path,
                   EmitFormat format) {
    if (format == EmitFormat::Csv) {
        std::string out = "metric,track,variance\n";
        for (const auto& [key, value] : report.variance)
            out += key.first + ',' + key.second + ',' + fixed4(value) + '\n';
        atomic_write(path, out);
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, value] : report.variance) {
        nlohmann::json r;
        r["metric"] = key.first;
        r["track"] = key.second;
        r["variance"] = fixed4(value);
        rows.push_back(std::move(r));
    }
    atomic_write(path, rows.dump(2) + "\n");
}

void emit_heatmap(const Summary& summary, Metric metric, const std::string& axis,
                  const std::string& path, EmitFormat format) {
    if (axis != "format" && axis != "complexity")
        throw std::invalid_argument("heatmap axis must be 'format' or 'complexity'");

    std::set<std::string> models;
    std::set<std::string> columns;
    // (model, column) -> weighted accumulation
    std::map<std::pair<std::string, std::string>, std::pair<double, double>> cells;
    for (const auto& row : summary.rows) {
        const std::string& column = axis == "format" ? row.format : row.complexity;
        models.insert(row.model);
        columns.insert(column);
        auto& cell = cells[{row.model, column}];
        cell.first += metric_of(row, metric) * static_cast<double>(row.count);
        cell.second += static_cast<double>(row.count);
    }

    if (format == EmitFormat::Csv) {
        std::string out = "model";
        for (const auto& c : columns)
            out += ',' + csv_cell(c);
        out += '\n';
        for (const auto& m : models) {
            out += csv_cell(m);
            for (const auto& c : columns) {
                auto it = cells.find({m, c});
                out += ',';
                out += it == cells.end() || it->second.second == 0.0
                           ? ""
                           : fixed4(it->second.first / it->second.second);
            }
            out += '\n';
        }
        atomic_write(path, out);
        return;
    }
    nlohmann::json doc;
    doc["metric"] = std::string(metric_token(metric));
    doc["axis"] = axis;
    doc["columns"] = columns;
    doc["rows"] = nlohmann::json::array();
    for (const auto& m : models) {
        nlohmann::json row;
        row["model"] = m;
        nlohmann::json values = nlohmann::json::array();
        for (const auto& c : columns) {
            auto it = cells.find({m, c});
            if (it == cells.end() || it->second.second == 0.0)
                values.push_back(nullptr);
            else
                values.push_back(fixed4(it->second.first / it->second.second));
        }
        row["values"] = std::move(values);
        doc["rows"].push_back(std::move(row));
    }
    atomic_write(path, doc.dump(2) + "\n");
}

} // namespace streval
