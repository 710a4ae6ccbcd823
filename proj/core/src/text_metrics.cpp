#include "streval/text_metrics.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace streval {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isalnum(c)) {
            std::size_t j = i + 1;
            while (j < n && std::isalnum(static_cast<unsigned char>(text[j])))
                ++j;
            tokens.emplace_back(text.substr(i, j - i));
            i = j;
            continue;
        }
        // One token per code point for symbols.
        std::size_t len = 1;
        if (c >= 0xF0)
            len = 4;
        else if (c >= 0xE0)
            len = 3;
        else if (c >= 0xC0)
            len = 2;
        if (i + len > n)
            len = 1;
        tokens.emplace_back(text.substr(i, len));
        i += len;
    }
    return tokens;
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
    NgramCounts counts;
    if (static_cast<int>(tokens.size()) < n)
        return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::vector<std::string> gram(tokens.begin() + i, tokens.begin() + i + n);
        ++counts[std::move(gram)];
    }
    return counts;
}

std::size_t clipped_overlap(const NgramCounts& ref, const NgramCounts& hyp) {
    std::size_t total = 0;
    for (const auto& [gram, count] : hyp) {
        auto it = ref.find(gram);
        if (it != ref.end())
            total += std::min(count, it->second);
    }
    return total;
}

} // namespace

double bleu(std::string_view reference, std::string_view hypothesis) {
    const auto ref = tokenize(reference);
    const auto hyp = tokenize(hypothesis);
    if (hyp.empty())
        return 0.0;

    double log_precision_sum = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const auto ref_counts = count_ngrams(ref, n);
        const auto hyp_counts = count_ngrams(hyp, n);
        std::size_t total = 0;
        for (const auto& [gram, count] : hyp_counts)
            total += count;
        std::size_t matched = clipped_overlap(ref_counts, hyp_counts);
        double p;
        if (n == 1) {
            if (matched == 0)
                return 0.0;
            p = static_cast<double>(matched) / static_cast<double>(total);
        } else {
            p = (static_cast<double>(matched) + 1.0) /
                (static_cast<double>(total) + 1.0);
        }
        log_precision_sum += 0.25 * std::log(p);
    }

    const double ref_len = static_cast<double>(ref.size());
    const double hyp_len = static_cast<double>(hyp.size());
    double brevity = 1.0;
    if (hyp_len < ref_len)
        brevity = std::exp(1.0 - ref_len / hyp_len);
    return brevity * std::exp(log_precision_sum);
}

double rouge_n(std::string_view reference, std::string_view hypothesis, int n) {
    if (n != 1 && n != 2)
        throw std::invalid_argument("rouge_n supports n in {1, 2}");
    const auto ref_counts = count_ngrams(tokenize(reference), n);
    const auto hyp_counts = count_ngrams(tokenize(hypothesis), n);
    std::size_t ref_total = 0;
    for (const auto& [gram, count] : ref_counts)
        ref_total += count;
    std::size_t hyp_total = 0;
    for (const auto& [gram, count] : hyp_counts)
        hyp_total += count;
    if (ref_total == 0 || hyp_total == 0)
        return 0.0;
    const std::size_t overlap = clipped_overlap(ref_counts, hyp_counts);
    if (overlap == 0)
        return 0.0;
    const double precision = static_cast<double>(overlap) / static_cast<double>(hyp_total);
    const double recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace streval
