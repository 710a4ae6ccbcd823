#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace streval {

/// Deterministic tokenization shared by the n-gram baselines: maximal
/// ASCII alphanumeric runs, plus every other non-space character (UTF-8
/// code point) as its own token.
std::vector<std::string> tokenize(std::string_view text);

/// Sentence-level BLEU-4 with uniform weights, brevity penalty, and
/// add-one smoothing on the order-2..4 precisions. Empty hypothesis or no
/// unigram overlap scores 0; identical strings score 1.
double bleu(std::string_view reference, std::string_view hypothesis);

/// N-gram overlap F1 with clipped counts, n in {1, 2}. Scores 0 when
/// either side lacks any n-gram; identical non-empty strings score 1.
double rouge_n(std::string_view reference, std::string_view hypothesis, int n);

} // namespace streval
