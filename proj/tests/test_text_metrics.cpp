#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "streval/metrics.hpp"
#include "streval/parse.hpp"
#include "streval/text_metrics.hpp"

using namespace streval;

TEST_CASE("tokenizer splits alphanumeric runs and symbols") {
    auto tokens = tokenize(R"({"a": 12, "b"})");
    std::vector<std::string> expected = {"{", "\"", "a", "\"", ":",  "12",
                                         ",", "\"", "b", "\"", "}"};
    CHECK(tokens == expected);
    CHECK(tokenize("  spaced   out  ") == std::vector<std::string>{"spaced", "out"});
    CHECK(tokenize("").empty());
    // each non-ascii code point is one token
    CHECK(tokenize("a\xC3\xA9" "b") ==
          std::vector<std::string>{"a", "\xC3\xA9", "b"});
}

TEST_CASE("bleu identities and degenerate cases") {
    CHECK(bleu("a b c d e", "a b c d e") == doctest::Approx(1.0));
    CHECK(bleu("a b c", "") == 0.0);
    CHECK(bleu("alpha beta gamma delta", "zeta eta theta iota") < 0.05);
}

TEST_CASE("bleu matches the hand-computed truncation example") {
    // ref "a b c d e", hyp "a b c d": all modified precisions are 1 after
    // add-one smoothing, so BLEU = brevity penalty = exp(1 - 5/4).
    const double expected = std::exp(1.0 - 5.0 / 4.0);
    CHECK(bleu("a b c d e", "a b c d") == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bleu smoothing keeps short hypotheses scored") {
    // Unigram-only hypothesis: p1 = 1, higher orders all smoothed to 1,
    // brevity penalty dominates.
    const double got = bleu("a b c", "a");
    CHECK(got == doctest::Approx(std::exp(1.0 - 3.0)).epsilon(1e-12));
}

TEST_CASE("rouge_n identities and the bigram example") {
    CHECK(rouge_n("a b c", "a b c", 1) == doctest::Approx(1.0));
    CHECK(rouge_n("a b c", "a b c", 2) == doctest::Approx(1.0));
    CHECK(rouge_n("a b c", "x y z", 1) == 0.0);
    CHECK(rouge_n("", "", 1) == 0.0);
    CHECK(rouge_n("a", "a", 2) == 0.0); // neither side has a bigram

    // ref "a b c", hyp "a b d": bigram overlap {ab}; P = R = 1/2.
    CHECK(rouge_n("a b c", "a b d", 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(rouge_n("a", "a", 3), std::invalid_argument);

    // Symmetric whenever both sides carry the same token count.
    CHECK(rouge_n("a b c", "a x c", 1) == rouge_n("a x c", "a b c", 1));
    CHECK(rouge_n("a b c", "a x c", 2) == rouge_n("a x c", "a b c", 2));
}

TEST_CASE("rouge-1 saturates on token-preserving structural damage") {
    // Swapping the values between two keys keeps the token multiset, so
    // rouge-1 stays at 1 while csa sees disjoint triples.
    const char* reference = R"({"a": 1, "b": 2})";
    const char* swapped = R"({"a": 2, "b": 1})";
    CHECK(rouge_n(reference, swapped, 1) == doctest::Approx(1.0));

    auto orig = streval::parse(Format::JsonTree, reference).result;
    auto gen = streval::parse(Format::JsonTree, swapped).result;
    const double content = csa(orig, gen);
    CHECK(content == 0.0);
    CHECK(rouge_n(reference, swapped, 1) >= content);
}

TEST_CASE("scores stay in range on mixed content") {
    const char* texts[] = {"", "a", "{\"k\": 1}", "| a | b |", "x & y < z",
                           "one two three four five six"};
    for (const char* r : texts) {
        for (const char* h : texts) {
            for (double v : {bleu(r, h), rouge_n(r, h, 1), rouge_n(r, h, 2)}) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}
