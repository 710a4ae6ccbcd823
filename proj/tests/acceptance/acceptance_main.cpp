// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "streval/datagen.hpp"
#include "streval/harness.hpp"
#include "streval/metrics.hpp"
#include "streval/parse.hpp"
#include "streval/report.hpp"
#include "streval/rng.hpp"
#include "streval/text_metrics.hpp"
#include "support/oracle_ted.hpp"
#include "support/random_docs.hpp"

using namespace streval;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> body;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

CorpusConfig full_config() {
    CorpusConfig cfg; // spec defaults: depth 3-6, lists 50-200, text 200-800
    cfg.master_seed = 20240811;
    cfg.samples_per_category = 2;
    return cfg;
}

CorpusConfig sensitivity_config() {
    CorpusConfig cfg;
    cfg.master_seed = 77001;
    cfg.samples_per_category = 1;
    cfg.list_len_min = 20;
    cfg.list_len_max = 50;
    cfg.text_len_min = 100;
    cfg.text_len_max = 200;
    return cfg;
}

// ---- criterion 1 ----------------------------------------------------------

bool appendix_fidelity(std::string& detail) {
    // Warm allocator and parser paths; the budget is for the parse itself.
    (void)parse(Format::JsonTree, "{}");
    (void)parse(Format::MarkdownTable, "| a |\n| - |\n");
    const auto t0 = Clock::now();
    auto json = parse(Format::JsonTree, R"({"user": ["Alice"]})");
    const double json_seconds = seconds_since(t0);

    TreeNode expected = TreeNode::root({TreeNode::dict(
        "user", {TreeNode::list({TreeNode::value(Scalar::from_text("Alice"))})})});
    if (!json.ok() || !(json.result.tree() == expected) ||
        node_count(json.result.tree()) != 4) {
        detail = "json tree does not match the 4-node shape";
        return false;
    }

    const auto t1 = Clock::now();
    auto md = parse(Format::MarkdownTable, "| Name | Age |\n| --- | --- |\n| Bob | 30 |\n");
    const double md_seconds = seconds_since(t1);

    TableIR expected_table;
    expected_table.headers = {"Name", "Age"};
    expected_table.rows = {{Scalar::from_text("Bob"), Scalar::integer(30)}};
    if (!md.ok() || !(md.result.table() == expected_table)) {
        detail = "markdown table does not match H=[Name,Age], R=[[Bob,30]]";
        return false;
    }
    if (json_seconds >= 1e-3 || md_seconds >= 1e-3) {
        detail = "parse exceeded 1 ms";
        return false;
    }
    std::ostringstream out;
    out << "json " << json_seconds * 1e6 << " us, markdown " << md_seconds * 1e6 << " us";
    detail = out.str();
    return true;
}

// ---- criterion 2 ----------------------------------------------------------

bool round_trip_suite(std::string& detail) {
    const auto t0 = Clock::now();
    auto corpus = gen_corpus(full_config());
    if (corpus.size() != 96) {
        detail = "expected 96 samples, got " + std::to_string(corpus.size());
        return false;
    }
    std::size_t failures = 0;
    for (const auto& sample : corpus) {
        auto reparsed = parse(sample.format, serialize(sample.format, sample.ir));
        if (!reparsed.ok() || !ir_equal(reparsed.result, sample.ir))
            ++failures;
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream out;
    out << corpus.size() << " samples, " << failures << " failures, " << elapsed << " s";
    detail = out.str();
    return failures == 0 && elapsed < 5.0;
}

// ---- criterion 3 ----------------------------------------------------------

bool ted_oracle_equivalence(std::string& detail) {
    const auto t0 = Clock::now();
    SplitMix64 rng(424242);
    const int pairs = 1000;
    int disagreements = 0;
    for (int i = 0; i < pairs; ++i) {
        TreeNode a = canonicalize(testing::random_small_tree(rng, 8));
        TreeNode b = canonicalize(testing::random_small_tree(rng, 8));
        if (ted(a, b) != testing::oracle_ted(a, b))
            ++disagreements;
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream out;
    out << pairs << " pairs, " << disagreements << " disagreements, " << elapsed << " s";
    detail = out.str();
    return disagreements == 0 && elapsed < 60.0;
}

// ---- criterion 4 ----------------------------------------------------------

bool metric_identities(std::string& detail) {
    auto corpus = gen_corpus(full_config());
    for (const auto& sample : corpus) {
        if (nted(sample.ir, sample.ir) != 1.0 || csa(sample.ir, sample.ir) != 1.0) {
            detail = "self-identity violated for " + sample.id;
            return false;
        }
        if (nted(sample.ir, IRDoc::bottom()) != 0.0 ||
            csa(sample.ir, IRDoc::bottom()) != 0.0) {
            detail = "bottom rule violated for " + sample.id;
            return false;
        }
    }
    IRDoc left = parse(Format::JsonTree, R"({"a": 1, "b": 2})").result;
    IRDoc right = parse(Format::JsonTree, R"({"c": 3, "d": 4})").result;
    if (csa(left, right) != 0.0) {
        detail = "fully disjoint leaf sets must score exactly 0";
        return false;
    }
    detail = std::to_string(corpus.size()) + " documents, all identities exact";
    return true;
}

// ---- criterion 5 ----------------------------------------------------------

bool closed_loop_identity(std::string& detail) {
    const auto t0 = Clock::now();
    auto corpus = gen_corpus(full_config());
    RunConfig config;
    config.backend = BackendKind::Oracle;
    config.jobs = 2;
    auto records = run_pipeline(corpus, config);
    std::size_t imperfect = 0;
    for (const auto& r : records)
        if (!(r.parsed_ok && r.csa == 1.0 && r.nted == 1.0))
            ++imperfect;
    const double elapsed = seconds_since(t0);
    std::ostringstream out;
    out << records.size() << " samples, " << imperfect << " imperfect, " << elapsed << " s";
    detail = out.str();
    return imperfect == 0 && records.size() == corpus.size() && elapsed < 10.0;
}

// ---- criterion 6 ----------------------------------------------------------

bool sensitivity_property(std::string& detail) {
    const auto t0 = Clock::now();
    auto corpus = gen_corpus(sensitivity_config());
    const std::vector<double> levels = {0.0, 0.1, 0.3, 0.5};
    const int seeds_per_level = 100;

    std::vector<double> mean_csa, mean_nted, mean_rouge2;
    for (double rate : levels) {
        double sum_csa = 0.0, sum_nted = 0.0, sum_rouge2 = 0.0;
        std::size_t count = 0;
        for (int seed = 1; seed <= seeds_per_level; ++seed) {
            RunConfig config;
            config.backend = BackendKind::Corruptor;
            config.corruption_rate = rate;
            config.corruption_seed = static_cast<std::uint64_t>(seed);
            config.jobs = 2;
            auto records = run_pipeline(corpus, config);
            for (const auto& r : records) {
                sum_csa += r.csa;
                sum_nted += r.nted;
                sum_rouge2 += r.rouge2;
                ++count;
            }
        }
        mean_csa.push_back(sum_csa / static_cast<double>(count));
        mean_nted.push_back(sum_nted / static_cast<double>(count));
        mean_rouge2.push_back(sum_rouge2 / static_cast<double>(count));
    }

    bool csa_decreasing = true, nted_decreasing = true;
    for (std::size_t i = 1; i < levels.size(); ++i) {
        csa_decreasing = csa_decreasing && mean_csa[i] < mean_csa[i - 1];
        nted_decreasing = nted_decreasing && mean_nted[i] < mean_nted[i - 1];
    }
    auto spread = [](const std::vector<double>& v) {
        double lo = v.front(), hi = v.front();
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return hi - lo;
    };
    const double csa_spread = spread(mean_csa);
    const double rouge2_spread = spread(mean_rouge2);
    const double elapsed = seconds_since(t0);

    std::ostringstream out;
    out.precision(4);
    out << "mean csa [";
    for (double v : mean_csa)
        out << ' ' << v;
    out << " ], mean nted [";
    for (double v : mean_nted)
        out << ' ' << v;
    out << " ], csa spread " << csa_spread << " vs rouge2 spread " << rouge2_spread
        << ", " << elapsed << " s";
    detail = out.str();
    return csa_decreasing && nted_decreasing && csa_spread > rouge2_spread &&
           elapsed < 300.0;
}

// ---- criterion 7 ----------------------------------------------------------

bool hallucination_omission_monotonicity(std::string& detail) {
    SplitMix64 rng(515151);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
        TreeNode t = testing::random_doc_tree(rng);
        IRDoc orig{t};

        TreeNode hallucinated = t;
        hallucinated.mutable_children().push_back(TreeNode::dict(
            "zz_hallucinated", {TreeNode::value(Scalar::integer(
                                   static_cast<std::int64_t>(rng.below(1000))))}));
        if (!(csa(orig, IRDoc{hallucinated}) < 1.0))
            ++violations;

        // Remove one random leaf.
        TreeNode pruned = t;
        std::vector<TreeNode*> parents;
        std::vector<std::size_t> leaf_slots;
        std::vector<TreeNode*> stack = {&pruned};
        while (!stack.empty()) {
            TreeNode* node = stack.back();
            stack.pop_back();
            for (std::size_t k = 0; k < node->mutable_children().size(); ++k) {
                TreeNode& child = node->mutable_children()[k];
                if (child.kind() == NodeKind::Value) {
                    parents.push_back(node);
                    leaf_slots.push_back(k);
                } else {
                    stack.push_back(&child);
                }
            }
        }
        const std::size_t pick = rng.below(parents.size());
        auto& siblings = parents[pick]->mutable_children();
        siblings.erase(siblings.begin() + static_cast<std::ptrdiff_t>(leaf_slots[pick]));
        parents[pick]->reindex_children();
        if (!(csa(orig, IRDoc{pruned}) < 1.0))
            ++violations;
    }
    detail = "100 documents, " + std::to_string(violations) + " violations";
    return violations == 0;
}

// ---- criterion 8 ----------------------------------------------------------

void shuffle_dict_groups(TreeNode& node, SplitMix64& rng) {
    auto& kids = node.mutable_children();
    const bool all_dict =
        !kids.empty() && std::all_of(kids.begin(), kids.end(), [](const TreeNode& c) {
            return c.kind() == NodeKind::Dict;
        });
    if (all_dict && node.kind() != NodeKind::List) {
        for (std::size_t k = kids.size(); k > 1; --k)
            std::swap(kids[k - 1], kids[rng.below(k)]);
    }
    for (auto& c : kids)
        shuffle_dict_groups(c, rng);
}

bool key_permutation_invariance(std::string& detail) {
    SplitMix64 rng(616161);
    int changed = 0;
    for (int i = 0; i < 100; ++i) {
        TreeNode t = testing::random_doc_tree(rng);
        TreeNode permuted = t;
        shuffle_dict_groups(permuted, rng);
        IRDoc a{t};
        IRDoc b{permuted};
        // Bitwise identical scores, against self and against a third doc.
        TreeNode other_tree = testing::random_doc_tree(rng);
        IRDoc other{other_tree};
        if (csa(other, a) != csa(other, b) || nted(other, a) != nted(other, b) ||
            csa(a, b) != 1.0 || nted(a, b) != 1.0)
            ++changed;
    }
    detail = "100 permutations, " + std::to_string(changed) + " score changes";
    return changed == 0;
}

// ---- criterion 9 ----------------------------------------------------------

bool reporting_arithmetic(std::string& detail) {
    Sample s;
    s.id = "fixture-0";
    s.format = Format::JsonTree;
    s.complexity = Complexity::Simple;
    auto record = [&](const std::string& model, double value) {
        EvalRecord r;
        r.id = "fixture-0";
        r.backend = model;
        r.csa = r.nted = r.rouge1 = r.rouge2 = r.bleu = value;
        r.parsed_ok = true;
        return r;
    };

    Summary s1 = aggregate({record("model_a", 0.2)}, {s});
    Summary s2 = aggregate({record("model_b", 0.8)}, {s});
    VarianceReport two = variance_across_models({s1, s2});
    const double sigma2 = two.variance.at({"csa", "structure"});
    if (std::abs(sigma2 - 0.09) > 1e-12) {
        detail = "two-model sigma^2 = " + std::to_string(sigma2) + ", expected 0.09";
        return false;
    }

    // Hand-computed three-model fixture: means 0.1, 0.4, 0.7 -> sigma^2 = 0.06.
    Summary s3 = aggregate({record("model_c", 0.1)}, {s});
    Summary s4 = aggregate({record("model_d", 0.4)}, {s});
    Summary s5 = aggregate({record("model_e", 0.7)}, {s});
    VarianceReport three = variance_across_models({s3, s4, s5});
    if (std::abs(three.variance.at({"csa", "structure"}) - 0.06) > 1e-12) {
        detail = "three-model variance off";
        return false;
    }

    // Mean arithmetic: 0.0 and 1.0 average to exactly 0.5.
    Summary mean_check = aggregate({record("m", 0.0), record("m", 1.0)}, {s});
    if (mean_check.rows.size() != 1 || mean_check.rows[0].csa != 0.5 ||
        mean_check.rows[0].count != 2) {
        detail = "group mean arithmetic off";
        return false;
    }
    detail = "two-model sigma^2 = 0.09, three-model = 0.06, means exact";
    return true;
}

// ---- criterion 10 ---------------------------------------------------------

bool parser_fuzz(std::string& detail) {
    const auto t0 = Clock::now();
    CorpusConfig cfg;
    cfg.master_seed = 99;
    cfg.samples_per_category = 1;
    cfg.list_len_min = 5;
    cfg.list_len_max = 15;
    cfg.text_len_min = 40;
    cfg.text_len_max = 80;
    auto corpus = gen_corpus(cfg);

    std::vector<std::string> seeds_by_format[8];
    for (const auto& sample : corpus)
        seeds_by_format[static_cast<int>(sample.format)].push_back(sample.raw);

    SplitMix64 rng(888);
    const std::string printable =
        " \t\r\naA0zZ9{}[]()<>\"'|&\\%_#$,;:=-+.*/`~!?^";
    const int per_format = 10000;
    std::size_t slow_inputs = 0;
    std::size_t crashes = 0;
    double worst = 0.0;

    for (Format f : all_formats()) {
        const auto& seeds = seeds_by_format[static_cast<int>(f)];
        for (int i = 0; i < per_format; ++i) {
            std::string input;
            if (i % 10 == 9) {
                // occasionally pure noise
                const std::size_t len = rng.below(160);
                for (std::size_t k = 0; k < len; ++k)
                    input += printable[rng.below(printable.size())];
            } else {
                input = seeds[rng.below(seeds.size())];
                const std::size_t edits = 1 + rng.below(8);
                for (std::size_t e = 0; e < edits && !input.empty(); ++e) {
                    const std::size_t pos = rng.below(input.size());
                    switch (rng.below(4)) {
                    case 0:
                        input[pos] = printable[rng.below(printable.size())];
                        break;
                    case 1:
                        input.erase(pos, 1 + rng.below(4));
                        break;
                    case 2:
                        input.insert(pos, 1, printable[rng.below(printable.size())]);
                        break;
                    default: {
                        // duplicate a slice; provokes unbalanced structures
                        const std::size_t len = std::min<std::size_t>(
                            rng.below(16), input.size() - pos);
                        input.insert(pos, input.substr(pos, len));
                    }
                    }
                }
            }
            if (!is_valid_utf8(input))
                continue;
            const auto p0 = Clock::now();
            try {
                auto outcome = parse(f, input);
                (void)outcome;
            } catch (...) {
                ++crashes;
            }
            const double took = seconds_since(p0);
            worst = std::max(worst, took);
            if (took > 1.0)
                ++slow_inputs;
        }
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream out;
    out << 8 * per_format << " inputs, " << crashes << " escapes, worst " << worst
        << " s/input, total " << elapsed << " s";
    detail = out.str();
    return crashes == 0 && slow_inputs == 0;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "appendix fidelity (4-node tree, markdown grid, < 1 ms)", appendix_fidelity},
        {2, "round-trip suite (96 samples, 100%, < 5 s)", round_trip_suite},
        {3, "ted oracle equivalence (1000 pairs <= 8 nodes, < 60 s)", ted_oracle_equivalence},
        {4, "metric identities (self = 1, bottom = 0, disjoint = 0)", metric_identities},
        {5, "closed-loop oracle identity (csa = nted = 1, < 10 s)", closed_loop_identity},
        {6, "corruption sensitivity (means decrease, csa spread > rouge2)", sensitivity_property},
        {7, "hallucination/omission strict decrease (100 docs)", hallucination_omission_monotonicity},
        {8, "key-permutation invariance (100 docs, bitwise)", key_permutation_invariance},
        {9, "reporting arithmetic (1e-12, sigma^2 fixtures)", reporting_arithmetic},
        {10, "parser fuzz (10k per format, ok/bottom only)", parser_fuzz},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        std::string transcript;
        bool ok = false;
        try {
            ok = criterion.body(transcript);
        } catch (const std::exception& e) {
            transcript = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion.number,
                    criterion.title.c_str(), transcript.empty() ? "" : " -- ",
                    transcript.c_str());
        std::fflush(stdout);
        if (!ok)
            ++failures;
    }
    if (failures) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
