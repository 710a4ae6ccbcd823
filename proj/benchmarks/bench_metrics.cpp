#include <benchmark/benchmark.h>

#include "streval/datagen.hpp"
#include "streval/harness.hpp"
#include "streval/metrics.hpp"

using namespace streval;

namespace {

CorpusConfig sized_config(std::size_t list_len) {
    CorpusConfig cfg;
    cfg.master_seed = 4242;
    cfg.list_len_min = list_len;
    cfg.list_len_max = list_len;
    return cfg;
}

IRDoc long_list_doc(std::size_t rows) {
    return gen_sample(Format::Csv, Complexity::LongList, 7, sized_config(rows)).ir;
}

IRDoc nested_doc() {
    CorpusConfig cfg;
    cfg.master_seed = 99;
    cfg.nesting_depth_min = 6;
    cfg.nesting_depth_max = 6;
    return gen_sample(Format::JsonTree, Complexity::Nested, 3, cfg).ir;
}

} // namespace

static void BM_TedIdentical(benchmark::State& state) {
    IRDoc doc = long_list_doc(static_cast<std::size_t>(state.range(0)));
    TreeNode tree = canonicalize(embed_table(doc.table()));
    for (auto _ : state)
        benchmark::DoNotOptimize(ted(tree, tree));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(node_count(tree)));
}
BENCHMARK(BM_TedIdentical)->Arg(25)->Arg(50)->Arg(100)->Arg(200)->Complexity();

static void BM_TedCorrupted(benchmark::State& state) {
    IRDoc doc = long_list_doc(static_cast<std::size_t>(state.range(0)));
    TreeNode a = canonicalize(embed_table(doc.table()));
    TreeNode b = canonicalize(embed_table(corrupt(doc, 0.3, 11).table()));
    for (auto _ : state)
        benchmark::DoNotOptimize(ted(a, b));
}
BENCHMARK(BM_TedCorrupted)->Arg(25)->Arg(50)->Arg(100);

static void BM_NtedNestedTree(benchmark::State& state) {
    IRDoc doc = nested_doc();
    IRDoc damaged = corrupt(doc, 0.3, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(nted(doc, damaged));
}
BENCHMARK(BM_NtedNestedTree);

static void BM_Flatten(benchmark::State& state) {
    IRDoc doc = long_list_doc(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(flatten(doc));
}
BENCHMARK(BM_Flatten)->Arg(50)->Arg(200);

static void BM_Csa(benchmark::State& state) {
    IRDoc doc = long_list_doc(static_cast<std::size_t>(state.range(0)));
    IRDoc damaged = corrupt(doc, 0.3, 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(csa(doc, damaged));
}
BENCHMARK(BM_Csa)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
