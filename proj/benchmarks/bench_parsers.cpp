#include <benchmark/benchmark.h>

#include "streval/datagen.hpp"
#include "streval/describe.hpp"
#include "streval/harness.hpp"
#include "streval/parse.hpp"

using namespace streval;

namespace {

Sample sized_sample(Format f, Complexity c) {
    CorpusConfig cfg;
    cfg.master_seed = 31337;
    cfg.list_len_min = 100;
    cfg.list_len_max = 100;
    cfg.text_len_min = 400;
    cfg.text_len_max = 400;
    return gen_sample(f, c, 5, cfg);
}

void parse_format(benchmark::State& state, Format f, Complexity c) {
    Sample sample = sized_sample(f, c);
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(f, sample.raw));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(sample.raw.size()));
}

} // namespace

#define PARSE_BENCH(name, format, complexity)                                  \
    static void name(benchmark::State& state) {                                \
        parse_format(state, format, complexity);                               \
    }                                                                          \
    BENCHMARK(name)

PARSE_BENCH(BM_ParseJsonTreeNested, Format::JsonTree, Complexity::Nested);
PARSE_BENCH(BM_ParseXmlTreeNested, Format::XmlTree, Complexity::Nested);
PARSE_BENCH(BM_ParseCsvLongList, Format::Csv, Complexity::LongList);
PARSE_BENCH(BM_ParseMarkdownLongList, Format::MarkdownTable, Complexity::LongList);
PARSE_BENCH(BM_ParseHtmlLongList, Format::HtmlTable, Complexity::LongList);
PARSE_BENCH(BM_ParseLatexSymbolic, Format::LatexTable, Complexity::Symbolic);
PARSE_BENCH(BM_ParseJsonListSparse, Format::JsonList, Complexity::Sparse);
PARSE_BENCH(BM_ParseXmlListLongList, Format::XmlList, Complexity::LongList);

static void BM_SerializeJsonTree(benchmark::State& state) {
    Sample sample = sized_sample(Format::JsonTree, Complexity::Nested);
    for (auto _ : state)
        benchmark::DoNotOptimize(serialize(Format::JsonTree, sample.ir));
}
BENCHMARK(BM_SerializeJsonTree);

static void BM_DescribeLongTable(benchmark::State& state) {
    Sample sample = sized_sample(Format::Csv, Complexity::LongList);
    for (auto _ : state)
        benchmark::DoNotOptimize(render_prompt(describe(sample.ir, Format::Csv)));
}
BENCHMARK(BM_DescribeLongTable);

static void BM_OraclePipelinePerSample(benchmark::State& state) {
    CorpusConfig cfg;
    cfg.master_seed = 11;
    cfg.samples_per_category = 1;
    cfg.list_len_min = 50;
    cfg.list_len_max = 50;
    auto corpus = gen_corpus(cfg);
    RunConfig run;
    run.backend = BackendKind::Oracle;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_pipeline(corpus, run));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_OraclePipelinePerSample);

BENCHMARK_MAIN();
