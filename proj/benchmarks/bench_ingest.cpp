#include <benchmark/benchmark.h>
#include <versinus/generate.hpp>
#include <versinus/ingest.hpp>

using namespace versinus;

namespace {

std::vector<Message> stream(std::size_t n)
{
    GeneratorConfig config;
    config.messages = n;
    config.senders = 200;
    config.timestamps = true;
    return generate_stream(config);
}

} // namespace

static void BM_ParseCsv(benchmark::State& state)
{
    const auto text = write_csv(stream(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_csv(text));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseCsv)->Arg(20000);

static void BM_ParseJsonl(benchmark::State& state)
{
    const auto text = write_jsonl(stream(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_jsonl(text));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseJsonl)->Arg(20000);

static void BM_ParseMbox(benchmark::State& state)
{
    const auto text = write_mbox(stream(static_cast<std::size_t>(state.range(0))), {.fold_headers = true, .decoy_bodies = true});
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_mbox(text));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseMbox)->Arg(20000);
