#include <benchmark/benchmark.h>
#include <versinus/generate.hpp>
#include <versinus/window.hpp>

using namespace versinus;

namespace {

const std::vector<Message>& corpus()
{
    static const auto messages = [] {
        GeneratorConfig config;
        config.messages = 20000;
        config.senders = 300;
        return generate_stream(config);
    }();
    return messages;
}

} // namespace

// Full sweep of every window position with the incremental engine.
static void BM_IncrementalSweep(benchmark::State& state)
{
    const auto delta = static_cast<std::size_t>(state.range(0));
    const WindowConfig config{delta, corpus().size(), 1};
    for (auto _ : state) {
        WindowEngine engine(corpus(), config);
        while (engine.has_next()) {
            engine.advance();
        }
        benchmark::DoNotOptimize(engine.current().total_weight());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * window_count(config)));
}
BENCHMARK(BM_IncrementalSweep)->Arg(400)->Arg(2000)->Unit(benchmark::kMillisecond);

// The same windows rebuilt from scratch; per-window cost for comparison.
static void BM_BatchRebuildPerWindow(benchmark::State& state)
{
    const auto delta = static_cast<std::size_t>(state.range(0));
    const IdIndex index(corpus());
    std::size_t start = 0;
    const auto last = corpus().size() - delta;
    for (auto _ : state) {
        const auto net = build_network(std::span(corpus()).subspan(start, delta), index);
        benchmark::DoNotOptimize(net.total_weight());
        start = start == last ? 0 : start + 1;
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_BatchRebuildPerWindow)->Arg(400)->Arg(2000);
