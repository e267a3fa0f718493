#include <benchmark/benchmark.h>
#include <versinus/generate.hpp>
#include <versinus/render.hpp>

using namespace versinus;

static void BM_SceneAndSvg(benchmark::State& state)
{
    GeneratorConfig gen;
    gen.messages = 5000;
    gen.senders = static_cast<std::size_t>(state.range(0));
    const auto messages = generate_stream(gen);
    PipelineConfig config;
    config.window = {400, messages.size(), 1};
    const auto global = build_global_layout(messages, config);
    WindowEngine engine(messages, config.window);
    for (auto _ : state) {
        const auto scene = build_scene(engine.current(), global.layout, global.assignment, engine.frame_index(), config.scene);
        benchmark::DoNotOptimize(render_frame(scene, config.canvas));
        if (engine.has_next()) {
            engine.advance();
        }
    }
}
BENCHMARK(BM_SceneAndSvg)->Arg(100)->Arg(1000);
