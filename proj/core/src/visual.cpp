#include "versinus/visual.hpp"

#include "versinus/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace versinus {

std::string_view to_string(Measure measure)
{
    switch (measure) {
    case Measure::OutIn:
        return "out:in";
    case Measure::OutStrength:
        return "out";
    case Measure::InStrength:
        return "in";
    case Measure::Total:
        return "total";
    case Measure::Rank:
        return "rank";
    }
    return "unknown";
}

Measure parse_measure(std::string_view text)
{
    for (auto m : {Measure::OutIn, Measure::OutStrength, Measure::InStrength, Measure::Total, Measure::Rank}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    throw ConfigError("unknown measure '" + std::string(text) + "'");
}

void BlinkSchedule::validate() const
{
    if (period < 1 || duty < 1 || duty > period) {
        throw ConfigError(fmt::format("blink schedule needs 1 <= duty <= period (got {},{})", period, duty));
    }
}

void SizeRange::validate() const
{
    if (!(std::isfinite(min) && std::isfinite(max) && min > 0.0 && min <= max)) {
        throw ConfigError("glyph sizes need 0 < min <= max");
    }
}

void SceneConfig::validate() const
{
    blink.validate();
    sizes.validate();
    if (!(std::isfinite(edge_width) && edge_width > 0.0)) {
        throw ConfigError("edge width must be positive");
    }
}

double glyph_size(std::uint64_t value, std::uint64_t frame_max, double min_size, double max_size)
{
    if (frame_max == 0) {
        return min_size;
    }
    const double ratio = std::log1p(static_cast<double>(value)) / std::log1p(static_cast<double>(frame_max));
    return min_size + (max_size - min_size) * ratio;
}

Rgb glyph_color(const VertexStats& stats)
{
    const auto total = stats.out_strength + stats.in_strength;
    if (total == 0) {
        return {255, 255, 255};
    }
    const double c = (static_cast<double>(stats.out_strength) - static_cast<double>(stats.in_strength)) /
                     static_cast<double>(total);
    const auto fade = static_cast<std::uint8_t>(std::floor(255.0 * (1.0 - std::abs(c))));
    if (c > 0.0) {
        return {255, fade, fade};
    }
    return {fade, fade, 255};
}

std::string measure_text(Measure measure, const VertexStats& stats, std::size_t rank)
{
    switch (measure) {
    case Measure::OutIn:
        return fmt::format("{}:{}", stats.out_strength, stats.in_strength);
    case Measure::OutStrength:
        return fmt::format("{}", stats.out_strength);
    case Measure::InStrength:
        return fmt::format("{}", stats.in_strength);
    case Measure::Total:
        return fmt::format("{}", stats.total_strength());
    case Measure::Rank:
        return fmt::format("{}", rank);
    }
    return {};
}

FrameScene build_scene(const InteractionNetwork& window, const LayoutTable& layout,
                       const SectorAssignment& assignment, std::size_t frame_index,
                       const SceneConfig& config)
{
    config.validate();
    FrameScene scene;
    scene.frame_index = frame_index;

    auto locate = [&](const std::string& vertex) -> const Point& {
        const auto* p = layout.position(vertex);
        if (p == nullptr) {
            throw ConsistencyError("vertex '" + vertex + "' has no layout position");
        }
        return *p;
    };

    std::uint64_t max_out = 0;
    std::uint64_t max_in = 0;
    for (const auto& [id, stats] : window.vertices()) {
        max_out = std::max(max_out, stats.out_strength);
        max_in = std::max(max_in, stats.in_strength);
    }

    const bool blink_on = config.blink.visible(frame_index);
    scene.glyphs.reserve(window.vertices().size());
    for (const auto& [id, stats] : window.vertices()) {
        if (stats.message_count == 0 && stats.total_strength() == 0) {
            continue;
        }
        const auto rank = assignment.rank(id);
        if (rank == 0) {
            throw ConsistencyError("vertex '" + id + "' has no global rank");
        }
        GlyphSpec g;
        g.vertex = id;
        g.center = locate(id);
        g.height = glyph_size(stats.out_strength, max_out, config.sizes.min, config.sizes.max);
        g.width = glyph_size(stats.in_strength, max_in, config.sizes.min, config.sizes.max);
        g.color = glyph_color(stats);
        g.sector = assignment.sector_of_rank(rank);
        g.rank = rank;
        if (blink_on) {
            g.measure_text = measure_text(config.measure, stats, rank);
        }
        g.out_strength = stats.out_strength;
        g.in_strength = stats.in_strength;
        scene.glyphs.push_back(std::move(g));
    }
    std::sort(scene.glyphs.begin(), scene.glyphs.end(),
              [](const GlyphSpec& a, const GlyphSpec& b) { return a.rank < b.rank; });

    std::uint64_t max_weight = 0;
    for (const auto& [key, weight] : window.edges()) {
        if (key.from != key.to) {
            max_weight = std::max(max_weight, weight);
        }
    }
    // Edge map iteration is already (from, to) ordered.
    for (const auto& [key, weight] : window.edges()) {
        if (key.from == key.to) {
            continue;
        }
        const double ratio = std::log1p(static_cast<double>(weight)) / std::log1p(static_cast<double>(max_weight));
        EdgeSpec e;
        e.from = key.from;
        e.to = key.to;
        e.from_pos = locate(key.from);
        e.to_pos = locate(key.to);
        e.weight = weight;
        e.stroke_width = config.edge_width * ratio;
        e.opacity = 0.3 + 0.6 * ratio;
        scene.edges.push_back(std::move(e));
    }
    return scene;
}

} // namespace versinus
