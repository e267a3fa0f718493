#pragma once

#include "versinus/layout.hpp"
#include "versinus/network.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace versinus {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Which value the blinking overlay shows.
enum class Measure { OutIn, OutStrength, InStrength, Total, Rank };

std::string_view to_string(Measure measure);
Measure parse_measure(std::string_view text);

/// Measure text is shown while frame_index mod period < duty.
struct BlinkSchedule {
    std::size_t period = 30;
    std::size_t duty = 6;

    void validate() const;
    bool visible(std::size_t frame_index) const noexcept { return frame_index % period < duty; }
};

/// Glyph extent limits, in unit-canvas lengths.
struct SizeRange {
    double min = 0.006;
    double max = 0.04;

    void validate() const;
};

struct SceneConfig {
    BlinkSchedule blink;
    SizeRange sizes;
    /// Stroke width of the heaviest edge in a frame.
    double edge_width = 0.004;
    Measure measure = Measure::OutIn;

    void validate() const;
};

struct GlyphSpec {
    std::string vertex;
    Point center;
    double width = 0.0;
    double height = 0.0;
    Rgb color;
    Sector sector = Sector::Peripheral;
    std::size_t rank = 0;
    std::optional<std::string> measure_text;
    // Raw values the encodings were derived from.
    std::uint64_t out_strength = 0;
    std::uint64_t in_strength = 0;
};

struct EdgeSpec {
    std::string from;
    std::string to;
    Point from_pos;
    Point to_pos;
    std::uint64_t weight = 0;
    double stroke_width = 0.0;
    double opacity = 1.0;
};

/// Everything needed to draw one window position.
struct FrameScene {
    std::size_t frame_index = 0;
    std::size_t window_start = 0;
    std::vector<EdgeSpec> edges;    // sorted by (from, to)
    std::vector<GlyphSpec> glyphs;  // sorted by global rank
};

/// Log-compressed length: min + (max - min) * ln(1 + value) / ln(1 + frame_max).
double glyph_size(std::uint64_t value, std::uint64_t frame_max, double min_size, double max_size);

/// Blue (receives only) through white (balanced) to red (sends only), by
/// (out - in) / (out + in).
Rgb glyph_color(const VertexStats& stats);

std::string measure_text(Measure measure, const VertexStats& stats, std::size_t rank);

/// Scene for one window network. Every vertex of `window` must be in
/// `layout` and `assignment`; otherwise throws ConsistencyError.
FrameScene build_scene(const InteractionNetwork& window, const LayoutTable& layout,
                       const SectorAssignment& assignment, std::size_t frame_index,
                       const SceneConfig& config = {});

} // namespace versinus
