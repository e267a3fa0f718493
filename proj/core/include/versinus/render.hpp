#pragma once

#include "versinus/layout.hpp"
#include "versinus/message.hpp"
#include "versinus/visual.hpp"
#include "versinus/window.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace versinus {

/// Output size in pixels.
struct Canvas {
    int width = 1000;
    int height = 600;

    void validate() const;
    friend bool operator==(const Canvas&, const Canvas&) = default;
};

/// Parses `WxH`, e.g. `1000x600`.
Canvas parse_canvas(std::string_view text);

/// Fixed 4-decimal formatting used for every number in a frame.
std::string format_number(double value);

/// Deterministic SVG document: background, edges, glyphs, rank labels,
/// measure texts, in that order. Unit-canvas y points up; SVG y points down.
std::string render_frame(const FrameScene& scene, const Canvas& canvas);

/// Everything the pipeline needs besides the messages themselves.
struct PipelineConfig {
    WindowConfig window;
    Direction direction = Direction::Information;
    RankBy rank_by = RankBy::Strength;
    SectorFractions fractions;
    GeometryParams geometry;
    SceneConfig scene;
    Canvas canvas;
    int fps_hint = 25;
    /// Worker threads for frame rendering; 0 means hardware concurrency.
    unsigned jobs = 0;
    /// Also write `frame_%06d.tsv` edge lists next to the frames.
    bool dump_edges = false;

    void validate() const;
};

/// Ranking, sectors and fixed positions derived from all considered messages.
/// Independent of the window length and stride.
struct GlobalLayout {
    InteractionNetwork network;
    SectorAssignment assignment;
    LayoutTable layout;
    std::size_t unresolved_replies = 0;
};

GlobalLayout build_global_layout(std::span<const Message> messages, const PipelineConfig& config);

struct FrameSummary {
    std::size_t index = 0;
    std::size_t window_start = 0;
    std::size_t active_vertices = 0;
    std::size_t edge_count = 0;

    friend bool operator==(const FrameSummary&, const FrameSummary&) = default;
};

struct AnimationSummary {
    std::vector<FrameSummary> frames;
    std::filesystem::path manifest_path;
    std::string encoder_command;
};

/// `frame_%06d.svg` for frame `index`.
std::string frame_filename(std::size_t index);

/// Suggested (never executed) command that turns the frames into a video.
std::string encoder_command(int fps_hint);

/// Manifest document for a finished run.
std::string manifest_json(const PipelineConfig& config, const std::vector<FrameSummary>& frames);

/// Writes one SVG per window position and then `manifest.json` into
/// `out_dir`. Output bytes do not depend on `config.jobs`. Throws Error if
/// `out_dir` cannot be written, before any frame is produced.
AnimationSummary render_animation(std::span<const Message> messages, const GlobalLayout& global,
                                  const PipelineConfig& config, const std::filesystem::path& out_dir);

} // namespace versinus
