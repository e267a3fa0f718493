#include "versinus/render.hpp"

#include "versinus/error.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <tuple>
#include <exception>
#include <fstream>
#include <thread>

namespace versinus {

namespace {

std::string xml_escape(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        case '\'':
            out += "&apos;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string hex_color(const Rgb& c)
{
    return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b);
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw Error("failed writing '" + path.string() + "'");
    }
}

void ensure_writable(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error("cannot create output directory '" + dir.string() + "'");
    }
    const auto probe = dir / ".versinus-write-probe";
    {
        std::ofstream out(probe, std::ios::binary | std::ios::trunc);
        if (!out || !(out << "ok")) {
            throw Error("output directory '" + dir.string() + "' is not writable");
        }
    }
    std::filesystem::remove(probe, ec);
}

// Layout constants in pixels.
constexpr double kRankDotRadius = 3.0;
constexpr double kLabelFontSize = 9.0;
constexpr double kMeasureFontSize = 10.0;

} // namespace

void Canvas::validate() const
{
    if (width <= 0 || height <= 0) {
        throw ConfigError(fmt::format("canvas must be positive, got {}x{}", width, height));
    }
}

Canvas parse_canvas(std::string_view text)
{
    const auto sep = text.find('x');
    Canvas canvas{0, 0};
    auto parse_int = [&](std::string_view part, int& value) {
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        return ec == std::errc{} && ptr == part.data() + part.size() && !part.empty();
    };
    if (sep == std::string_view::npos || !parse_int(text.substr(0, sep), canvas.width) ||
        !parse_int(text.substr(sep + 1), canvas.height)) {
        throw ConfigError("canvas must look like WIDTHxHEIGHT, got '" + std::string(text) + "'");
    }
    canvas.validate();
    return canvas;
}

std::string format_number(double value)
{
    auto s = fmt::format("{:.4f}", value);
    if (s == "-0.0000") {
        s.erase(0, 1);
    }
    return s;
}

std::string render_frame(const FrameScene& scene, const Canvas& canvas)
{
    canvas.validate();
    const double w = canvas.width;
    const double h = canvas.height;
    const double stroke_scale = std::min(w, h);
    auto px = [&](const Point& p) { return std::pair{p.x * w, (1.0 - p.y) * h}; };
    const auto& n = format_number;

    std::vector<const EdgeSpec*> edges;
    edges.reserve(scene.edges.size());
    for (const auto& e : scene.edges) {
        edges.push_back(&e);
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeSpec* a, const EdgeSpec* b) {
        return std::tie(a->from, a->to) < std::tie(b->from, b->to);
    });
    std::vector<const GlyphSpec*> glyphs;
    glyphs.reserve(scene.glyphs.size());
    for (const auto& g : scene.glyphs) {
        glyphs.push_back(&g);
    }
    std::sort(glyphs.begin(), glyphs.end(), [](const GlyphSpec* a, const GlyphSpec* b) {
        return std::tie(a->rank, a->vertex) < std::tie(b->rank, b->vertex);
    });

    std::string out;
    out.reserve(256 + 160 * edges.size() + 400 * glyphs.size());
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
                       "viewBox=\"{} {} {} {}\" data-frame=\"{}\" data-window-start=\"{}\">\n",
                       n(w), n(h), n(0), n(0), n(w), n(h), scene.frame_index, scene.window_start);
    out += fmt::format("<rect class=\"background\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
                       "fill=\"#101418\"/>\n",
                       n(0), n(0), n(w), n(h));

    out += "<g class=\"edges\" stroke=\"#8fb3ff\" stroke-linecap=\"round\">\n";
    for (const auto* e : edges) {
        const auto [x1, y1] = px(e->from_pos);
        const auto [x2, y2] = px(e->to_pos);
        out += fmt::format("<line class=\"edge\" data-from=\"{}\" data-to=\"{}\" data-weight=\"{}\" "
                           "x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"{}\" "
                           "stroke-opacity=\"{}\"/>\n",
                           xml_escape(e->from), xml_escape(e->to), e->weight, n(x1), n(y1), n(x2), n(y2),
                           n(e->stroke_width * stroke_scale), n(e->opacity));
    }
    out += "</g>\n";

    out += "<g class=\"glyphs\" stroke=\"#000000\" stroke-width=\"0.5000\">\n";
    for (const auto* g : glyphs) {
        const auto [cx, cy] = px(g->center);
        out += fmt::format("<ellipse class=\"glyph\" data-vertex=\"{}\" data-rank=\"{}\" cx=\"{}\" cy=\"{}\" "
                           "rx=\"{}\" ry=\"{}\" fill=\"{}\"/>\n",
                           xml_escape(g->vertex), g->rank, n(cx), n(cy), n(0.5 * g->width * w),
                           n(0.5 * g->height * h), hex_color(g->color));
    }
    out += "</g>\n";

    out += fmt::format("<g class=\"ranks\" font-family=\"monospace\" font-size=\"{}\" fill=\"#ffffff\">\n",
                       n(kLabelFontSize));
    for (const auto* g : glyphs) {
        const auto [cx, cy] = px(g->center);
        out += fmt::format("<circle class=\"rank-dot\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>"
                           "<text class=\"rank\" data-vertex=\"{}\" x=\"{}\" y=\"{}\">{}</text>\n",
                           n(cx), n(cy), n(kRankDotRadius), xml_escape(g->vertex), n(cx + kRankDotRadius + 1.0),
                           n(cy + 0.5 * g->height * h + kLabelFontSize), g->rank);
    }
    out += "</g>\n";

    out += fmt::format("<g class=\"measures\" font-family=\"monospace\" font-size=\"{}\" fill=\"#ffd27f\" "
                       "text-anchor=\"middle\">\n",
                       n(kMeasureFontSize));
    for (const auto* g : glyphs) {
        if (!g->measure_text) {
            continue;
        }
        const auto [cx, cy] = px(g->center);
        out += fmt::format("<text class=\"measure\" data-vertex=\"{}\" x=\"{}\" y=\"{}\">{}</text>\n",
                           xml_escape(g->vertex), n(cx), n(cy - 0.5 * g->height * h - 2.0),
                           xml_escape(*g->measure_text));
    }
    out += "</g>\n";
    out += "</svg>\n";
    return out;
}

void PipelineConfig::validate() const
{
    window.validate();
    fractions.validate();
    geometry.validate();
    scene.validate();
    canvas.validate();
    if (fps_hint < 1) {
        throw ConfigError("fps hint must be at least 1");
    }
}

GlobalLayout build_global_layout(std::span<const Message> messages, const PipelineConfig& config)
{
    config.fractions.validate();
    config.geometry.validate();
    if (messages.size() < config.window.total) {
        throw Error(fmt::format("stream has {} messages, fewer than the {} requested", messages.size(),
                                config.window.total));
    }
    const auto considered = messages.first(config.window.total);
    const IdIndex index(considered);
    GlobalLayout global;
    ResolveWarnings warnings;
    global.network = build_network(considered, index, config.direction, &warnings);
    global.unresolved_replies = warnings.unresolved;
    global.assignment = partition(rank_vertices(global.network, config.rank_by), config.fractions);
    global.layout = place(global.assignment, config.geometry);
    return global;
}

std::string frame_filename(std::size_t index)
{
    return fmt::format("frame_{:06d}.svg", index);
}

std::string encoder_command(int fps_hint)
{
    return fmt::format("ffmpeg -framerate {} -i frame_%06d.svg -c:v libx264 -pix_fmt yuv420p versinus.mp4",
                       fps_hint);
}

std::string manifest_json(const PipelineConfig& config, const std::vector<FrameSummary>& frames)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["delta"] = config.window.delta;
    doc["total"] = config.window.total;
    doc["stride"] = config.window.stride;
    doc["frame_count"] = frames.size();
    doc["canvas_px"] = {{"width", config.canvas.width}, {"height", config.canvas.height}};
    doc["fps_hint"] = config.fps_hint;
    doc["fractions"] = {{"hub", config.fractions.hub},
                        {"intermediary", config.fractions.intermediary},
                        {"peripheral", config.fractions.peripheral()}};
    const auto& g = config.geometry;
    doc["geometry"] = {{"x_margin", g.x_margin}, {"baseline", g.baseline}, {"amplitude", g.amplitude},
                       {"line_y", g.line_y},     {"periods", g.periods},   {"decay", g.decay}};
    doc["direction"] = std::string(to_string(config.direction));
    doc["rank_by"] = std::string(to_string(config.rank_by));
    doc["blink"] = {{"period", config.scene.blink.period}, {"duty", config.scene.blink.duty}};
    doc["measure"] = std::string(to_string(config.scene.measure));
    auto& list = doc["frames"] = ordered_json::array();
    for (const auto& f : frames) {
        list.push_back({{"index", f.index},
                        {"window_start", f.window_start},
                        {"active_vertices", f.active_vertices},
                        {"edge_count", f.edge_count}});
    }
    return doc.dump(2) + "\n";
}

AnimationSummary render_animation(std::span<const Message> messages, const GlobalLayout& global,
                                  const PipelineConfig& config, const std::filesystem::path& out_dir)
{
    config.validate();
    ensure_writable(out_dir);

    const auto frame_count = window_count(config.window);
    std::vector<FrameSummary> frames(frame_count);

    unsigned jobs = config.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.jobs;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, frame_count));

    // Each worker owns a contiguous frame range and its own engine.
    auto work = [&](std::size_t first, std::size_t last) {
        WindowEngine engine(messages, config.window, config.direction, first);
        for (std::size_t frame = first; frame < last; ++frame) {
            if (frame != first) {
                engine.advance();
            }
            const auto& net = engine.current();
            auto scene = build_scene(net, global.layout, global.assignment, frame, config.scene);
            scene.window_start = engine.window_start();
            write_file(out_dir / frame_filename(frame), render_frame(scene, config.canvas));
            if (config.dump_edges) {
                write_file(out_dir / fmt::format("frame_{:06d}.tsv", frame), edge_dump(net));
            }
            frames[frame] = {frame, engine.window_start(), net.vertices().size(), net.edges().size()};
        }
    };

    if (jobs <= 1) {
        work(0, frame_count);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        {
            std::vector<std::jthread> workers;
            workers.reserve(jobs);
            for (unsigned j = 0; j < jobs; ++j) {
                const auto first = frame_count * j / jobs;
                const auto last = frame_count * (j + 1) / jobs;
                workers.emplace_back([&, j, first, last] {
                    try {
                        work(first, last);
                    } catch (...) {
                        errors[j] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    AnimationSummary summary;
    summary.manifest_path = out_dir / "manifest.json";
    write_file(summary.manifest_path, manifest_json(config, frames));
    summary.frames = std::move(frames);
    summary.encoder_command = encoder_command(config.fps_hint);
    return summary;
}

} // namespace versinus
