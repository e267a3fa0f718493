#include "versinus/cli.hpp"

#include "versinus/versinus.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace versinus::cli {

namespace {

// Reads the `--config` file: a flat JSON object whose keys are flag names.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override
    {
        nlohmann::ordered_json doc = nlohmann::ordered_json::object();
        for (const auto* opt : app->get_options()) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) {
                continue;
            }
            const auto& name = opt->get_lnames().front();
            if (opt->count() > 0) {
                const auto& results = opt->results();
                if (results.size() == 1) {
                    doc[name] = results.front();
                } else {
                    doc[name] = results;
                }
            } else if (default_also && !opt->get_default_str().empty()) {
                doc[name] = opt->get_default_str();
            }
        }
        return doc.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override
    {
        nlohmann::json doc;
        try {
            input >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : doc.items()) {
            CLI::ConfigItem item;
            item.name = key;
            auto scalar = [&](const nlohmann::json& v) -> std::string {
                if (v.is_string()) {
                    return v.get<std::string>();
                }
                if (v.is_boolean()) {
                    return v.get<bool>() ? "true" : "false";
                }
                if (v.is_number()) {
                    return v.dump();
                }
                throw CLI::ConversionError("unsupported value for config key '" + key + "'");
            };
            if (value.is_array()) {
                for (const auto& v : value) {
                    item.inputs.push_back(scalar(v));
                }
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
        return items;
    }
};

struct Options {
    std::string input;
    std::string format = "auto";
    std::size_t window = 400;
    std::size_t max_messages = 0; // 0 = all
    std::size_t stride = 1;
    std::string direction = "information";
    std::string rank_by = "strength";
    std::vector<double> fractions{0.05, 0.15};
    GeometryParams geometry;
    std::string canvas = "1000x600";
    std::vector<std::size_t> blink{30, 6};
    std::string measure = "out:in";
    int fps = 25;
    unsigned jobs = 0;
    bool dump_edges = false;
    bool encode = false;
    std::string out;

    // generate
    std::uint64_t seed = 1;
    std::size_t messages = 200;
    std::size_t senders = 12;
    double reply_prob = 0.75;
    double ghost_prob = 0.0;
    bool timestamps = false;
    bool fold_headers = false;
};

class UsageError : public Error {
public:
    using Error::Error;
};

InputFormat input_format(const Options& opt, std::string_view bytes)
{
    if (opt.format == "auto") {
        return detect_format(bytes);
    }
    if (opt.format == "csv") {
        return InputFormat::Csv;
    }
    if (opt.format == "jsonl") {
        return InputFormat::Jsonl;
    }
    return InputFormat::Mbox;
}

// Everything derivable from flags alone; bad values are usage errors.
PipelineConfig pipeline_config(const Options& opt)
{
    PipelineConfig config;
    try {
        config.window.delta = opt.window;
        config.window.stride = opt.stride;
        config.direction = parse_direction(opt.direction);
        config.rank_by = parse_rank_by(opt.rank_by);
        config.fractions = {opt.fractions.at(0), opt.fractions.at(1)};
        config.fractions.validate();
        config.geometry = opt.geometry;
        config.geometry.validate();
        config.canvas = parse_canvas(opt.canvas);
        config.scene.blink = {opt.blink.at(0), opt.blink.at(1)};
        config.scene.measure = parse_measure(opt.measure);
        config.scene.validate();
        config.fps_hint = opt.fps;
        config.jobs = opt.jobs;
        config.dump_edges = opt.dump_edges;
        if (opt.window < 1) {
            throw ConfigError("--window must be at least 1");
        }
        if (opt.stride < 1) {
            throw ConfigError("--stride must be at least 1");
        }
        if (opt.max_messages != 0 && opt.window > opt.max_messages) {
            throw ConfigError(fmt::format("--window {} exceeds --max-messages {}", opt.window, opt.max_messages));
        }
        if (opt.fps < 1) {
            throw ConfigError("--fps must be at least 1");
        }
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    return config;
}

std::vector<Message> load_messages(const Options& opt, std::ostream& err)
{
    if (opt.input.empty()) {
        throw UsageError("--input is required");
    }
    const auto bytes = read_file(opt.input);
    MboxStats stats;
    auto messages = parse(bytes, input_format(opt, bytes), &stats);
    if (stats.skipped() > 0) {
        fmt::print(err, "warning: skipped {} mbox messages ({} without Message-ID, {} without From, {} duplicate ids)\n",
                   stats.skipped(), stats.missing_message_id, stats.missing_from, stats.duplicate_message_id);
    }
    return messages;
}

void fit_total(PipelineConfig& config, const Options& opt, std::size_t available, bool need_window = true)
{
    if (opt.max_messages != 0 && opt.max_messages > available) {
        throw Error(fmt::format("--max-messages {} exceeds the {} messages in the input", opt.max_messages, available));
    }
    config.window.total = opt.max_messages == 0 ? available : opt.max_messages;
    if (need_window && config.window.delta > config.window.total) {
        throw Error(fmt::format("window of {} messages is longer than the {} messages considered",
                                config.window.delta, config.window.total));
    }
}

std::string shell_quote(const std::string& text)
{
    std::string quoted = "'";
    for (char c : text) {
        quoted += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return quoted + "'";
}

int cmd_render(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto config = pipeline_config(opt);
    if (opt.out.empty()) {
        throw UsageError("--out is required for render");
    }
    const auto messages = load_messages(opt, err);
    fit_total(config, opt, messages.size());
    const auto global = build_global_layout(messages, config);
    const auto summary = render_animation(messages, global, config, opt.out);
    fmt::print(out, "wrote {} frames to {}\n", summary.frames.size(), opt.out);
    fmt::print(out, "manifest: {}\n", summary.manifest_path.string());
    if (global.unresolved_replies > 0) {
        fmt::print(err, "warning: {} replies reference unknown messages\n", global.unresolved_replies);
    }
    if (!opt.encode) {
        fmt::print(out, "encode with (run inside {}): {}\n", opt.out, summary.encoder_command);
        return kExitOk;
    }
    const auto command = fmt::format("cd {} && {}", shell_quote(opt.out), summary.encoder_command);
    fmt::print(out, "running: {}\n", command);
    out.flush();
    if (std::system(command.c_str()) != 0) {
        throw Error("encoder command failed");
    }
    return kExitOk;
}

int cmd_inspect(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto config = pipeline_config(opt);
    const auto messages = load_messages(opt, err);
    fit_total(config, opt, messages.size(), false);
    const auto global = build_global_layout(messages, config);
    const auto& sizes = global.assignment.sizes();
    fmt::print(out, "messages: {}\n", config.window.total);
    fmt::print(out, "vertices: {}\n", global.assignment.size());
    fmt::print(out, "edges: {}\n", global.network.edges().size());
    fmt::print(out, "unresolved replies: {}\n", global.unresolved_replies);
    fmt::print(out, "sectors: h={} i={} p={}\n", sizes.hubs, sizes.intermediaries, sizes.peripherals);
    if (config.window.delta <= config.window.total) {
        fmt::print(out, "windows: {}\n", window_count(config.window));
    } else {
        fmt::print(out, "windows: 0 (window of {} exceeds the {} messages)\n", config.window.delta,
                   config.window.total);
    }
    out << layout_dump(global.layout);
    return kExitOk;
}

int cmd_oracle(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto config = pipeline_config(opt);
    const auto messages = load_messages(opt, err);
    fit_total(config, opt, messages.size());

    WindowEngine engine(messages, config.window, config.direction);
    const auto frames = engine.frame_count();
    std::size_t mismatches = 0;
    for (std::size_t frame = 0; frame < frames; ++frame) {
        if (frame != 0) {
            engine.advance();
        }
        const auto batch = build_network(engine.window_messages(), engine.id_index(), config.direction);
        const auto findings = audit(engine.current());
        const bool ok = batch == engine.current() && findings.empty();
        if (!ok) {
            ++mismatches;
        }
        fmt::print(out, "window {} start {}: {}\n", frame, engine.window_start(), ok ? "ok" : "MISMATCH");
        for (const auto& f : findings) {
            fmt::print(out, "  audit: {}\n", f);
        }
    }
    if (mismatches == 0) {
        fmt::print(out, "all {} windows match\n", frames);
        return kExitOk;
    }
    fmt::print(out, "{} of {} windows mismatch\n", mismatches, frames);
    return kExitFailure;
}

int cmd_generate(const Options& opt, std::ostream& out)
{
    GeneratorConfig gen;
    gen.messages = opt.messages;
    gen.senders = opt.senders;
    gen.reply_probability = opt.reply_prob;
    gen.unresolved_probability = opt.ghost_prob;
    gen.seed = opt.seed;
    gen.timestamps = opt.timestamps;
    try {
        gen.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    const auto stream = generate_stream(gen);
    std::string text;
    if (opt.format == "jsonl") {
        text = write_jsonl(stream);
    } else if (opt.format == "mbox") {
        text = write_mbox(stream, {.fold_headers = opt.fold_headers});
    } else {
        text = write_csv(stream);
    }
    if (opt.out.empty() || opt.out == "-") {
        out << text;
    } else {
        std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
        if (!file || !(file << text)) {
            throw Error("cannot write '" + opt.out + "'");
        }
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Render sliding-window reply networks as fixed-layout SVG animations", "versinus"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file of flag values; command-line flags take precedence");
    app.require_subcommand(1, 1);

    Options opt;
    app.add_option("--input", opt.input, "Message log to read");
    app.add_option("--format", opt.format, "Input format (or output format for generate)")
        ->check(CLI::IsMember({"auto", "csv", "jsonl", "mbox"}))
        ->capture_default_str();
    app.add_option("--window", opt.window, "Messages per window")->capture_default_str();
    app.add_option("--max-messages", opt.max_messages, "Messages considered from the start of the log (0 = all)")
        ->capture_default_str();
    app.add_option("--stride", opt.stride, "Messages between consecutive frames")->capture_default_str();
    app.add_option("--direction", opt.direction, "Edge orientation")
        ->check(CLI::IsMember({"information", "status"}))
        ->capture_default_str();
    app.add_option("--rank-by", opt.rank_by, "Global ordering metric")
        ->check(CLI::IsMember({"strength", "degree"}))
        ->capture_default_str();
    app.add_option("--fractions", opt.fractions, "Hub and intermediary shares, e.g. 0.05,0.15")
        ->delimiter(',')
        ->expected(2)
        ->capture_default_str();
    app.add_option("--x-margin", opt.geometry.x_margin, "Horizontal margin (unit canvas)")->capture_default_str();
    app.add_option("--baseline", opt.geometry.baseline, "Sinusoid baseline y")->capture_default_str();
    app.add_option("--amplitude", opt.geometry.amplitude, "Sinusoid amplitude")->capture_default_str();
    app.add_option("--line-y", opt.geometry.line_y, "Peripheral line y")->capture_default_str();
    app.add_option("--periods", opt.geometry.periods, "Sinusoid periods")->capture_default_str();
    app.add_option("--decay", opt.geometry.decay, "Relative width of each successive period")
        ->capture_default_str();
    app.add_option("--canvas", opt.canvas, "Frame size in pixels, WxH")->capture_default_str();
    app.add_option("--blink", opt.blink, "Measure blink period,duty in frames")
        ->delimiter(',')
        ->expected(2)
        ->capture_default_str();
    app.add_option("--measure", opt.measure, "Blinking measure")
        ->check(CLI::IsMember({"out:in", "out", "in", "total", "rank"}))
        ->capture_default_str();
    app.add_option("--fps", opt.fps, "Frame rate hint for the encoder command")->capture_default_str();
    app.add_option("--jobs", opt.jobs, "Render threads (0 = all processors)")->capture_default_str();
    app.add_flag("--dump-edges", opt.dump_edges, "Write frame_NNNNNN.tsv edge lists");
    app.add_flag("--encode", opt.encode, "Run the suggested ffmpeg command after rendering");
    app.add_option("--out", opt.out, "Output directory (render) or file (generate)");
    app.add_option("--seed", opt.seed, "Generator seed")->capture_default_str();
    app.add_option("--messages", opt.messages, "Generated stream length")->capture_default_str();
    app.add_option("--senders", opt.senders, "Generated sender count")->capture_default_str();
    app.add_option("--reply-prob", opt.reply_prob, "Probability a generated message is a reply")
        ->capture_default_str();
    app.add_option("--ghost-prob", opt.ghost_prob, "Share of generated replies to unknown ids")
        ->capture_default_str();
    app.add_flag("--timestamps", opt.timestamps, "Give generated messages timestamps");
    app.add_flag("--fold-headers", opt.fold_headers, "Fold generated mbox headers");

    auto* render = app.add_subcommand("render", "Write SVG frames and manifest.json");
    auto* inspect = app.add_subcommand("inspect", "Print ranking, sector sizes and the layout table");
    auto* oracle = app.add_subcommand("oracle", "Check every incremental window against a batch rebuild");
    auto* generate = app.add_subcommand("generate", "Write a seeded synthetic reply stream");
    for (auto* sub : {render, inspect, oracle, generate}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*render) {
            return cmd_render(opt, out, err);
        }
        if (*inspect) {
            return cmd_inspect(opt, out, err);
        }
        if (*oracle) {
            return cmd_oracle(opt, out, err);
        }
        return cmd_generate(opt, out);
    } catch (const UsageError& e) {
        fmt::print(err, "usage error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitFailure;
    }
}

} // namespace versinus::cli
