#include "versinus/window.hpp"

#include "versinus/error.hpp"

#include <fmt/format.h>

namespace versinus {

void WindowConfig::validate() const
{
    if (delta < 1) {
        throw ConfigError("window length must be at least 1");
    }
    if (delta > total) {
        throw ConfigError(
            fmt::format("window length {} exceeds the {} messages considered", delta, total));
    }
    if (stride < 1) {
        throw ConfigError("stride must be at least 1");
    }
}

std::size_t window_count(const WindowConfig& config)
{
    config.validate();
    return (config.total - config.delta) / config.stride + 1;
}

WindowEngine::WindowEngine(std::span<const Message> messages, WindowConfig config,
                           Direction direction, std::size_t first_frame)
    : config_(config), direction_(direction)
{
    config_.validate();
    if (messages.size() < config_.total) {
        throw Error(fmt::format("stream has {} messages, fewer than the {} requested",
                                messages.size(), config_.total));
    }
    if (first_frame >= window_count(config_)) {
        throw Error(fmt::format("frame {} is past the last window", first_frame));
    }
    messages_ = messages.first(config_.total);
    index_ = IdIndex(messages_);

    ResolveWarnings warnings;
    edges_.reserve(messages_.size());
    for (const auto& m : messages_) {
        auto c = resolve_contribution(m, index_, &warnings);
        if (!c) {
            edges_.emplace_back();
        } else if (direction_ == Direction::Information) {
            edges_.push_back(EdgeKey{std::move(c->original_author), std::move(c->responder)});
        } else {
            edges_.push_back(EdgeKey{std::move(c->responder), std::move(c->original_author)});
        }
    }
    unresolved_ = warnings.unresolved;

    window_start_ = first_frame * config_.stride;
    for (std::size_t i = window_start_; i < window_start_ + config_.delta; ++i) {
        apply(i, true);
    }
}

void WindowEngine::apply(std::size_t message, bool arriving)
{
    const auto& sender = messages_[message].sender;
    const auto& edge = edges_[message];
    if (arriving) {
        current_.add_message(sender);
        if (edge) {
            current_.add_reply(edge->from, edge->to);
        }
    } else {
        if (edge) {
            current_.remove_reply(edge->from, edge->to);
        }
        current_.remove_message(sender);
    }
}

void WindowEngine::advance()
{
    if (!has_next()) {
        throw Error(fmt::format("cannot advance past the last window (frame {} of {})",
                                frame_index(), frame_count()));
    }
    for (std::size_t step = 0; step < config_.stride; ++step) {
        apply(window_start_, false);
        apply(window_start_ + config_.delta, true);
        ++window_start_;
    }
}

} // namespace versinus
