#pragma once

#include "versinus/network.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace versinus {

/// Sliding window over a message stream: `delta` consecutive messages,
/// starting at every `stride`-th position of the first `total` messages.
struct WindowConfig {
    std::size_t delta = 400;
    std::size_t total = 0;
    std::size_t stride = 1;

    /// Throws ConfigError unless 1 <= delta <= total and stride >= 1.
    void validate() const;
};

/// Number of window positions: floor((total - delta) / stride) + 1.
std::size_t window_count(const WindowConfig& config);

/// Maintains the network of the current window incrementally. The engine
/// references `messages` without copying; the caller keeps them alive.
class WindowEngine {
public:
    /// Positions the engine at frame `first_frame` (window start
    /// first_frame * stride). Only messages[0, total) are considered.
    WindowEngine(std::span<const Message> messages, WindowConfig config,
                 Direction direction = Direction::Information, std::size_t first_frame = 0);

    const WindowConfig& config() const noexcept { return config_; }
    Direction direction() const noexcept { return direction_; }

    std::size_t frame_index() const noexcept { return window_start_ / config_.stride; }
    std::size_t window_start() const noexcept { return window_start_; }
    std::size_t frame_count() const noexcept { return window_count(config_); }
    bool has_next() const noexcept { return frame_index() + 1 < frame_count(); }

    const InteractionNetwork& current() const noexcept { return current_; }
    std::span<const Message> window_messages() const noexcept
    {
        return messages_.subspan(window_start_, config_.delta);
    }
    const IdIndex& id_index() const noexcept { return index_; }

    /// Replies among the considered messages whose target id is unknown.
    std::size_t unresolved_replies() const noexcept { return unresolved_; }

    /// Slides the window forward by `stride` messages; throws Error past the
    /// last window.
    void advance();

private:
    void apply(std::size_t message, bool arriving);

    std::span<const Message> messages_;
    WindowConfig config_;
    Direction direction_;
    IdIndex index_;
    std::vector<std::optional<EdgeKey>> edges_; // oriented per direction_
    std::size_t unresolved_ = 0;
    std::size_t window_start_ = 0;
    InteractionNetwork current_;
};

} // namespace versinus
