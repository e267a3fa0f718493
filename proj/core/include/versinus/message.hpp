#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace versinus {

/// One record of a message log. Only authorship and reply linkage matter.
struct Message {
    std::size_t seq_index = 0;
    std::string sender;
    std::string message_id;
    std::optional<std::string> reply_to;
    std::optional<std::int64_t> timestamp;

    friend bool operator==(const Message&, const Message&) = default;
};

/// Trim ASCII whitespace and lowercase; the canonical sender identity.
std::string normalize_sender(std::string_view raw);

} // namespace versinus
