#pragma once

#include "versinus/message.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace versinus {

/// Seeded synthetic reply stream. Senders are drawn in proportion to
/// 1 + messages already sent; reply targets favor authors that already
/// collected replies (preferential attachment).
struct GeneratorConfig {
    std::size_t messages = 200;
    std::size_t senders = 12;
    double reply_probability = 0.75;
    /// Share of replies that point at an id absent from the stream.
    double unresolved_probability = 0.0;
    std::uint64_t seed = 1;
    bool timestamps = false;

    void validate() const;
};

/// Same config, same stream, on every platform (no std distributions).
std::vector<Message> generate_stream(const GeneratorConfig& config);

} // namespace versinus
