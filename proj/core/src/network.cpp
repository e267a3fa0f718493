#include "versinus/network.hpp"

#include "versinus/error.hpp"

#include <fmt/format.h>

namespace versinus {

std::string_view to_string(Direction direction)
{
    return direction == Direction::Information ? "information" : "status";
}

Direction parse_direction(std::string_view text)
{
    if (text == "information") {
        return Direction::Information;
    }
    if (text == "status") {
        return Direction::Status;
    }
    throw ConfigError("unknown direction '" + std::string(text) + "'");
}

const VertexStats* InteractionNetwork::find(std::string_view vertex) const
{
    const auto it = vertices_.find(vertex);
    return it == vertices_.end() ? nullptr : &it->second;
}

std::uint64_t InteractionNetwork::weight(std::string_view from, std::string_view to) const
{
    const auto it = edges_.find(EdgeKey{std::string(from), std::string(to)});
    return it == edges_.end() ? 0 : it->second;
}

void InteractionNetwork::add_message(const std::string& sender)
{
    ++vertices_[sender].message_count;
}

void InteractionNetwork::remove_message(const std::string& sender)
{
    const auto it = vertices_.find(sender);
    if (it == vertices_.end() || it->second.message_count == 0) {
        throw ConsistencyError("remove_message: '" + sender + "' has no messages in scope");
    }
    --it->second.message_count;
    drop_if_unreferenced(it);
}

void InteractionNetwork::add_reply(const std::string& from, const std::string& to)
{
    auto& weight = edges_[EdgeKey{from, to}];
    const bool fresh = weight == 0;
    ++weight;
    ++total_weight_;

    auto& source = vertices_[from];
    ++source.out_strength;
    if (fresh) {
        ++source.out_degree;
    }
    auto& target = vertices_[to];
    ++target.in_strength;
    if (fresh) {
        ++target.in_degree;
    }
}

void InteractionNetwork::remove_reply(const std::string& from, const std::string& to)
{
    const auto edge = edges_.find(EdgeKey{from, to});
    if (edge == edges_.end()) {
        throw ConsistencyError("remove_reply: no edge " + from + " -> " + to);
    }
    const bool gone = --edge->second == 0;
    if (gone) {
        edges_.erase(edge);
    }
    --total_weight_;

    const auto source = vertices_.find(from);
    --source->second.out_strength;
    if (gone) {
        --source->second.out_degree;
    }
    // Self-loop: both ends are the same vertex, so drop it only once below.
    const auto target = vertices_.find(to);
    --target->second.in_strength;
    if (gone) {
        --target->second.in_degree;
    }
    drop_if_unreferenced(source);
    if (from != to) {
        drop_if_unreferenced(target);
    }
}

void InteractionNetwork::drop_if_unreferenced(VertexMap::iterator it)
{
    const auto& s = it->second;
    if (s.message_count == 0 && s.in_strength == 0 && s.out_strength == 0) {
        vertices_.erase(it);
    }
}

IdIndex::IdIndex(std::span<const Message> messages)
{
    authors_.reserve(messages.size());
    for (const auto& m : messages) {
        authors_.emplace(m.message_id, &m.sender);
    }
}

const std::string* IdIndex::author_of(std::string_view message_id) const
{
    const auto it = authors_.find(message_id);
    return it == authors_.end() ? nullptr : it->second;
}

std::optional<Contribution> resolve_contribution(const Message& msg, const IdIndex& index,
                                                 ResolveWarnings* warnings)
{
    if (!msg.reply_to) {
        return std::nullopt;
    }
    const auto* author = index.author_of(*msg.reply_to);
    if (author == nullptr) {
        if (warnings != nullptr) {
            ++warnings->unresolved;
        }
        return std::nullopt;
    }
    return Contribution{*author, msg.sender};
}

InteractionNetwork build_network(std::span<const Message> messages, const IdIndex& index,
                                 Direction direction, ResolveWarnings* warnings)
{
    InteractionNetwork net;
    for (const auto& m : messages) {
        net.add_message(m.sender);
        if (const auto c = resolve_contribution(m, index, warnings)) {
            if (direction == Direction::Information) {
                net.add_reply(c->original_author, c->responder);
            } else {
                net.add_reply(c->responder, c->original_author);
            }
        }
    }
    return net;
}

InteractionNetwork build_network(std::span<const Message> messages, Direction direction)
{
    const IdIndex index(messages);
    return build_network(messages, index, direction);
}

std::vector<std::string> audit(const InteractionNetwork& network)
{
    std::vector<std::string> findings;
    InteractionNetwork::VertexMap expected;
    for (const auto& [key, weight] : network.edges()) {
        if (weight == 0) {
            findings.push_back(fmt::format("edge {} -> {} has weight 0", key.from, key.to));
        }
        for (const auto* end : {&key.from, &key.to}) {
            if (network.find(*end) == nullptr) {
                findings.push_back(
                    fmt::format("edge {} -> {} references missing vertex {}", key.from, key.to, *end));
            }
        }
        auto& source = expected[key.from];
        source.out_strength += weight;
        ++source.out_degree;
        auto& target = expected[key.to];
        target.in_strength += weight;
        ++target.in_degree;
    }

    auto check = [&](const std::string& vertex, const char* field, std::uint64_t have,
                     std::uint64_t want) {
        if (have != want) {
            findings.push_back(fmt::format("{}: {} is {}, edges imply {}", vertex, field, have, want));
        }
    };
    for (const auto& [vertex, stats] : network.vertices()) {
        const auto it = expected.find(vertex);
        const VertexStats want = it == expected.end() ? VertexStats{} : it->second;
        check(vertex, "in_strength", stats.in_strength, want.in_strength);
        check(vertex, "out_strength", stats.out_strength, want.out_strength);
        check(vertex, "in_degree", stats.in_degree, want.in_degree);
        check(vertex, "out_degree", stats.out_degree, want.out_degree);
        if (stats.message_count == 0 && stats.total_strength() == 0) {
            findings.push_back(fmt::format("{}: isolated vertex with no messages", vertex));
        }
    }
    return findings;
}

std::string edge_dump(const InteractionNetwork& network)
{
    std::string out;
    for (const auto& [key, weight] : network.edges()) {
        out += fmt::format("{}\t{}\t{}\n", key.from, key.to, weight);
    }
    return out;
}

} // namespace versinus
