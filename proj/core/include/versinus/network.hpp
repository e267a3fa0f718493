#pragma once

#include "versinus/message.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace versinus {

/// Information: original author -> responder. Status: the transpose.
enum class Direction { Information, Status };

std::string_view to_string(Direction direction);
Direction parse_direction(std::string_view text);

struct VertexStats {
    std::uint64_t in_strength = 0;
    std::uint64_t out_strength = 0;
    std::uint64_t in_degree = 0;
    std::uint64_t out_degree = 0;
    /// Messages sent by this vertex inside the network's scope.
    std::uint64_t message_count = 0;

    std::uint64_t total_strength() const noexcept { return in_strength + out_strength; }
    std::uint64_t total_degree() const noexcept { return in_degree + out_degree; }

    friend bool operator==(const VertexStats&, const VertexStats&) = default;
};

struct EdgeKey {
    std::string from;
    std::string to;

    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Directed reply-weighted graph keyed by sender identity. Ordered maps keep
/// iteration (and therefore every dump and render) deterministic.
class InteractionNetwork {
public:
    using VertexMap = std::map<std::string, VertexStats, std::less<>>;
    using EdgeMap = std::map<EdgeKey, std::uint64_t>;

    const VertexMap& vertices() const noexcept { return vertices_; }
    const EdgeMap& edges() const noexcept { return edges_; }

    const VertexStats* find(std::string_view vertex) const;
    std::uint64_t weight(std::string_view from, std::string_view to) const;
    std::uint64_t total_weight() const noexcept { return total_weight_; }

    /// Registers `sender` as having sent one more message.
    void add_message(const std::string& sender);
    /// Reverses add_message; drops the vertex once nothing references it.
    void remove_message(const std::string& sender);
    /// Adds one unit to edge from->to, creating endpoints and edge as needed.
    void add_reply(const std::string& from, const std::string& to);
    /// Removes one unit; the edge disappears at weight zero.
    void remove_reply(const std::string& from, const std::string& to);

    /// Test hook for audit(): direct mutable access to a vertex's stats.
    VertexStats& mutable_stats(const std::string& vertex) { return vertices_[vertex]; }

    friend bool operator==(const InteractionNetwork& a, const InteractionNetwork& b)
    {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    void drop_if_unreferenced(VertexMap::iterator it);

    VertexMap vertices_;
    EdgeMap edges_;
    std::uint64_t total_weight_ = 0;
};

/// message_id -> sender over a whole stream. Built once so every window
/// resolves reply targets the same way regardless of what it contains.
class IdIndex {
public:
    IdIndex() = default;
    explicit IdIndex(std::span<const Message> messages);

    const std::string* author_of(std::string_view message_id) const;
    std::size_t size() const noexcept { return authors_.size(); }

private:
    std::unordered_map<std::string_view, const std::string*> authors_;
};

/// Edge a reply contributes, always in information orientation.
struct Contribution {
    std::string original_author;
    std::string responder;

    friend bool operator==(const Contribution&, const Contribution&) = default;
};

struct ResolveWarnings {
    std::size_t unresolved = 0;
};

/// The edge created by `msg`, or nothing if it is not a reply or its target
/// is unknown (counted in `warnings`).
std::optional<Contribution> resolve_contribution(const Message& msg, const IdIndex& index,
                                                 ResolveWarnings* warnings = nullptr);

/// Batch construction over `messages`, resolving targets through `index`.
InteractionNetwork build_network(std::span<const Message> messages, const IdIndex& index,
                                 Direction direction = Direction::Information,
                                 ResolveWarnings* warnings = nullptr);

/// Batch construction that resolves only against `messages` themselves.
InteractionNetwork build_network(std::span<const Message> messages,
                                 Direction direction = Direction::Information);

/// Empty when consistent; otherwise one human-readable line per problem.
std::vector<std::string> audit(const InteractionNetwork& network);

/// `from<TAB>to<TAB>weight` rows in lexicographic (from, to) order.
std::string edge_dump(const InteractionNetwork& network);

} // namespace versinus
