#include "versinus/layout.hpp"

#include "versinus/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace versinus {

namespace {

// Fractions times counts land on exact multiples of 1/n in real arithmetic;
// absorb the binary rounding so ceil(0.15 * 100) is 15, not 16.
std::size_t ceil_share(double fraction, std::size_t n)
{
    const double raw = fraction * static_cast<double>(n);
    return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

} // namespace

std::string_view to_string(Sector sector)
{
    switch (sector) {
    case Sector::Hub:
        return "hub";
    case Sector::Intermediary:
        return "intermediary";
    case Sector::Peripheral:
        return "peripheral";
    }
    return "unknown";
}

std::string_view to_string(RankBy rank_by)
{
    return rank_by == RankBy::Strength ? "strength" : "degree";
}

RankBy parse_rank_by(std::string_view text)
{
    if (text == "strength") {
        return RankBy::Strength;
    }
    if (text == "degree") {
        return RankBy::Degree;
    }
    throw ConfigError("unknown ranking metric '" + std::string(text) + "'");
}

void SectorFractions::validate() const
{
    auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    if (!in_unit(hub) || !in_unit(intermediary)) {
        throw ConfigError("sector fractions must lie in [0, 1]");
    }
    if (hub + intermediary > 1.0 + 1e-12) {
        throw ConfigError(
            fmt::format("hub + intermediary fractions ({} + {}) exceed 1", hub, intermediary));
    }
}

SectorSizes sector_sizes(std::size_t n, const SectorFractions& fractions)
{
    fractions.validate();
    SectorSizes sizes;
    sizes.hubs = std::min(ceil_share(fractions.hub, n), n);
    sizes.intermediaries = std::min(ceil_share(fractions.intermediary, n), n - sizes.hubs);
    sizes.peripherals = n - sizes.hubs - sizes.intermediaries;
    return sizes;
}

std::vector<std::string> rank_vertices(const InteractionNetwork& global, RankBy rank_by)
{
    struct Entry {
        const std::string* id;
        std::uint64_t score;
        std::uint64_t messages;
    };
    std::vector<Entry> entries;
    entries.reserve(global.vertices().size());
    for (const auto& [id, stats] : global.vertices()) {
        const auto score = rank_by == RankBy::Strength ? stats.total_strength() : stats.total_degree();
        entries.push_back({&id, score, stats.message_count});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        if (a.messages != b.messages) {
            return a.messages > b.messages;
        }
        return *a.id < *b.id;
    });
    std::vector<std::string> ranking;
    ranking.reserve(entries.size());
    for (const auto& e : entries) {
        ranking.push_back(*e.id);
    }
    return ranking;
}

SectorAssignment::SectorAssignment(std::vector<std::string> ranking, SectorSizes sizes)
    : ranking_(std::move(ranking)), sizes_(sizes)
{
    if (sizes_.hubs + sizes_.intermediaries + sizes_.peripherals != ranking_.size()) {
        throw ConsistencyError("sector sizes do not cover the ranking");
    }
    for (std::size_t i = 0; i < ranking_.size(); ++i) {
        if (!rank_.emplace(ranking_[i], i + 1).second) {
            throw ConsistencyError("vertex '" + ranking_[i] + "' ranked twice");
        }
    }
}

std::size_t SectorAssignment::rank(std::string_view vertex) const
{
    const auto it = rank_.find(vertex);
    return it == rank_.end() ? 0 : it->second;
}

Sector SectorAssignment::sector_of_rank(std::size_t rank) const
{
    if (rank <= sizes_.hubs) {
        return Sector::Hub;
    }
    if (rank <= sizes_.hubs + sizes_.intermediaries) {
        return Sector::Intermediary;
    }
    return Sector::Peripheral;
}

Sector SectorAssignment::sector(std::string_view vertex) const
{
    const auto r = rank(vertex);
    if (r == 0) {
        throw ConsistencyError("vertex '" + std::string(vertex) + "' has no global rank");
    }
    return sector_of_rank(r);
}

SectorAssignment partition(std::vector<std::string> ranking, const SectorFractions& fractions)
{
    const auto sizes = sector_sizes(ranking.size(), fractions);
    return SectorAssignment(std::move(ranking), sizes);
}

void GeometryParams::validate() const
{
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(x_margin) || !finite(baseline) || !finite(amplitude) || !finite(line_y) ||
        !finite(decay)) {
        throw ConfigError("geometry parameters must be finite");
    }
    if (!(x_margin > 0.0 && x_margin < 0.5)) {
        throw ConfigError("x margin must lie in (0, 0.5)");
    }
    if (!(amplitude > 0.0)) {
        throw ConfigError("amplitude must be positive");
    }
    if (!(baseline + amplitude < line_y && line_y <= 1.0)) {
        throw ConfigError("line y must be above the sinusoid crest and at most 1");
    }
    if (periods < 1) {
        throw ConfigError("periods must be at least 1");
    }
    if (!(decay > 0.0)) {
        throw ConfigError("decay must be positive");
    }
}

PhaseMap::PhaseMap(const GeometryParams& geometry) : margin_(geometry.x_margin)
{
    const auto periods = static_cast<std::size_t>(std::max(geometry.periods, 1));
    widths_.resize(periods);
    double scale = 1.0;
    double sum = 0.0;
    for (auto& w : widths_) {
        w = scale;
        sum += scale;
        scale *= geometry.decay;
    }
    starts_.resize(periods);
    double start = 0.0;
    for (std::size_t j = 0; j < periods; ++j) {
        widths_[j] /= sum;
        starts_[j] = start;
        start += widths_[j];
    }
}

double PhaseMap::total_phase() const noexcept
{
    return 2.0 * std::numbers::pi * static_cast<double>(widths_.size());
}

double PhaseMap::phase(double u) const
{
    // Last segment whose start is <= u.
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), u);
    const auto j = it == starts_.begin() ? 0 : static_cast<std::size_t>(it - starts_.begin()) - 1;
    const double turns = static_cast<double>(j) + (u - starts_[j]) / widths_[j];
    return 2.0 * std::numbers::pi * turns;
}

double PhaseMap::position(double fraction) const
{
    const auto periods = widths_.size();
    const double turns = fraction * static_cast<double>(periods);
    const auto j = std::min(static_cast<std::size_t>(std::max(turns, 0.0)), periods - 1);
    return starts_[j] + widths_[j] * (turns - static_cast<double>(j));
}

LayoutTable::LayoutTable(std::vector<LayoutSlot> slots, GeometryParams geometry)
    : slots_(std::move(slots)), geometry_(geometry)
{
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        lookup_.emplace(slots_[i].vertex, i);
    }
}

const Point* LayoutTable::position(std::string_view vertex) const
{
    const auto it = lookup_.find(vertex);
    return it == lookup_.end() ? nullptr : &slots_[it->second].position;
}

LayoutTable place(const SectorAssignment& assignment, const GeometryParams& geometry)
{
    geometry.validate();
    const PhaseMap phase_map(geometry);
    const auto& sizes = assignment.sizes();
    const auto& ranking = assignment.ranking();

    std::vector<LayoutSlot> slots;
    slots.reserve(ranking.size());

    auto on_curve = [&](double fraction) {
        const double u = phase_map.position(fraction);
        return Point{phase_map.to_x(u), geometry.baseline + geometry.amplitude * std::sin(phase_map.phase(u))};
    };

    std::size_t rank = 0;
    for (std::size_t k = 0; k < sizes.hubs; ++k, ++rank) {
        const double fraction = 0.5 * (static_cast<double>(k) + 0.5) / static_cast<double>(sizes.hubs);
        slots.push_back({ranking[rank], Sector::Hub, rank + 1, on_curve(fraction)});
    }
    for (std::size_t k = 0; k < sizes.intermediaries; ++k, ++rank) {
        const double fraction =
            0.5 + 0.5 * (static_cast<double>(k) + 0.5) / static_cast<double>(sizes.intermediaries);
        slots.push_back({ranking[rank], Sector::Intermediary, rank + 1, on_curve(fraction)});
    }
    for (std::size_t k = 0; k < sizes.peripherals; ++k, ++rank) {
        const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(sizes.peripherals);
        slots.push_back({ranking[rank], Sector::Peripheral, rank + 1, Point{phase_map.to_x(u), geometry.line_y}});
    }
    return LayoutTable(std::move(slots), geometry);
}

std::string layout_dump(const LayoutTable& layout)
{
    std::string out;
    for (const auto& slot : layout.slots()) {
        out += fmt::format("{}\t{}\t{}\t{:.6f}\t{:.6f}\n", slot.vertex, to_string(slot.sector), slot.rank,
                           slot.position.x, slot.position.y);
    }
    return out;
}

} // namespace versinus
