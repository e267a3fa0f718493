#pragma once

#include "versinus/network.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace versinus {

enum class Sector { Hub, Intermediary, Peripheral };
enum class RankBy { Strength, Degree };

std::string_view to_string(Sector sector);
std::string_view to_string(RankBy rank_by);
RankBy parse_rank_by(std::string_view text);

/// Shares of the ranked vertex list; the periphery takes the remainder.
struct SectorFractions {
    double hub = 0.05;
    double intermediary = 0.15;

    double peripheral() const noexcept { return 1.0 - hub - intermediary; }
    void validate() const;
};

struct SectorSizes {
    std::size_t hubs = 0;
    std::size_t intermediaries = 0;
    std::size_t peripherals = 0;

    friend bool operator==(const SectorSizes&, const SectorSizes&) = default;
};

/// hubs = ceil(hub * n), intermediaries = ceil(intermediary * n) capped so
/// the two fit in n, periphery gets the rest.
SectorSizes sector_sizes(std::size_t n, const SectorFractions& fractions);

/// Most connected first: descending total strength (or total degree),
/// then descending message count, then ascending identity.
std::vector<std::string> rank_vertices(const InteractionNetwork& global, RankBy rank_by = RankBy::Strength);

class SectorAssignment {
public:
    SectorAssignment() = default;
    SectorAssignment(std::vector<std::string> ranking, SectorSizes sizes);

    const std::vector<std::string>& ranking() const noexcept { return ranking_; }
    const SectorSizes& sizes() const noexcept { return sizes_; }
    std::size_t size() const noexcept { return ranking_.size(); }

    /// 1-based global rank; 0 if the vertex is unknown.
    std::size_t rank(std::string_view vertex) const;
    Sector sector_of_rank(std::size_t rank) const;
    Sector sector(std::string_view vertex) const;

private:
    std::vector<std::string> ranking_;
    SectorSizes sizes_;
    std::map<std::string, std::size_t, std::less<>> rank_;
};

SectorAssignment partition(std::vector<std::string> ranking, const SectorFractions& fractions = {});

/// Unit canvas, y up. The hub/intermediary curve is
/// y = baseline + amplitude * sin(phase(u)), u the normalized x position.
struct GeometryParams {
    double x_margin = 0.05;
    double baseline = 0.45;
    double amplitude = 0.25;
    double line_y = 0.85;
    int periods = 1;
    /// Relative u-width of each successive period (1 = equal widths).
    double decay = 1.0;

    void validate() const;
};

/// Piecewise-linear phase over `periods` full turns whose u-widths scale by
/// `decay` per period.
class PhaseMap {
public:
    explicit PhaseMap(const GeometryParams& geometry);

    double total_phase() const noexcept;
    /// Phase at normalized position u in [0, 1].
    double phase(double u) const;
    /// Normalized position whose phase is `fraction` of total_phase().
    double position(double fraction) const;

    double to_u(double x) const noexcept { return (x - margin_) / (1.0 - 2.0 * margin_); }
    double to_x(double u) const noexcept { return margin_ + u * (1.0 - 2.0 * margin_); }

private:
    double margin_;
    std::vector<double> starts_;
    std::vector<double> widths_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct LayoutSlot {
    std::string vertex;
    Sector sector = Sector::Peripheral;
    std::size_t rank = 0;
    Point position;
};

/// Fixed coordinates for every globally ranked vertex. Built once; frames
/// only read from it.
class LayoutTable {
public:
    LayoutTable() = default;
    LayoutTable(std::vector<LayoutSlot> slots, GeometryParams geometry);

    /// nullptr if the vertex was never ranked.
    const Point* position(std::string_view vertex) const;
    const std::vector<LayoutSlot>& slots() const noexcept { return slots_; }
    const GeometryParams& geometry() const noexcept { return geometry_; }
    std::size_t size() const noexcept { return slots_.size(); }

    friend bool operator==(const LayoutTable& a, const LayoutTable& b)
    {
        return a.slots_.size() == b.slots_.size() &&
               std::equal(a.slots_.begin(), a.slots_.end(), b.slots_.begin(),
                          [](const LayoutSlot& l, const LayoutSlot& r) {
                              return l.vertex == r.vertex && l.sector == r.sector &&
                                     l.rank == r.rank && l.position == r.position;
                          });
    }

private:
    std::vector<LayoutSlot> slots_;
    GeometryParams geometry_;
    std::map<std::string, std::size_t, std::less<>> lookup_;
};

LayoutTable place(const SectorAssignment& assignment, const GeometryParams& geometry = {});

/// `vertex<TAB>sector<TAB>rank<TAB>x<TAB>y`, six decimals, rank order.
std::string layout_dump(const LayoutTable& layout);

} // namespace versinus
