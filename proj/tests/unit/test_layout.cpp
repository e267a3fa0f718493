#include "versinus/error.hpp"
#include "versinus/generate.hpp"
#include "versinus/layout.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace versinus;

namespace {

Message msg(std::size_t seq, std::string sender, std::string id, std::optional<std::string> reply = {})
{
    return Message{seq, std::move(sender), std::move(id), std::move(reply), std::nullopt};
}

std::vector<std::string> names(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back("v" + std::to_string(1000 + i));
    }
    return out;
}

// a: strength 10, b: 3, c: 3 with more messages than b, d: 0.
InteractionNetwork tie_network()
{
    InteractionNetwork net;
    for (int i = 0; i < 3; ++i) {
        net.add_reply("a", "b");
        net.add_reply("a", "c");
    }
    net.add_reply("a", "a");
    net.add_reply("a", "a");
    net.add_message("a");
    net.add_message("b");
    net.add_message("c");
    net.add_message("c");
    net.add_message("d");
    return net;
}

} // namespace

TEST_CASE("ranking breaks strength ties by message count then identity")
{
    const auto net = tie_network();
    REQUIRE(net.find("a")->total_strength() == 10);
    REQUIRE(net.find("b")->total_strength() == 3);
    REQUIRE(net.find("c")->total_strength() == 3);
    REQUIRE(net.find("d")->total_strength() == 0);

    // Brute force: the unique permutation in which every adjacent pair is
    // ordered by (strength desc, messages desc, name asc).
    std::vector<std::string> perm = {"a", "b", "c", "d"};
    std::vector<std::vector<std::string>> valid;
    do {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
            const auto& x = *net.find(perm[i]);
            const auto& y = *net.find(perm[i + 1]);
            const auto kx = std::tuple(-static_cast<long>(x.total_strength()), -static_cast<long>(x.message_count), perm[i]);
            const auto ky = std::tuple(-static_cast<long>(y.total_strength()), -static_cast<long>(y.message_count), perm[i + 1]);
            ok = ok && kx < ky;
        }
        if (ok) {
            valid.push_back(perm);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(valid.size() == 1);
    CHECK(valid.front() == std::vector<std::string>{"a", "c", "b", "d"});
    CHECK(rank_vertices(net) == valid.front());
}

TEST_CASE("ranking edge cases")
{
    CHECK(rank_vertices(InteractionNetwork{}).empty());
    InteractionNetwork single;
    single.add_message("only");
    CHECK(rank_vertices(single) == std::vector<std::string>{"only"});

    // Degree ranking ignores weights: b has strength 5 but one neighbor.
    InteractionNetwork net;
    for (int i = 0; i < 5; ++i) {
        net.add_reply("b", "x");
    }
    net.add_reply("c", "y");
    net.add_reply("c", "z");
    CHECK(rank_vertices(net, RankBy::Strength).front() == "b");
    CHECK(rank_vertices(net, RankBy::Degree).front() == "c");
}

TEST_CASE("ranking ignores message order when the reply structure is the same")
{
    const std::vector<Message> forward = {msg(0, "a", "m1"), msg(1, "b", "m2", "m1"), msg(2, "c", "m3", "m1"),
                                          msg(3, "b", "m4", "m3"), msg(4, "d", "m5")};
    std::vector<Message> shuffled = {forward[4], forward[2], forward[0], forward[3], forward[1]};
    for (std::size_t i = 0; i < shuffled.size(); ++i) {
        shuffled[i].seq_index = i;
    }
    CHECK(rank_vertices(build_network(forward)) == rank_vertices(build_network(shuffled)));
}

TEST_CASE("partition sizes")
{
    CHECK(sector_sizes(100, {}) == SectorSizes{5, 15, 80});
    CHECK(sector_sizes(7, {}) == SectorSizes{1, 2, 4});
    CHECK(sector_sizes(1, {}) == SectorSizes{1, 0, 0});
    CHECK(sector_sizes(0, {}) == SectorSizes{0, 0, 0});
    CHECK(sector_sizes(10, {0.0, 0.0}) == SectorSizes{0, 0, 10});
    CHECK(sector_sizes(3, {1.0, 0.0}) == SectorSizes{3, 0, 0});

    for (std::size_t n = 0; n <= 1000; ++n) {
        // Exact integer ceilings of 5n/100 and 15n/100.
        const std::size_t h = (5 * n + 99) / 100;
        const std::size_t i = std::min((15 * n + 99) / 100, n - h);
        const auto sizes = sector_sizes(n, {});
        REQUIRE(sizes == SectorSizes{h, i, n - h - i});
    }
    for (std::size_t n = 0; n <= 300; ++n) {
        for (double hub : {0.0, 0.1, 0.33, 0.5}) {
            for (double mid : {0.0, 0.2, 0.5}) {
                const auto s = sector_sizes(n, {hub, mid});
                REQUIRE(s.hubs + s.intermediaries + s.peripherals == n);
            }
        }
    }
}

TEST_CASE("invalid fractions and geometry are rejected")
{
    CHECK_THROWS_AS(sector_sizes(10, {0.6, 0.6}), ConfigError);
    CHECK_THROWS_AS(sector_sizes(10, {-0.1, 0.2}), ConfigError);
    CHECK_THROWS_AS(GeometryParams{.x_margin = 0.5}.validate(), ConfigError);
    CHECK_THROWS_AS(GeometryParams{.amplitude = 0.0}.validate(), ConfigError);
    CHECK_THROWS_AS(GeometryParams{.line_y = 0.7}.validate(), ConfigError);
    CHECK_THROWS_AS(GeometryParams{.line_y = 1.1}.validate(), ConfigError);
    CHECK_THROWS_AS(GeometryParams{.periods = 0}.validate(), ConfigError);
    CHECK_THROWS_AS(GeometryParams{.decay = 0.0}.validate(), ConfigError);
    CHECK_NOTHROW(GeometryParams{}.validate());
}

TEST_CASE("single-vertex sectors sit at the centre of their half")
{
    const auto assignment = SectorAssignment({"hub", "mid", "edge"}, SectorSizes{1, 1, 1});
    const auto layout = place(assignment);

    // Independent evaluation of the placement rule with default geometry.
    const double pi = std::numbers::pi;
    const double hub_x = 0.05 + 0.25 * (1.0 - 2 * 0.05);
    const double hub_y = 0.45 + 0.25 * std::sin(2 * pi * 0.25);
    const double mid_y = 0.45 + 0.25 * std::sin(2 * pi * 0.75);
    CHECK(hub_x == doctest::Approx(0.275).epsilon(1e-12));
    CHECK(hub_y == doctest::Approx(0.70).epsilon(1e-12));
    CHECK(mid_y == doctest::Approx(0.20).epsilon(1e-12));

    CHECK(layout.position("hub")->x == doctest::Approx(hub_x).epsilon(1e-12));
    CHECK(layout.position("hub")->y == doctest::Approx(hub_y).epsilon(1e-12));
    CHECK(layout.position("mid")->x == doctest::Approx(0.725).epsilon(1e-12));
    CHECK(layout.position("mid")->y == doctest::Approx(mid_y).epsilon(1e-12));
    CHECK(layout.position("edge")->y == 0.85);
    CHECK(layout.position("edge")->x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(layout.position("nobody") == nullptr);
}

TEST_CASE("placement invariants hold for single and multi-period curves")
{
    for (int periods : {1, 2, 3}) {
        for (double decay : {1.0, 0.6, 1.5}) {
            GeometryParams geometry;
            geometry.periods = periods;
            geometry.decay = decay;
            const PhaseMap phases(geometry);
            for (std::size_t n : {1u, 2u, 7u, 20u, 100u, 333u}) {
                const auto assignment = partition(names(n));
                const auto layout = place(assignment, geometry);
                REQUIRE(layout.size() == n);
                double last_x[3] = {-1.0, -1.0, -1.0};
                for (const auto& slot : layout.slots()) {
                    const auto& p = slot.position;
                    const auto s = static_cast<int>(slot.sector);
                    CHECK(p.x > last_x[s]);
                    last_x[s] = p.x;
                    CHECK(p.x > geometry.x_margin);
                    CHECK(p.x < 1.0 - geometry.x_margin);
                    if (slot.sector == Sector::Peripheral) {
                        CHECK(p.y == geometry.line_y);
                        continue;
                    }
                    const double phase = phases.phase(phases.to_u(p.x));
                    CHECK(std::abs(p.y - (geometry.baseline + geometry.amplitude * std::sin(phase))) < 1e-9);
                    const double half = phases.total_phase() / 2;
                    if (slot.sector == Sector::Hub) {
                        CHECK(phase >= 0.0);
                        CHECK(phase <= half + 1e-12);
                    } else {
                        CHECK(phase >= half - 1e-12);
                        CHECK(phase <= phases.total_phase() + 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("phase map inverts and decays period widths")
{
    GeometryParams geometry;
    geometry.periods = 3;
    geometry.decay = 0.5;
    const PhaseMap phases(geometry);
    CHECK(phases.total_phase() == doctest::Approx(6 * std::numbers::pi));
    for (double f = 0.0; f <= 1.0; f += 0.01) {
        CHECK(phases.phase(phases.position(f)) == doctest::Approx(f * phases.total_phase()).epsilon(1e-12));
    }
    // Widths 4/7, 2/7, 1/7: the first full turn ends at u = 4/7.
    CHECK(phases.position(1.0 / 3.0) == doctest::Approx(4.0 / 7.0));
    CHECK(phases.position(2.0 / 3.0) == doctest::Approx(6.0 / 7.0));
}

TEST_CASE("placement is a pure function of its inputs")
{
    GeneratorConfig gen;
    gen.senders = 40;
    gen.messages = 400;
    const auto stream = generate_stream(gen);
    const auto assignment = partition(rank_vertices(build_network(stream)));
    CHECK(place(assignment) == place(assignment));
    CHECK(layout_dump(place(assignment)) == layout_dump(place(assignment)));
}

TEST_CASE("sector boundaries are monotone in strength")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorConfig gen;
        gen.seed = seed;
        gen.senders = 60;
        gen.messages = 600;
        const auto net = build_network(generate_stream(gen));
        const auto assignment = partition(rank_vertices(net));
        std::uint64_t min_strength[3] = {UINT64_MAX, UINT64_MAX, UINT64_MAX};
        std::uint64_t max_strength[3] = {0, 0, 0};
        for (const auto& id : assignment.ranking()) {
            const auto s = static_cast<int>(assignment.sector(id));
            const auto v = net.find(id)->total_strength();
            min_strength[s] = std::min(min_strength[s], v);
            max_strength[s] = std::max(max_strength[s], v);
        }
        CHECK(max_strength[1] <= min_strength[0]);
        if (assignment.sizes().peripherals > 0) {
            CHECK(max_strength[2] <= min_strength[1]);
        }
    }
}

TEST_CASE("layout dump prints six decimals in rank order")
{
    const auto layout = place(SectorAssignment({"hub", "mid", "edge"}, SectorSizes{1, 1, 1}));
    CHECK(layout_dump(layout) == "hub\thub\t1\t0.275000\t0.700000\n"
                                 "mid\tintermediary\t2\t0.725000\t0.200000\n"
                                 "edge\tperipheral\t3\t0.500000\t0.850000\n");
}

TEST_CASE("assignment lookups")
{
    const auto a = partition(names(100));
    CHECK(a.rank("v1000") == 1);
    CHECK(a.rank("v1099") == 100);
    CHECK(a.rank("nope") == 0);
    CHECK(a.sector("v1004") == Sector::Hub);
    CHECK(a.sector("v1005") == Sector::Intermediary);
    CHECK(a.sector("v1019") == Sector::Intermediary);
    CHECK(a.sector("v1020") == Sector::Peripheral);
    CHECK_THROWS_AS(a.sector("nope"), ConsistencyError);
    CHECK_THROWS_AS(SectorAssignment({"a", "a"}, SectorSizes{0, 0, 2}), ConsistencyError);
}
