#include "support/reference_network.hpp"

#include "versinus/generate.hpp"
#include "versinus/network.hpp"

#include <doctest.h>

using namespace versinus;
using versinus::testing::reference_build;
using versinus::testing::to_reference;

namespace {

Message msg(std::size_t seq, std::string sender, std::string id, std::optional<std::string> reply = {})
{
    return Message{seq, std::move(sender), std::move(id), std::move(reply), std::nullopt};
}

const std::vector<Message> kThread = {
    msg(0, "alice", "m1"),
    msg(1, "bob", "m2", "m1"),
    msg(2, "bob", "m3", "m1"),
};

} // namespace

TEST_CASE("a reply yields an edge from the original author to the responder")
{
    const IdIndex index(kThread);
    const auto c = resolve_contribution(kThread[1], index);
    REQUIRE(c);
    CHECK(c->original_author == "alice");
    CHECK(c->responder == "bob");
}

TEST_CASE("non-replies and unknown targets contribute no edge")
{
    const std::vector<Message> stream = {msg(0, "bob", "m1"), msg(1, "carol", "m2", "ghost")};
    const IdIndex index(stream);
    ResolveWarnings warnings;
    CHECK_FALSE(resolve_contribution(stream[0], index, &warnings));
    CHECK(warnings.unresolved == 0);
    CHECK_FALSE(resolve_contribution(stream[1], index, &warnings));
    CHECK(warnings.unresolved == 1);

    const auto net = build_network(stream);
    CHECK(net.vertices().size() == 2);
    CHECK(net.find("bob") != nullptr);
    CHECK(net.find("carol")->message_count == 1);
    CHECK(net.edges().empty());
}

TEST_CASE("repeated replies accumulate weight")
{
    const auto info = build_network(kThread, Direction::Information);
    CHECK(info.weight("alice", "bob") == 2);
    CHECK(info.edges().size() == 1);
    const auto& bob = *info.find("bob");
    CHECK(bob.in_strength == 2);
    CHECK(bob.in_degree == 1);
    CHECK(bob.message_count == 2);
    CHECK(info.find("alice")->out_strength == 2);

    const auto status = build_network(kThread, Direction::Status);
    CHECK(status.weight("bob", "alice") == 2);
    CHECK(status.weight("alice", "bob") == 0);
}

TEST_CASE("a single message is a lone vertex")
{
    const auto net = build_network(std::vector<Message>{msg(0, "solo", "m1")});
    CHECK(net.vertices().size() == 1);
    CHECK(net.edges().empty());
    CHECK(audit(net).empty());
}

TEST_CASE("self replies are self loops counted on both sides")
{
    const std::vector<Message> stream = {msg(0, "a", "m1"), msg(1, "a", "m2", "m1")};
    const auto net = build_network(stream);
    CHECK(net.weight("a", "a") == 1);
    const auto& a = *net.find("a");
    CHECK(a.in_strength == 1);
    CHECK(a.out_strength == 1);
    CHECK(a.in_degree == 1);
    CHECK(a.out_degree == 1);
    CHECK(audit(net).empty());
}

TEST_CASE("removing the last reply deletes the edge and orphaned vertices")
{
    InteractionNetwork net;
    net.add_reply("a", "b");
    CHECK(net.vertices().size() == 2);
    net.remove_reply("a", "b");
    CHECK(net.edges().empty());
    CHECK(net.vertices().empty());
    CHECK(net.total_weight() == 0);

    net.add_message("a");
    net.add_reply("a", "a");
    net.remove_reply("a", "a");
    CHECK(net.vertices().size() == 1);
    net.remove_message("a");
    CHECK(net.vertices().empty());
}

TEST_CASE("audit flags a corrupted strength exactly once")
{
    auto net = build_network(kThread);
    CHECK(audit(net).empty());
    net.mutable_stats("bob").in_strength = 5;
    const auto findings = audit(net);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].find("bob") != std::string::npos);
}

TEST_CASE("edge dump is sorted tab separated text")
{
    const std::vector<Message> stream = {msg(0, "zed", "m1"), msg(1, "amy", "m2", "m1"), msg(2, "zed", "m3", "m2"),
                                         msg(3, "amy", "m4", "m1")};
    CHECK(edge_dump(build_network(stream)) == "amy\tzed\t1\nzed\tamy\t2\n");
}

TEST_CASE("status network is the exact transpose")
{
    GeneratorConfig config;
    config.unresolved_probability = 0.05;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        config.seed = seed;
        const auto stream = generate_stream(config);
        const auto info = build_network(stream, Direction::Information);
        const auto status = build_network(stream, Direction::Status);
        REQUIRE(info.edges().size() == status.edges().size());
        for (const auto& [key, w] : info.edges()) {
            CHECK(status.weight(key.to, key.from) == w);
        }
        REQUIRE(info.vertices().size() == status.vertices().size());
        for (const auto& [id, s] : info.vertices()) {
            const auto* t = status.find(id);
            REQUIRE(t != nullptr);
            CHECK(t->in_strength == s.out_strength);
            CHECK(t->out_strength == s.in_strength);
            CHECK(t->in_degree == s.out_degree);
            CHECK(t->out_degree == s.in_degree);
            CHECK(t->message_count == s.message_count);
        }
    }
}

TEST_CASE("batch build matches the brute-force reference and total weight counts replies")
{
    GeneratorConfig config;
    config.unresolved_probability = 0.1;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        config.seed = seed;
        const auto stream = generate_stream(config);
        const auto net = build_network(stream);
        CHECK(to_reference(net) == reference_build(stream, 0, stream.size()));
        CHECK(audit(net).empty());

        const IdIndex index(stream);
        std::uint64_t resolvable = 0;
        for (const auto& m : stream) {
            resolvable += resolve_contribution(m, index) ? 1 : 0;
        }
        CHECK(net.total_weight() == resolvable);
    }
}
