#include "versinus/generate.hpp"

#include "versinus/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>

namespace versinus {

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : engine_(seed) {}

    // [0, 1) from the top 53 bits of a standardized engine.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t below(std::size_t n) { return std::min(static_cast<std::size_t>(unit() * n), n - 1); }

    std::size_t weighted(const std::vector<double>& weights)
    {
        double total = 0.0;
        for (double w : weights) {
            total += w;
        }
        double target = unit() * total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (target < weights[i]) {
                return i;
            }
            target -= weights[i];
        }
        // Rounding left target at the very end; take the last positive weight.
        for (std::size_t i = weights.size(); i-- > 0;) {
            if (weights[i] > 0.0) {
                return i;
            }
        }
        return 0;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace

void GeneratorConfig::validate() const
{
    if (senders < 1) {
        throw ConfigError("generator needs at least one sender");
    }
    auto probability = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; };
    if (!probability(reply_probability) || !probability(unresolved_probability)) {
        throw ConfigError("generator probabilities must lie in [0, 1]");
    }
}

std::vector<Message> generate_stream(const GeneratorConfig& config)
{
    config.validate();
    Draw draw(config.seed);

    std::vector<std::string> names;
    names.reserve(config.senders);
    for (std::size_t k = 0; k < config.senders; ++k) {
        names.push_back(fmt::format("user{:02d}@example.org", k));
    }

    std::vector<double> activity(config.senders, 0.0);
    std::vector<double> received(config.senders, 0.0);
    std::vector<std::vector<std::size_t>> sent(config.senders);

    std::vector<Message> out;
    out.reserve(config.messages);
    std::int64_t clock = 1262304000; // 2010-01-01
    for (std::size_t i = 0; i < config.messages; ++i) {
        std::vector<double> send_weight(config.senders);
        for (std::size_t k = 0; k < config.senders; ++k) {
            send_weight[k] = 1.0 + activity[k];
        }
        const auto sender = draw.weighted(send_weight);

        Message m;
        m.seq_index = i;
        m.sender = names[sender];
        m.message_id = fmt::format("s{}.m{}@synthetic.invalid", config.seed, i);
        if (i > 0 && draw.unit() < config.reply_probability) {
            if (draw.unit() < config.unresolved_probability) {
                m.reply_to = fmt::format("s{}.ghost{}@elsewhere.invalid", config.seed, i);
            } else {
                std::vector<double> attract(config.senders, 0.0);
                for (std::size_t k = 0; k < config.senders; ++k) {
                    if (!sent[k].empty()) {
                        attract[k] = 1.0 + received[k];
                    }
                }
                const auto author = draw.weighted(attract);
                const auto& mine = sent[author];
                const auto recent = std::min<std::size_t>(mine.size(), 5);
                const auto target = mine[mine.size() - 1 - draw.below(recent)];
                m.reply_to = out[target].message_id;
                received[author] += 1.0;
            }
        }
        if (config.timestamps) {
            clock += 30 + static_cast<std::int64_t>(draw.below(3600));
            m.timestamp = clock;
        }
        activity[sender] += 1.0;
        sent[sender].push_back(i);
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace versinus
