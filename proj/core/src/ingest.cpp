#include "versinus/ingest.hpp"

#include "versinus/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace versinus {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(kWhitespace);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(kWhitespace);
    return s.substr(first, last - first + 1);
}

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

std::string_view strip_bom(std::string_view bytes)
{
    constexpr std::string_view bom = "\xEF\xBB\xBF";
    if (bytes.starts_with(bom)) {
        bytes.remove_prefix(bom.size());
    }
    return bytes;
}

// Calls fn(line_number, line) for every line; LF or CRLF terminated.
template <typename Fn>
void for_each_line(std::string_view bytes, Fn&& fn)
{
    std::size_t number = 0;
    while (!bytes.empty()) {
        ++number;
        const auto nl = bytes.find('\n');
        auto line = bytes.substr(0, nl);
        if (line.ends_with('\r')) {
            line.remove_suffix(1);
        }
        fn(number, line);
        if (nl == std::string_view::npos) {
            break;
        }
        bytes.remove_prefix(nl + 1);
    }
}

// Assigns seq_index and enforces the id/sender invariants for strict formats.
class StrictCollector {
public:
    void add(std::size_t line, std::string_view message_id, std::string_view sender,
             std::string_view reply_to, std::optional<std::int64_t> timestamp)
    {
        Message m;
        m.message_id = std::string(trim(message_id));
        if (m.message_id.empty()) {
            throw ParseError(line, "empty message_id");
        }
        m.sender = normalize_sender(sender);
        if (m.sender.empty()) {
            throw ParseError(line, "empty sender");
        }
        if (const auto r = trim(reply_to); !r.empty()) {
            m.reply_to = std::string(r);
        }
        m.timestamp = timestamp;
        if (!seen_.insert(m.message_id).second) {
            throw ParseError(line, "duplicate message_id '" + m.message_id + "'");
        }
        m.seq_index = messages_.size();
        messages_.push_back(std::move(m));
    }

    std::vector<Message> take() { return std::move(messages_); }

private:
    std::vector<Message> messages_;
    std::unordered_set<std::string> seen_;
};

std::optional<std::int64_t> parse_timestamp(std::size_t line, std::string_view text)
{
    text = trim(text);
    if (text.empty()) {
        return std::nullopt;
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(line, "invalid timestamp '" + std::string(text) + "'");
    }
    return value;
}

// One CSV record; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_record(std::size_t line_no, std::string_view line)
{
    std::vector<std::string> fields;
    std::string field;
    std::size_t i = 0;
    for (;;) {
        field.clear();
        if (i < line.size() && line[i] == '"') {
            ++i;
            for (;;) {
                if (i >= line.size()) {
                    throw ParseError(line_no, "unterminated quoted field");
                }
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                field += line[i++];
            }
            if (i < line.size() && line[i] != ',') {
                throw ParseError(line_no, "unexpected character after closing quote");
            }
        } else {
            const auto comma = line.find(',', i);
            const auto end = comma == std::string_view::npos ? line.size() : comma;
            field.assign(line.substr(i, end - i));
            i = end;
        }
        fields.push_back(field);
        if (i >= line.size()) {
            break;
        }
        ++i; // comma
    }
    return fields;
}

std::string csv_field(std::string_view value)
{
    const bool needs_quotes = value.find_first_of(",\"\r\n") != std::string_view::npos ||
                              (!value.empty() && (trim(value).size() != value.size()));
    if (!needs_quotes) {
        return std::string(value);
    }
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

// Header value helpers for mbox.
std::string_view angle_content(std::string_view value)
{
    const auto open = value.find('<');
    if (open == std::string_view::npos) {
        return {};
    }
    const auto close = value.find('>', open + 1);
    if (close == std::string_view::npos) {
        return {};
    }
    return trim(value.substr(open + 1, close - open - 1));
}

std::string_view first_token(std::string_view value)
{
    value = trim(value);
    const auto end = value.find_first_of(kWhitespace);
    return value.substr(0, end);
}

std::string address_of(std::string_view from_value)
{
    if (const auto inner = angle_content(from_value); !inner.empty()) {
        return normalize_sender(inner);
    }
    // Old-style `addr (Display Name)`.
    if (const auto paren = from_value.find('('); paren != std::string_view::npos) {
        from_value = from_value.substr(0, paren);
    }
    return normalize_sender(from_value);
}

std::string_view message_id_of(std::string_view value)
{
    if (const auto inner = angle_content(value); !inner.empty()) {
        return inner;
    }
    return first_token(value);
}

struct MboxDraft {
    std::string from;
    std::string message_id;
    std::string in_reply_to;
    bool has_from = false;
    bool has_message_id = false;
    bool has_in_reply_to = false;
};

} // namespace

std::string normalize_sender(std::string_view raw)
{
    std::string out(trim(raw));
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<Message> parse_csv(std::string_view bytes)
{
    bytes = strip_bom(bytes);
    StrictCollector out;
    bool header_seen = false;
    for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw ParseError(line_no, "expected header '" + std::string(kCsvHeader) + "'");
            }
            header_seen = true;
            return;
        }
        if (line.empty()) {
            return;
        }
        const auto fields = split_csv_record(line_no, line);
        if (fields.size() != 4) {
            throw ParseError(line_no, "expected 4 columns, found " + std::to_string(fields.size()));
        }
        out.add(line_no, fields[0], fields[1], fields[2], parse_timestamp(line_no, fields[3]));
    });
    if (!header_seen) {
        throw ParseError(1, "missing CSV header");
    }
    return out.take();
}

std::vector<Message> parse_jsonl(std::string_view bytes)
{
    using nlohmann::json;
    bytes = strip_bom(bytes);
    StrictCollector out;
    for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
        if (trim(line).empty()) {
            return;
        }
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!record.is_object()) {
            throw ParseError(line_no, "expected a JSON object");
        }
        auto required_string = [&](const char* key) -> std::string {
            const auto it = record.find(key);
            if (it == record.end() || it->is_null()) {
                throw ParseError(line_no, std::string("missing '") + key + "'");
            }
            if (!it->is_string()) {
                throw ParseError(line_no, std::string("'") + key + "' must be a string");
            }
            return it->get<std::string>();
        };
        const auto id = required_string("message_id");
        const auto sender = required_string("sender");

        std::string reply_to;
        if (const auto it = record.find("reply_to"); it != record.end() && !it->is_null()) {
            if (!it->is_string()) {
                throw ParseError(line_no, "'reply_to' must be a string");
            }
            reply_to = it->get<std::string>();
        }
        std::optional<std::int64_t> timestamp;
        if (const auto it = record.find("timestamp"); it != record.end() && !it->is_null()) {
            if (!it->is_number_integer()) {
                throw ParseError(line_no, "'timestamp' must be an integer");
            }
            timestamp = it->get<std::int64_t>();
        }
        out.add(line_no, id, sender, reply_to, timestamp);
    });
    return out.take();
}

std::vector<Message> parse_mbox(std::string_view bytes, MboxStats* stats)
{
    bytes = strip_bom(bytes);
    MboxStats local;
    std::vector<Message> messages;
    std::unordered_set<std::string> seen;

    enum class State { Preamble, Headers, Body };
    State state = State::Preamble;
    MboxDraft draft;
    std::string* current = nullptr; // header being unfolded, if one we keep
    bool in_header = false;

    auto finish = [&] {
        if (state == State::Preamble) {
            return;
        }
        const auto id = message_id_of(draft.message_id);
        const auto sender = address_of(draft.from);
        if (!draft.has_message_id || id.empty()) {
            ++local.missing_message_id;
            return;
        }
        if (!draft.has_from || sender.empty()) {
            ++local.missing_from;
            return;
        }
        if (!seen.insert(std::string(id)).second) {
            ++local.duplicate_message_id;
            return;
        }
        Message m;
        m.seq_index = messages.size();
        m.sender = sender;
        m.message_id = std::string(id);
        if (draft.has_in_reply_to) {
            if (const auto reply = message_id_of(draft.in_reply_to); !reply.empty()) {
                m.reply_to = std::string(reply);
            }
        }
        messages.push_back(std::move(m));
    };

    for_each_line(bytes, [&](std::size_t, std::string_view line) {
        if (line.starts_with("From ")) {
            finish();
            draft = MboxDraft{};
            state = State::Headers;
            current = nullptr;
            in_header = false;
            return;
        }
        if (state != State::Headers) {
            return;
        }
        if (line.empty()) {
            state = State::Body;
            return;
        }
        if (line.front() == ' ' || line.front() == '\t') {
            if (in_header && current != nullptr) {
                *current += line;
            }
            return;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            in_header = false;
            current = nullptr;
            return;
        }
        in_header = true;
        current = nullptr;
        const auto name = line.substr(0, colon);
        const auto value = line.substr(colon + 1);
        auto keep = [&](bool& flag, std::string& slot) {
            if (!flag) {
                flag = true;
                slot.assign(value);
                current = &slot;
            }
        };
        if (iequals(name, "From")) {
            keep(draft.has_from, draft.from);
        } else if (iequals(name, "Message-ID")) {
            keep(draft.has_message_id, draft.message_id);
        } else if (iequals(name, "In-Reply-To")) {
            keep(draft.has_in_reply_to, draft.in_reply_to);
        }
    });
    finish();

    local.parsed = messages.size();
    if (stats != nullptr) {
        *stats = local;
    }
    if (messages.empty()) {
        throw ParseError(0, "no parseable messages in mbox input");
    }
    return messages;
}

InputFormat detect_format(std::string_view bytes)
{
    bytes = strip_bom(bytes);
    const auto first = bytes.find_first_not_of(kWhitespace);
    if (first == std::string_view::npos) {
        return InputFormat::Csv;
    }
    bytes.remove_prefix(first);
    if (bytes.starts_with("From ")) {
        return InputFormat::Mbox;
    }
    if (bytes.front() == '{') {
        return InputFormat::Jsonl;
    }
    return InputFormat::Csv;
}

std::vector<Message> parse(std::string_view bytes, InputFormat format, MboxStats* stats)
{
    switch (format) {
    case InputFormat::Csv:
        return parse_csv(bytes);
    case InputFormat::Jsonl:
        return parse_jsonl(bytes);
    case InputFormat::Mbox:
        return parse_mbox(bytes, stats);
    }
    throw Error("unknown input format");
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

std::string write_csv(const std::vector<Message>& messages)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& m : messages) {
        out += csv_field(m.message_id);
        out += ',';
        out += csv_field(m.sender);
        out += ',';
        out += csv_field(m.reply_to.value_or(""));
        out += ',';
        if (m.timestamp) {
            out += std::to_string(*m.timestamp);
        }
        out += '\n';
    }
    return out;
}

std::string write_jsonl(const std::vector<Message>& messages)
{
    std::string out;
    for (const auto& m : messages) {
        nlohmann::ordered_json record;
        record["message_id"] = m.message_id;
        record["sender"] = m.sender;
        if (m.reply_to) {
            record["reply_to"] = *m.reply_to;
        }
        if (m.timestamp) {
            record["timestamp"] = *m.timestamp;
        }
        out += record.dump();
        out += '\n';
    }
    return out;
}

std::string write_mbox(const std::vector<Message>& messages, const MboxWriteOptions& options)
{
    std::string out;
    auto header = [&](std::string_view name, const std::string& value) {
        out += name;
        out += options.fold_headers ? ":\n " : ": ";
        out += value;
        out += '\n';
    };
    for (const auto& m : messages) {
        out += "From " + m.sender + " Thu Jan  1 00:00:00 1970\n";
        const auto at = m.sender.find('@');
        header("From", "\"" + m.sender.substr(0, at) + "\" <" + m.sender + ">");
        out += "Subject: message " + m.message_id + "\n";
        header("Message-ID", "<" + m.message_id + ">");
        if (m.reply_to) {
            header("In-Reply-To", "<" + *m.reply_to + ">");
            out += "References: <" + *m.reply_to + ">\n";
        }
        out += '\n';
        out += "Body of " + m.message_id + ".\n";
        if (options.decoy_bodies) {
            out += "Message-ID: <decoy-" + m.message_id + ">\n";
            out += "In-Reply-To: <decoy-parent@nowhere>\n";
            out += "From: Decoy <decoy@nowhere>\n";
            out += ">From the archive: quoted text\n";
        }
        out += '\n';
    }
    return out;
}

std::string_view to_string(InputFormat format)
{
    switch (format) {
    case InputFormat::Csv:
        return "csv";
    case InputFormat::Jsonl:
        return "jsonl";
    case InputFormat::Mbox:
        return "mbox";
    }
    return "unknown";
}

} // namespace versinus
