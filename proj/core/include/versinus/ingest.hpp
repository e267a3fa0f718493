#pragma once

#include "versinus/message.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace versinus {

enum class InputFormat { Csv, Jsonl, Mbox };

/// Header line required verbatim as the first CSV row.
inline constexpr std::string_view kCsvHeader = "message_id,sender,reply_to,timestamp";

/// Counts of mbox messages dropped instead of failing the whole parse.
struct MboxStats {
    std::size_t parsed = 0;
    std::size_t missing_message_id = 0;
    std::size_t missing_from = 0;
    std::size_t duplicate_message_id = 0;

    std::size_t skipped() const noexcept
    {
        return missing_message_id + missing_from + duplicate_message_id;
    }
};

// Structured formats are strict: any bad row throws ParseError with its line.
std::vector<Message> parse_csv(std::string_view bytes);
std::vector<Message> parse_jsonl(std::string_view bytes);

/// Parses `From `-delimited mailbox text. Only the From:, Message-ID: and
/// In-Reply-To: headers are read; bodies are skipped without inspection.
/// Messages lacking an id or sender (or repeating an id) are skipped and
/// counted in `stats`. Throws ParseError if nothing usable remains.
std::vector<Message> parse_mbox(std::string_view bytes, MboxStats* stats = nullptr);

/// `From ` prefix selects mbox, a leading `{` selects jsonl, anything else csv.
InputFormat detect_format(std::string_view bytes);

std::vector<Message> parse(std::string_view bytes, InputFormat format, MboxStats* stats = nullptr);

std::string read_file(const std::filesystem::path& path);

struct MboxWriteOptions {
    /// Put header values on a continuation line (`Name:\n <value>`).
    bool fold_headers = false;
    /// Add body text that looks like headers; a correct parser ignores it.
    bool decoy_bodies = false;
};

std::string write_csv(const std::vector<Message>& messages);
std::string write_jsonl(const std::vector<Message>& messages);
std::string write_mbox(const std::vector<Message>& messages, const MboxWriteOptions& options = {});

std::string_view to_string(InputFormat format);

} // namespace versinus
