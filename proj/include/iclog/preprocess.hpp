#pragma once

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "iclog/core.hpp"

namespace iclog {

struct DatasetConfig {
    std::string name;
    std::string log_file_path;
    // Regular expression with a named capture group `content`, e.g.
    // ^(?<ts>\S+) (?<level>\S+) (?<content>.*)$
    std::string header_pattern;
    std::optional<std::string> ground_truth_path;
};

// A header pattern compiled with its `content` group resolved to an index.
// std::regex has no native named groups, so the names are translated to
// plain groups up front. Accepts (?<name>...) and (?P<name>...) syntax.
struct HeaderPattern {
    std::regex regex;
    std::size_t content_group = 0;
};

// Throws BadPattern when the regex fails to compile or lacks a `content` group.
HeaderPattern compile_header_pattern(std::string_view pattern);

// Replaces bytes that do not form valid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view raw);

// Reads the dataset file, one LogRecord per line; content comes from the
// `content` capture when the header pattern matches, otherwise the whole
// trimmed line. Whitespace-only lines are skipped; line_id stays the file
// position. Throws IoError / BadPattern.
std::vector<LogRecord> load_dataset(const DatasetConfig& config);

// Keeps the first occurrence of each distinct normalized content.
std::vector<LogRecord> deduplicate(const std::vector<LogRecord>& records);

struct GroundTruthRow {
    std::size_t line_id = 0;
    std::string content;
    std::string template_text;
};

// Loads a Loghub-style structured CSV with LineId, Content, EventTemplate
// columns. Throws IoError on unreadable files or missing columns.
std::vector<GroundTruthRow> load_ground_truth(const std::string& path);

}  // namespace iclog
