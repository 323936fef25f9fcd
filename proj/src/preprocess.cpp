#include "iclog/preprocess.hpp"

#include <cctype>
#include <fstream>
#include <unordered_set>

#include "iclog/csv.hpp"
#include "iclog/errors.hpp"

namespace iclog {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

// Translates named-group syntax to plain groups and finds the index of the
// group named `content` by counting capturing opens. Skips escapes and
// character classes so a literal '(' never miscounts.
struct TranslatedPattern {
    std::string pattern;
    std::optional<std::size_t> content_group;
};

TranslatedPattern translate_named_groups(std::string_view src) {
    TranslatedPattern out;
    std::size_t group_index = 0;
    bool in_class = false;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\\' && i + 1 < src.size()) {
            out.pattern.append(src.substr(i, 2));
            i += 2;
            continue;
        }
        if (in_class) {
            if (c == ']') in_class = false;
            out.pattern.push_back(c);
            ++i;
            continue;
        }
        if (c == '[') {
            in_class = true;
            out.pattern.push_back(c);
            ++i;
            continue;
        }
        if (c == '(') {
            std::size_t name_start = 0;
            if (i + 2 < src.size() && src[i + 1] == '?' && src[i + 2] == '<' &&
                i + 3 < src.size() && src[i + 3] != '=' && src[i + 3] != '!') {
                name_start = i + 3;
            } else if (i + 3 < src.size() && src[i + 1] == '?' && src[i + 2] == 'P' &&
                       src[i + 3] == '<') {
                name_start = i + 4;
            }
            if (name_start > 0) {
                std::size_t name_end = src.find('>', name_start);
                if (name_end == std::string_view::npos) {
                    throw BadPattern("unterminated group name in header pattern");
                }
                ++group_index;
                if (src.substr(name_start, name_end - name_start) == "content") {
                    out.content_group = group_index;
                }
                out.pattern.push_back('(');
                i = name_end + 1;
                continue;
            }
            if (i + 1 >= src.size() || src[i + 1] != '?') ++group_index;
        }
        out.pattern.push_back(c);
        ++i;
    }
    return out;
}

}  // namespace

HeaderPattern compile_header_pattern(std::string_view pattern) {
    TranslatedPattern translated = translate_named_groups(pattern);
    if (!translated.content_group) {
        throw BadPattern("header pattern has no capture group named content");
    }
    HeaderPattern out;
    try {
        out.regex = std::regex(translated.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw BadPattern(std::string("header pattern failed to compile: ") + e.what());
    }
    out.content_group = *translated.content_group;
    return out;
}

std::string sanitize_utf8(std::string_view raw) {
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        std::size_t len = 0;
        unsigned min_cp = 0;
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            min_cp = 0x80;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            min_cp = 0x800;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            min_cp = 0x10000;
        } else {
            out.append(kReplacement);
            ++i;
            continue;
        }
        if (i + len > raw.size()) {
            out.append(kReplacement);
            ++i;
            continue;
        }
        unsigned cp = c & (0xFF >> (len + 1));
        bool valid = true;
        for (std::size_t j = 1; j < len; ++j) {
            unsigned char cc = static_cast<unsigned char>(raw[i + j]);
            if ((cc & 0xC0) != 0x80) {
                valid = false;
                break;
            }
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (valid && (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) {
            valid = false;
        }
        if (valid) {
            out.append(raw.substr(i, len));
            i += len;
        } else {
            out.append(kReplacement);
            ++i;
        }
    }
    return out;
}

std::vector<LogRecord> load_dataset(const DatasetConfig& config) {
    HeaderPattern header = compile_header_pattern(config.header_pattern);

    std::ifstream in(config.log_file_path, std::ios::binary);
    if (!in) throw IoError("cannot open log file: " + config.log_file_path);

    std::vector<LogRecord> records;
    std::string line;
    std::size_t line_id = 0;
    while (std::getline(in, line)) {
        ++line_id;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string clean = sanitize_utf8(line);

        std::string content;
        std::smatch match;
        if (std::regex_match(clean, match, header.regex) &&
            header.content_group < match.size() && match[header.content_group].matched) {
            content = trim(match[header.content_group].str());
        }
        if (content.empty()) content = trim(clean);
        if (content.empty()) continue;  // whitespace-only line, nothing to parse

        records.push_back({line_id, std::move(content), config.name});
    }
    return records;
}

std::vector<LogRecord> deduplicate(const std::vector<LogRecord>& records) {
    std::vector<LogRecord> out;
    std::unordered_set<std::string> seen;
    out.reserve(records.size());
    for (const auto& rec : records) {
        if (seen.insert(normalize(rec.content)).second) out.push_back(rec);
    }
    return out;
}

std::vector<GroundTruthRow> load_ground_truth(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open ground truth file: " + path);

    CsvReader reader(in);
    auto header = reader.next_row();
    if (!header) throw IoError("ground truth file is empty: " + path);

    std::size_t id_col = std::string::npos;
    std::size_t content_col = std::string::npos;
    std::size_t template_col = std::string::npos;
    for (std::size_t i = 0; i < header->size(); ++i) {
        if ((*header)[i] == "LineId") id_col = i;
        else if ((*header)[i] == "Content") content_col = i;
        else if ((*header)[i] == "EventTemplate") template_col = i;
    }
    if (id_col == std::string::npos || content_col == std::string::npos ||
        template_col == std::string::npos) {
        throw IoError("ground truth file lacks LineId/Content/EventTemplate columns: " + path);
    }

    std::vector<GroundTruthRow> rows;
    while (auto row = reader.next_row()) {
        if (row->size() == 1 && (*row)[0].empty()) continue;  // trailing blank line
        std::size_t needed = std::max({id_col, content_col, template_col});
        if (row->size() <= needed) {
            throw IoError("ground truth row has too few columns in " + path);
        }
        GroundTruthRow parsed;
        try {
            parsed.line_id = std::stoull((*row)[id_col]);
        } catch (const std::exception&) {
            throw IoError("ground truth LineId is not a number in " + path);
        }
        parsed.content = (*row)[content_col];
        parsed.template_text = (*row)[template_col];
        rows.push_back(std::move(parsed));
    }
    return rows;
}

}  // namespace iclog
