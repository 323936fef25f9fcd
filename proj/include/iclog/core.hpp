#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iclog {

inline constexpr std::string_view kWildcard = "<*>";

// One raw log line with the header already stripped off.
struct LogRecord {
    std::size_t line_id = 0;  // 1-based position in the source file
    std::string content;
    std::string dataset;
};

struct TokenizedLog {
    std::vector<std::string> tokens;
    std::size_t token_count = 0;  // == tokens.size()
    std::size_t char_length = 0;  // length of the originating content
};

// Splits content into maximal runs of non-whitespace characters.
TokenizedLog tokenize(std::string_view content);

// Trims surrounding whitespace and collapses every internal whitespace run
// to a single space. Idempotent.
std::string normalize(std::string_view raw);

// A parsed log template: constant text with `<*>` marking each variable slot.
//
// The template keeps both the verbatim text and a matching structure: the
// ordered non-empty constant segments, each annotated with the number of
// wildcards separating it from the previous constant (or from the start).
class Template {
public:
    struct Segment {
        std::string text;
        std::size_t wildcards_before = 0;
    };

    // Throws EmptyTemplate when text is empty.
    explicit Template(std::string text);

    const std::string& text() const { return text_; }

    // Non-empty constant substrings between `<*>` occurrences, in order.
    std::vector<std::string> segments() const;

    const std::vector<Segment>& match_segments() const { return match_segments_; }
    std::size_t trailing_wildcards() const { return trailing_wildcards_; }
    std::size_t wildcard_count() const { return wildcard_count_; }
    bool starts_with_wildcard() const;
    bool ends_with_wildcard() const;
    bool is_constant() const { return wildcard_count_ == 0; }

    friend bool operator==(const Template& a, const Template& b) { return a.text_ == b.text_; }
    friend bool operator!=(const Template& a, const Template& b) { return !(a == b); }

private:
    std::string text_;
    std::vector<Segment> match_segments_;
    std::size_t wildcard_count_ = 0;
    std::size_t trailing_wildcards_ = 0;
};

// Decomposes a template string into its constant segments.
Template split_template(std::string_view text);

// Wall-clock seconds spent per pipeline stage.
struct StageTimings {
    double sample_s = 0.0;
    double cache_s = 0.0;
    double llm_s = 0.0;
    double total_s = 0.0;
};

enum class TemplateSource { Lru, Pattern, Llm, Fallback };

std::string_view to_string(TemplateSource source);
std::optional<TemplateSource> template_source_from(std::string_view name);

// Per-line parse outcome: the raw content paired with its resolved template
// and the tier that produced it.
struct ParseResult {
    std::size_t line_id = 0;
    std::string content;
    Template tmpl;
    TemplateSource source;
};

}  // namespace iclog
