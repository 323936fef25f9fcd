#include "iclog/core.hpp"

#include <cctype>

#include "iclog/errors.hpp"

namespace iclog {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

TokenizedLog tokenize(std::string_view content) {
    TokenizedLog out;
    out.char_length = content.size();
    std::size_t i = 0;
    while (i < content.size()) {
        while (i < content.size() && is_space(content[i])) ++i;
        std::size_t start = i;
        while (i < content.size() && !is_space(content[i])) ++i;
        if (i > start) out.tokens.emplace_back(content.substr(start, i - start));
    }
    out.token_count = out.tokens.size();
    return out;
}

std::string normalize(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        while (i < raw.size() && is_space(raw[i])) ++i;
        std::size_t start = i;
        while (i < raw.size() && !is_space(raw[i])) ++i;
        if (i > start) {
            if (!out.empty()) out.push_back(' ');
            out.append(raw.substr(start, i - start));
        }
    }
    return out;
}

Template::Template(std::string text) : text_(std::move(text)) {
    if (text_.empty()) throw EmptyTemplate("template text is empty");

    std::size_t pos = 0;
    std::size_t pending_wildcards = 0;
    while (pos <= text_.size()) {
        std::size_t hit = text_.find(kWildcard, pos);
        std::size_t end = (hit == std::string::npos) ? text_.size() : hit;
        if (end > pos) {
            match_segments_.push_back({text_.substr(pos, end - pos), pending_wildcards});
            pending_wildcards = 0;
        }
        if (hit == std::string::npos) break;
        ++wildcard_count_;
        ++pending_wildcards;
        pos = hit + kWildcard.size();
        if (pos == text_.size()) break;
    }
    trailing_wildcards_ = pending_wildcards;
}

std::vector<std::string> Template::segments() const {
    std::vector<std::string> out;
    out.reserve(match_segments_.size());
    for (const auto& seg : match_segments_) out.push_back(seg.text);
    return out;
}

bool Template::starts_with_wildcard() const {
    return text_.size() >= kWildcard.size() && text_.compare(0, kWildcard.size(), kWildcard) == 0;
}

bool Template::ends_with_wildcard() const {
    return text_.size() >= kWildcard.size() &&
           text_.compare(text_.size() - kWildcard.size(), kWildcard.size(), kWildcard) == 0;
}

Template split_template(std::string_view text) {
    return Template(std::string(text));
}

std::string_view to_string(TemplateSource source) {
    switch (source) {
        case TemplateSource::Lru: return "lru";
        case TemplateSource::Pattern: return "pattern";
        case TemplateSource::Llm: return "llm";
        case TemplateSource::Fallback: return "fallback";
    }
    return "unknown";
}

std::optional<TemplateSource> template_source_from(std::string_view name) {
    if (name == "lru") return TemplateSource::Lru;
    if (name == "pattern") return TemplateSource::Pattern;
    if (name == "llm") return TemplateSource::Llm;
    if (name == "fallback") return TemplateSource::Fallback;
    return std::nullopt;
}

}  // namespace iclog
