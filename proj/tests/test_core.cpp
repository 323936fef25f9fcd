#include <doctest.h>

#include <random>

#include "iclog/core.hpp"
#include "iclog/errors.hpp"

using namespace iclog;

TEST_CASE("tokenize splits on whitespace runs") {
    TokenizedLog log = tokenize("session closed for user cyrus");
    CHECK(log.token_count == 5);
    CHECK(log.char_length == 29);
    CHECK(log.tokens[0] == "session");
    CHECK(log.tokens[4] == "cyrus");

    TokenizedLog empty = tokenize("");
    CHECK(empty.token_count == 0);
    CHECK(empty.char_length == 0);

    TokenizedLog gap = tokenize("a  b");
    CHECK(gap.token_count == 2);
    CHECK(gap.char_length == 4);
}

TEST_CASE("normalize trims and collapses whitespace") {
    CHECK(normalize("  a   b ") == "a b");
    CHECK(normalize("abc") == "abc");
    CHECK(normalize("a\tb") == "a b");
    CHECK(normalize("") == "");
    CHECK(normalize(" \t\n ") == "");
}

TEST_CASE("normalize is idempotent and preserves token boundaries") {
    std::mt19937_64 rng(7);
    const std::string alphabet = "ab c\t d\n<*>xyz  ";
    for (int round = 0; round < 500; ++round) {
        std::string s;
        std::size_t len = rng() % 40;
        for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
        std::string once = normalize(s);
        CHECK(normalize(once) == once);
        CHECK(tokenize(s).token_count == tokenize(once).token_count);
    }
}

TEST_CASE("split_template extracts constant segments") {
    Template fig1 = split_template("session closed for user <*>");
    CHECK(fig1.segments() == std::vector<std::string>{"session closed for user "});
    CHECK(fig1.wildcard_count() == 1);
    CHECK_FALSE(fig1.starts_with_wildcard());
    CHECK(fig1.ends_with_wildcard());

    Template all_wild = split_template("<*>");
    CHECK(all_wild.segments().empty());
    CHECK(all_wild.wildcard_count() == 1);
    CHECK_FALSE(all_wild.is_constant());

    Template constant = split_template("wait_timeout exceeded");
    CHECK(constant.is_constant());
    CHECK(constant.segments() == std::vector<std::string>{"wait_timeout exceeded"});

    Template two = split_template("a <*> b <*>");
    CHECK(two.segments() == std::vector<std::string>{"a ", " b "});
    CHECK(two.wildcard_count() == 2);

    CHECK_THROWS_AS(split_template(""), EmptyTemplate);
}

TEST_CASE("template adjacent wildcards drop empty constants but keep structure") {
    Template t = split_template("a <*><*> b");
    CHECK(t.segments() == std::vector<std::string>{"a ", " b"});
    CHECK(t.wildcard_count() == 2);
    REQUIRE(t.match_segments().size() == 2);
    CHECK(t.match_segments()[1].wildcards_before == 2);
    CHECK(t.trailing_wildcards() == 0);
}

namespace {

std::string rebuild(const Template& t) {
    std::string out;
    for (const auto& seg : t.match_segments()) {
        for (std::size_t i = 0; i < seg.wildcards_before; ++i) out += kWildcard;
        out += seg.text;
    }
    for (std::size_t i = 0; i < t.trailing_wildcards(); ++i) out += kWildcard;
    return out;
}

}  // namespace

TEST_CASE("template round trip over random segment lists") {
    std::mt19937_64 rng(42);
    const std::string chars = "abcdefgh 0123./:-";
    for (int round = 0; round < 1000; ++round) {
        std::string text;
        std::size_t pieces = 1 + rng() % 6;
        for (std::size_t p = 0; p < pieces; ++p) {
            if (rng() % 2 == 0) {
                text += kWildcard;
            } else {
                std::size_t len = 1 + rng() % 8;
                for (std::size_t i = 0; i < len; ++i) text.push_back(chars[rng() % chars.size()]);
            }
        }
        if (text.empty()) text = "x";
        Template t = split_template(text);
        CHECK(rebuild(t) == text);
        for (const auto& seg : t.segments()) {
            CHECK(seg.find(kWildcard) == std::string::npos);
            CHECK_FALSE(seg.empty());
        }
    }
}
