#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iclog {

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

// Minimal RFC 4180 reader: quoted fields, "" escapes, CRLF line endings,
// embedded newlines inside quotes.
class CsvReader {
public:
    explicit CsvReader(std::istream& is) : is_(is) {}

    // Returns the next row, or nullopt at end of input.
    std::optional<std::vector<std::string>> next_row();

private:
    std::istream& is_;
};

}  // namespace iclog
