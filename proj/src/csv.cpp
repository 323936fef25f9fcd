#include "iclog/csv.hpp"

#include <istream>
#include <ostream>

namespace iclog {

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) os << ',';
        os << csv_escape(fields[i]);
    }
    os << '\n';
}

std::optional<std::vector<std::string>> CsvReader::next_row() {
    int first = is_.peek();
    if (first == std::char_traits<char>::eof()) return std::nullopt;

    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    char c;
    while (is_.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (is_.peek() == '"') {
                    is_.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);  // \r inside quotes is content
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r' && is_.peek() == '\n') {
            is_.get(c);  // CRLF terminator
            fields.push_back(std::move(field));
            return fields;
        } else if (c == '\n') {
            fields.push_back(std::move(field));
            return fields;
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace iclog
