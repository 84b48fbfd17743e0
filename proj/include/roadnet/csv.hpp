#ifndef ROADNET_CSV_HPP
#define ROADNET_CSV_HPP

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "roadnet/errors.hpp"

namespace roadnet {

// Minimal CSV support for the documented file formats: comma-separated cells,
// ';'-joined list cells, '#' comment lines, no quoting. UTF-8, '.' decimal
// separator, LF line endings.

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

/// Splits a ';'-joined list cell; an empty cell is an empty list.
inline std::vector<std::string> split_list(std::string_view cell) {
    if (cell.empty()) return {};
    return split(cell, ';');
}

class CsvReader {
public:
    CsvReader(std::istream& in, std::string source_name)
        : in_(in), source_(std::move(source_name)) {}

    /// Reads the next data row. Skips blank lines and '#' comments.
    /// Returns false at end of input.
    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line.front() == '#') continue;
            fields = split(line, ',');
            return true;
        }
        return false;
    }

    /// Reads the header row and checks it matches `expected` exactly.
    void expect_header(std::string_view expected) {
        std::vector<std::string> fields;
        if (!next(fields)) fail("missing header row, expected '" + std::string(expected) + "'");
        std::string got;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) got += ',';
            got += fields[i];
        }
        if (got != expected)
            fail("bad header '" + got + "', expected '" + std::string(expected) + "'");
    }

    void require_columns(const std::vector<std::string>& fields, std::size_t n) {
        if (fields.size() != n)
            fail("expected " + std::to_string(n) + " columns, got " + std::to_string(fields.size()));
    }

    std::uint64_t parse_u64(const std::string& cell, std::string_view what) {
        std::uint64_t v = 0;
        const char* end = cell.data() + cell.size();
        auto [p, ec] = std::from_chars(cell.data(), end, v);
        if (ec != std::errc() || p != end)
            fail("bad " + std::string(what) + " '" + cell + "' (expected unsigned integer)");
        return v;
    }

    std::int64_t parse_i64(const std::string& cell, std::string_view what) {
        std::int64_t v = 0;
        const char* end = cell.data() + cell.size();
        auto [p, ec] = std::from_chars(cell.data(), end, v);
        if (ec != std::errc() || p != end)
            fail("bad " + std::string(what) + " '" + cell + "' (expected integer)");
        return v;
    }

    double parse_double(const std::string& cell, std::string_view what) {
        double v = 0;
        const char* end = cell.data() + cell.size();
        auto [p, ec] = std::from_chars(cell.data(), end, v);
        if (ec != std::errc() || p != end)
            fail("bad " + std::string(what) + " '" + cell + "' (expected number)");
        return v;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ValidationError(source_ + ":" + std::to_string(line_) + ": " + message);
    }

    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::string source_;
    std::size_t line_ = 0;
};

} // namespace roadnet

#endif // ROADNET_CSV_HPP
