#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cspread::csv {

/// One parsed data row; `line` is the 1-based line number in the source file.
struct Row {
    std::size_t line;
    std::vector<std::string> fields;
};

/// Plain comma-separated table: no quoting, header row required.
struct Table {
    std::string source;
    std::vector<std::string> header;
    std::vector<Row> rows;

    /// Column index of `name`; throws DataError naming the file if absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] bool has_column(std::string_view name) const;
};

/// Reads a CSV file. Blank lines are skipped; every row must have as many
/// fields as the header. Errors carry `file:line` context.
[[nodiscard]] Table read(const std::filesystem::path& path);
[[nodiscard]] Table parse(std::string_view text, std::string source = "<memory>");

/// Throws DataError("<source>:<line>: <message>").
[[noreturn]] void fail(const Table& t, const Row& r, const std::string& message);

[[nodiscard]] double to_double(const Table& t, const Row& r, std::size_t col);
[[nodiscard]] long long to_integer(const Table& t, const Row& r, std::size_t col);

/// Shortest round-trip decimal representation of a double.
[[nodiscard]] std::string format_exact(double v);

}  // namespace cspread::csv
