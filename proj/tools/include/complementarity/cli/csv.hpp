#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hmc::cli {

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);

/// Plain comma-separated table: one header row, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of `name` in the header, or npos.
    std::size_t column(std::string_view name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Throws hmc::StructuralError naming the line when a row has the wrong
/// number of fields or the input is empty.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Strict numeric parsing of a whole field; throws std::invalid_argument.
double parse_double(std::string_view text);
std::int64_t parse_int64(std::string_view text);
std::uint64_t parse_uint64(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

} // namespace hmc::cli
