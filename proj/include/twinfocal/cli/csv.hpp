#pragma once

#include <string>
#include <vector>

namespace twinfocal::cli {

// Numeric table with an optional '#' preamble. Rows must match the column
// count; an empty column list suppresses the header row.
struct Table {
    std::vector<std::string> preamble;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// "%.<precision>e" fields, ',' separated, LF line ends, final newline.
std::string to_csv(const Table& table, int precision = 9);

std::string format_number(double v, int precision = 9);

// Writes bytes verbatim. Throws IoError.
void write_file(const std::string& path, const std::string& contents);

}  // namespace twinfocal::cli
