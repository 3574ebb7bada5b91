#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tailfactor/matrix.hpp"

namespace tailfactor {

// Shortest locale-independent decimal rendering at the given number of
// significant digits.
std::string format_number(double x, int significant_digits = 12);

// Nearest double to the 12-significant-digit rendering; applied before
// numbers are embedded in JSON documents.
double round_to_digits(double x, int significant_digits = 12);

struct CsvTable {
    std::vector<std::string> header;
    Matrix values;
};

// Comma-separated values with a mandatory header row; '.' decimal separator.
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Matrix& values, int significant_digits = 12);

std::vector<std::string> default_column_names(std::size_t d);

} // namespace tailfactor
