#include "tailfactor/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace tailfactor {

std::string format_number(double x, int significant_digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general,
                                   significant_digits);
    return {buf, res.ptr};
}

double round_to_digits(double x, int significant_digits) {
    if (!std::isfinite(x)) return x;
    const std::string text = format_number(x, significant_digits);
    double out = x;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("CSV file is empty (header row required): " + path.string());
    CsvTable table;
    for (auto field : split_line(line)) table.header.emplace_back(trim(field));
    const std::size_t d = table.header.size();
    if (d == 0) throw std::runtime_error("CSV header row has no columns: " + path.string());

    std::vector<double> data;
    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != d)
            throw std::runtime_error("CSV row " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(d) + ": " + path.string());
        for (auto raw : fields) {
            const auto field = trim(raw);
            double value = 0.0;
            const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
            if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
                throw std::runtime_error("CSV parse failure at line " + std::to_string(line_no) +
                                         " field '" + std::string(field) + "': " + path.string());
            data.push_back(value);
        }
        ++rows;
    }
    table.values = Matrix(rows, d);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < d; ++j) table.values(i, j) = data[i * d + j];
    return table;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Matrix& values, int significant_digits) {
    if (header.size() != values.cols())
        throw std::invalid_argument("write_csv: header width must match matrix columns");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV file: " + path.string());
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    for (std::size_t i = 0; i < values.rows(); ++i) {
        for (std::size_t j = 0; j < values.cols(); ++j) {
            if (j) out << ',';
            out << format_number(values(i, j), significant_digits);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failure on CSV file: " + path.string());
}

std::vector<std::string> default_column_names(std::size_t d) {
    std::vector<std::string> names(d);
    for (std::size_t j = 0; j < d; ++j) names[j] = "V" + std::to_string(j + 1);
    return names;
}

} // namespace tailfactor
