#pragma once

#include <string>
#include <vector>

namespace fracvar {

// Comma-separated tables with a header row, 17 significant digits, LF line
// endings.  Doubles round-trip exactly, so identical inputs produce
// byte-identical files.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns; // column major, equal lengths

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

std::string format_csv(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

std::string format_double(double v);

} // namespace fracvar
