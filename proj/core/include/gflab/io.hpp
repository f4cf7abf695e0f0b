#pragma once

#include <string>
#include <vector>

namespace gflab {

/// 17 significant digits: enough to round-trip a double exactly.
std::string csv_num(double v);

/// Minimal CSV assembly: comma separators, header row, LF endings.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::string str() const;
};

/// write-then-rename so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace gflab
