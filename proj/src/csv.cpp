#include "specloc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace specloc {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvBuffer::commit(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("CsvBuffer: cannot open " + path);
    out << header_ << '\n';
    for (const std::string& r : rows_) out << r << '\n';
    if (!out) throw std::runtime_error("CsvBuffer: write failed for " + path);
}

}  // namespace specloc
