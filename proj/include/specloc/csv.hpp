#ifndef SPECLOC_CSV_HPP
#define SPECLOC_CSV_HPP

#include <string>
#include <vector>

namespace specloc {

/// %.17g formatting used by every CSV/manifest writer (round-trip exact).
std::string fmt_g17(double v);

/// In-memory CSV; commit() writes the whole file at once so outputs on disk
/// are always complete.
class CsvBuffer {
  public:
    explicit CsvBuffer(std::string header) : header_(std::move(header)) {}
    void add_row(std::string row) { rows_.push_back(std::move(row)); }
    std::size_t row_count() const { return rows_.size(); }
    void commit(const std::string& path) const;

  private:
    std::string header_;
    std::vector<std::string> rows_;
};

}  // namespace specloc

#endif
