#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace xsblab {

// Decimal form with 17 significant digits: round-trips IEEE doubles exactly,
// so files written with it reproduce bit-for-bit when re-emitted.
std::string format_double(double v);

// Tabular accumulator for the one CSV dialect used everywhere: comma
// separator, '.' decimal point, one header row, LF line endings.  Cells must
// not contain commas, quotes, or newlines (all emitters here write numbers).
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void row(const std::vector<std::string>& cells); // size must match header
    std::size_t n_rows() const { return n_rows_; }
    const std::string& str() const { return body_; }

private:
    std::string body_;
    std::size_t n_cols_ = 0;
    std::size_t n_rows_ = 0;
};

// Convenience cell formatters.
std::string cell(double v);
std::string cell(int v);
std::string cell(std::uint64_t v);

// Writes content to path via a temporary file in the same directory followed
// by an atomic rename, so a reader never observes a partially written file.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

} // namespace xsblab
