#include "xsblab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "xsblab/errors.hpp"

namespace xsblab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : n_cols_(header.size()) {
    if (header.empty()) throw InvalidArgument("CsvTable: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i].find_first_of(",\"\n\r") != std::string::npos)
            throw InvalidArgument("CsvTable: header cell contains a delimiter");
        if (i > 0) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvTable::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_)
        throw InvalidArgument("CsvTable: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].find_first_of(",\"\n\r") != std::string::npos)
            throw InvalidArgument("CsvTable: cell contains a delimiter");
        if (i > 0) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
    ++n_rows_;
}

std::string cell(double v) { return format_double(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(std::uint64_t v) { return std::to_string(v); }

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw NumericError("atomic_write_text: cannot open " + tmp.string());
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out) throw NumericError("atomic_write_text: short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw NumericError("atomic_write_text: rename failed: " + ec.message());
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace xsblab
