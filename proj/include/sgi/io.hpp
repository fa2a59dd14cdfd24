#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sgi {

/// Plot-ready table: one header line, then comma-separated rows.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void add_row(const std::vector<double>& values);
    std::size_t rows() const noexcept { return rows_; }
    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::string str() const { return text_; }

private:
    std::vector<std::string> columns_;
    std::string text_;
    std::size_t rows_ = 0;
};

/// Shortest round-trip decimal form of v.
std::string format_number(double v);

/// Creates parent directories as needed. Throws Errc::Io.
void write_text_file(const std::filesystem::path& path, const std::string& content);
void ensure_directory(const std::filesystem::path& dir);

}  // namespace sgi
