#include "sgi/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "sgi/errors.hpp"

namespace sgi {

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw Error(Errc::InvalidArgument, "CSV table needs at least one column");
    for (std::size_t i = 0; i < columns_.size(); ++i) text_ += (i ? "," : "") + columns_[i];
    text_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
        throw Error(Errc::InvalidArgument, "CSV row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        text_ += format_number(values[i]);
    }
    text_ += '\n';
    ++rows_;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw Error(Errc::Io, "cannot create output directory '" + dir.string() + "'");
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) ensure_directory(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error(Errc::Io, "failed writing '" + path.string() + "'");
}

}  // namespace sgi
