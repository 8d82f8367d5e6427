#include "fdbec/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace fdbec {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
}

void CsvWriter::config(const std::string& key, const std::string& value) {
    if (header_written_)
        throw std::logic_error("CsvWriter: config after header");
    out_ << "# " << key << " = " << value << "\n";
}

void CsvWriter::config(const std::string& key, double value) {
    config(key, format_g17(value));
}

void CsvWriter::config(const std::string& key, long value) {
    config(key, std::to_string(value));
}

void CsvWriter::columns(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << "\n";
    header_written_ = true;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
}

} // namespace fdbec
