#ifndef FDBEC_CSV_HPP
#define FDBEC_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace fdbec {

/// %.17g formatting: enough digits for exact double round-trips.
std::string format_g17(double v);

/// CSV file with a leading block of '# key = value' comment lines holding
/// the fully resolved run configuration, then a column-name header, then
/// data rows. Writes are ordered by the caller, so identical inputs give
/// byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void config(const std::string& key, const std::string& value);
    void config(const std::string& key, double value);
    void config(const std::string& key, long value);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    bool header_written_ = false;
};

} // namespace fdbec

#endif
