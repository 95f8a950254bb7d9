#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hillrand {

/// Column-oriented table written as CSV with a '#'-prefixed key=value
/// metadata preamble. Values are written in shortest round-trip form, so a
/// table read back reproduces every double bit-exactly.
class SweepTable {
public:
    void add_metadata(const std::string& key, const std::string& value);
    void add_metadata(const std::string& key, double value);

    /// Appends an empty column; data is added row-wise via push_row.
    void set_columns(std::vector<std::string> names);
    void push_row(const std::vector<double>& row);

    std::size_t rows() const;
    std::size_t cols() const { return names_.size(); }
    const std::vector<std::string>& column_names() const { return names_; }
    const std::vector<double>& column(const std::string& name) const;
    const std::vector<std::pair<std::string, std::string>>& metadata() const {
        return metadata_;
    }

    void write(std::ostream& os) const;
    void write_file(const std::string& path) const;

    static SweepTable read(std::istream& is);
    static SweepTable read_file(const std::string& path);

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> columns_;
    std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Shortest representation that round-trips through from_chars.
std::string format_double(double v);

} // namespace hillrand
