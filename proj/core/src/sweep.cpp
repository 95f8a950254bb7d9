#include "hillrand/sweep.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace hillrand {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void SweepTable::add_metadata(const std::string& key, const std::string& value) {
    metadata_.emplace_back(key, value);
}

void SweepTable::add_metadata(const std::string& key, double value) {
    metadata_.emplace_back(key, format_double(value));
}

void SweepTable::set_columns(std::vector<std::string> names) {
    names_ = std::move(names);
    columns_.assign(names_.size(), {});
}

void SweepTable::push_row(const std::vector<double>& row) {
    if (row.size() != names_.size())
        throw std::invalid_argument("push_row: row width does not match columns");
    for (std::size_t i = 0; i < row.size(); ++i) columns_[i].push_back(row[i]);
}

std::size_t SweepTable::rows() const {
    return columns_.empty() ? 0 : columns_.front().size();
}

const std::vector<double>& SweepTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return columns_[i];
    throw std::out_of_range("no column named '" + name + "'");
}

void SweepTable::write(std::ostream& os) const {
    for (const auto& [k, v] : metadata_) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < names_.size(); ++i)
        os << names_[i] << (i + 1 < names_.size() ? "," : "");
    os << "\n";
    const std::size_t n = rows();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < columns_.size(); ++c)
            os << format_double(columns_[c][r]) << (c + 1 < columns_.size() ? "," : "");
        os << "\n";
    }
}

void SweepTable::write_file(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write(os);
    os.flush();
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

SweepTable SweepTable::read(std::istream& is) {
    SweepTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body.front() == ' ') body.erase(0, 1);
            const auto eq = body.find('=');
            if (eq != std::string::npos)
                t.metadata_.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            t.set_columns(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.names_.size())
            throw std::runtime_error("csv row width mismatch");
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            double v = 0.0;
            const auto res =
                std::from_chars(cells[i].data(), cells[i].data() + cells[i].size(), v);
            if (res.ec != std::errc() || res.ptr != cells[i].data() + cells[i].size())
                throw std::runtime_error("bad numeric cell '" + cells[i] + "'");
            row[i] = v;
        }
        t.push_row(row);
    }
    if (!have_header) throw std::runtime_error("csv has no header row");
    return t;
}

SweepTable SweepTable::read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return read(is);
}

} // namespace hillrand
