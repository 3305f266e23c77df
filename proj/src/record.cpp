#include <cstdio>
#include <fstream>
#include <sstream>

#include "hfc/errors.hpp"
#include "hfc/record.hpp"

namespace hfc {

Record::Record(std::vector<std::string> columns) : names_(std::move(columns)) {
    if (names_.empty()) throw ValidationError({"record: at least one column required"});
    data_.resize(names_.size());
}

void Record::append(const std::vector<double>& row) {
    if (row.size() != names_.size())
        throw ValidationError({"record: row width does not match column count"});
    for (std::size_t i = 0; i < row.size(); ++i) data_[i].push_back(row[i]);
    ++rows_;
}

bool Record::has(const std::string& name) const {
    for (const auto& n : names_)
        if (n == name) return true;
    return false;
}

std::size_t Record::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw ChannelMissingError("record: no column named '" + name + "'");
}

const std::vector<double>& Record::column(const std::string& name) const {
    return data_[index_of(name)];
}

double Record::at(std::size_t row, const std::string& name) const {
    const auto& col = column(name);
    if (row >= col.size()) throw ValidationError({"record: row index out of range"});
    return col[row];
}

std::string Record::to_csv() const {
    std::string out;
    out.reserve(rows_ * names_.size() * 14 + 256);
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (i) out += ',';
        out += names_[i];
    }
    out += '\n';
    char buf[40];
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < names_.size(); ++c) {
            if (c) out += ',';
            std::snprintf(buf, sizeof buf, "%.10g", data_[c][r]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void Record::write_csv(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("record: cannot open '" + path + "' for writing");
    const std::string body = to_csv();
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw Error("record: write failed for '" + path + "'");
}

Record Record::read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("record: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(f, line)) throw Error("record: '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
    }
    Record rec(cols);
    std::vector<double> row(cols.size());
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t i = 0;
        while (std::getline(ss, cell, ',')) {
            if (i >= row.size()) throw Error("record: ragged row in '" + path + "'");
            row[i++] = std::stod(cell);
        }
        if (i != row.size()) throw Error("record: ragged row in '" + path + "'");
        rec.append(row);
    }
    return rec;
}

}  // namespace hfc
