#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hfc {

/// Column-major time-series store with named channels and CSV round-trip.
class Record {
  public:
    Record() = default;
    explicit Record(std::vector<std::string> columns);

    void append(const std::vector<double>& row);

    const std::vector<std::string>& columns() const { return names_; }
    std::size_t rows() const { return rows_; }
    bool has(const std::string& name) const;

    const std::vector<double>& column(const std::string& name) const;
    double at(std::size_t row, const std::string& name) const;

    void write_csv(const std::string& path) const;
    std::string to_csv() const;
    static Record read_csv(const std::string& path);

  private:
    std::size_t index_of(const std::string& name) const;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> data_;  // one vector per column
    std::size_t rows_ = 0;
};

}  // namespace hfc
