#pragma once

// Plain-text outputs: flat key=value records, whitespace-separated tables and
// the sampled-field file format (header "x1 x2 n1 n2 n3").

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "skyrmion/maps.hpp"
#include "skyrmion/numerics.hpp"

namespace skyrmion::io {

/// Shortest round-trip-safe rendering used by every writer (%.17g).
std::string format_number(double v);

/// Ordered flat key-value record. Keys keep insertion order.
class Record {
public:
    Record& set(const std::string& key, double value);
    Record& set(const std::string& key, long long value);
    Record& set(const std::string& key, std::size_t value) {
        return set(key, static_cast<long long>(value));
    }
    Record& set(const std::string& key, int value) { return set(key, static_cast<long long>(value)); }
    Record& set(const std::string& key, bool value);
    Record& set(const std::string& key, const std::string& value);
    Record& set(const std::string& key, const char* value) { return set(key, std::string(value)); }
    /// Appends every entry of other with "prefix." prepended to its key.
    Record& merge(const Record& other, const std::string& prefix = "");

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    /// Throws InvalidInput if key is absent.
    const std::string& get(const std::string& key) const;
    double number(const std::string& key) const;
    bool contains(const std::string& key) const;

    void write(std::ostream& os) const;
    static Record parse(std::istream& is);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Columnar numeric table with a header line of column names.
class Table {
public:
    explicit Table(std::vector<std::string> columns);
    void add_row(std::vector<double> row);
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    void write(std::ostream& os) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

/// Writes a field as rows "x1 x2 n1 n2 n3".
void write_field(std::ostream& os, const maps::MagnetizationField& field);

/// Reads the field format. Rows may come in any order but must fill a
/// uniform tensor grid symmetric about the origin; every vector must have
/// unit norm within 1e-9 (then renormalised).
maps::MagnetizationField read_field(std::istream& is);

}  // namespace skyrmion::io
