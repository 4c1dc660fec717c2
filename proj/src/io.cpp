#include "skyrmion/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace skyrmion::io {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Record& Record::set(const std::string& key, double value) { return set(key, format_number(value)); }

Record& Record::set(const std::string& key, long long value) {
    return set(key, std::to_string(value));
}

Record& Record::set(const std::string& key, bool value) {
    return set(key, std::string(value ? "true" : "false"));
}

Record& Record::set(const std::string& key, const std::string& value) {
    require(!key.empty() && key.find_first_of("= \t\n") == std::string::npos,
            "Record: invalid key '" + key + "'");
    require(value.find('\n') == std::string::npos, "Record: value must be a single line");
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return *this;
        }
    }
    entries_.emplace_back(key, value);
    return *this;
}

Record& Record::merge(const Record& other, const std::string& prefix) {
    for (const auto& [k, v] : other.entries_) set(prefix.empty() ? k : prefix + "." + k, v);
    return *this;
}

const std::string& Record::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    throw InvalidInput("Record: missing key '" + key + "'");
}

double Record::number(const std::string& key) const {
    const std::string& s = get(key);
    std::size_t used = 0;
    double v = std::stod(s, &used);
    require(used == s.size(), "Record: value of '" + key + "' is not a number");
    return v;
}

bool Record::contains(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& e) { return e.first == key; });
}

void Record::write(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << k << '=' << v << '\n';
}

Record Record::parse(std::istream& is) {
    Record rec;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, "Record: line without '=': " + line);
        rec.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return rec;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
    require(!columns_.empty(), "Table: need at least one column");
}

void Table::add_row(std::vector<double> row) {
    require(row.size() == columns_.size(), "Table: row width does not match header");
    rows_.push_back(std::move(row));
}

void Table::write(std::ostream& os) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? " " : "") << columns_[c];
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << format_number(row[c]);
        os << '\n';
    }
}

void write_field(std::ostream& os, const maps::MagnetizationField& field) {
    const auto& g = field.grid();
    os << "x1 x2 n1 n2 n3\n";
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const auto& n = field[g.index(i, j)];
            os << format_number(g.x1(i)) << ' ' << format_number(g.x2(j)) << ' '
               << format_number(n[0]) << ' ' << format_number(n[1]) << ' ' << format_number(n[2])
               << '\n';
        }
    }
}

namespace {

// Recovers an axis of the tensor grid from the distinct coordinates.
std::pair<double, std::size_t> infer_axis(std::vector<double> coords, const char* name) {
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    require(coords.size() >= 3, std::string("read_field: need at least 3 distinct ") + name);
    const double half = 0.5 * (coords.back() - coords.front());
    const double h = 2.0 * half / static_cast<double>(coords.size() - 1);
    require(std::abs(coords.front() + half) <= 1e-9 * std::max(1.0, half),
            std::string("read_field: ") + name + " must be symmetric about 0");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const double expect = -half + h * static_cast<double>(i);
        require(std::abs(coords[i] - expect) <= 1e-7 * h,
                std::string("read_field: ") + name + " is not uniformly spaced");
    }
    return {half, coords.size()};
}

}  // namespace

maps::MagnetizationField read_field(std::istream& is) {
    std::string line;
    while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {}
    {
        std::istringstream hs(line);
        std::vector<std::string> cols;
        for (std::string w; hs >> w;) cols.push_back(w);
        require(cols == std::vector<std::string>({"x1", "x2", "n1", "n2", "n3"}),
                "read_field: header must be 'x1 x2 n1 n2 n3'");
    }
    struct Row {
        double x1, x2;
        maps::Vec3 n;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        Row r{};
        ls >> r.x1 >> r.x2 >> r.n[0] >> r.n[1] >> r.n[2];
        std::string rest;
        require(static_cast<bool>(ls) && !(ls >> rest),
                "read_field: malformed row at line " + std::to_string(line_no));
        const double norm = r.n.norm();
        require(std::isfinite(norm) && std::abs(norm - 1.0) <= 1e-9,
                "read_field: non-unit vector at line " + std::to_string(line_no));
        r.n /= norm;
        rows.push_back(r);
    }
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        xs.push_back(r.x1);
        ys.push_back(r.x2);
    }
    const auto [hx, nx] = infer_axis(xs, "x1 values");
    const auto [hy, ny] = infer_axis(ys, "x2 values");
    require(rows.size() == nx * ny, "read_field: rows do not fill the tensor grid");
    const auto grid = numerics::Grid2D::rectangle(hx, nx, hy, ny);
    std::vector<maps::Vec3> values(grid.size());
    std::vector<char> seen(grid.size(), 0);
    for (const auto& r : rows) {
        const auto i = static_cast<std::size_t>(std::llround((r.x1 + hx) / grid.hx()));
        const auto j = static_cast<std::size_t>(std::llround((r.x2 + hy) / grid.hy()));
        require(i < nx && j < ny, "read_field: coordinate off the grid");
        const std::size_t k = grid.index(i, j);
        require(!seen[k], "read_field: duplicate node");
        seen[k] = 1;
        values[k] = r.n;
    }
    return {grid, std::move(values)};
}

}  // namespace skyrmion::io
