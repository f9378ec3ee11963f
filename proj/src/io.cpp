#include "kcost/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kcost {
namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

// Rows of parsed numbers plus the dim announced by a "# dim=" header (0 if
// absent). Blank lines and other comment lines are skipped.
struct CsvBody {
    int header_dim = 0;
    std::vector<std::vector<double>> rows;
};

CsvBody read_rows(const std::string& path) {
    auto f = open_in(path);
    CsvBody body;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("dim=");
            if (pos != std::string::npos)
                body.header_dim = std::atoi(line.c_str() + pos + 4);
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": bad number '" + cell + "'");
            }
        }
        if (row.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty row");
        if (!body.rows.empty() && row.size() != body.rows.front().size())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": ragged row");
        body.rows.push_back(std::move(row));
    }
    return body;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Dataset read_dataset_csv(const std::string& path) {
    const CsvBody body = read_rows(path);
    if (body.rows.empty()) throw std::runtime_error(path + ": no points");
    const int d = static_cast<int>(body.rows.front().size());
    if (body.header_dim != 0 && body.header_dim != d)
        throw std::runtime_error(path + ": header dim disagrees with row width");
    Dataset x(d);
    for (const auto& row : body.rows) x.push(std::span<const double>(row));
    return x;
}

void write_dataset_csv(const std::string& path, const Dataset& x) {
    auto f = open_out(path);
    f << "# dim=" << x.dim() << "\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto p = x[i];
        for (int dd = 0; dd < x.dim(); ++dd) {
            if (dd) f << ",";
            f << format_double(p[dd]);
        }
        f << "\n";
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

WeightedSet read_weighted_csv(const std::string& path) {
    const CsvBody body = read_rows(path);
    if (body.rows.empty()) throw std::runtime_error(path + ": no points");
    const int cols = static_cast<int>(body.rows.front().size());
    if (cols < 2) throw std::runtime_error(path + ": need a weight column");
    const int d = cols - 1;
    if (body.header_dim != 0 && body.header_dim != d)
        throw std::runtime_error(path + ": header dim disagrees with row width");
    WeightedSet s;
    s.points = Dataset(d);
    for (const auto& row : body.rows) {
        s.points.push(std::span<const double>(row.data(), static_cast<std::size_t>(d)));
        s.weights.push_back(row.back());
    }
    s.check();
    return s;
}

void write_weighted_csv(const std::string& path, const WeightedSet& s) {
    s.check();
    auto f = open_out(path);
    f << "# dim=" << s.points.dim() << "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto p = s.points[i];
        for (int dd = 0; dd < s.points.dim(); ++dd) f << format_double(p[dd]) << ",";
        f << format_double(s.weights[i]) << "\n";
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

FiniteMetric read_metric_csv(const std::string& path) {
    const CsvBody body = read_rows(path);
    const std::size_t n = body.rows.size();
    if (n == 0) throw std::runtime_error(path + ": empty matrix");
    if (body.rows.front().size() != n)
        throw std::runtime_error(path + ": matrix is not square");
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : body.rows)
        flat.insert(flat.end(), row.begin(), row.end());
    return FiniteMetric(n, std::move(flat));
}

void write_metric_csv(const std::string& path, const FiniteMetric& m) {
    auto f = open_out(path);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) f << ",";
            f << format_double(m.at(i, j));
        }
        f << "\n";
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

void write_curve_csv(const std::string& path, const DecayCurve& c) {
    auto f = open_out(path);
    f << "m,cost,exact\n";
    for (std::size_t i = 0; i < c.m.size(); ++i)
        f << c.m[i] << "," << format_double(c.cost[i]) << "," << (c.exact ? 1 : 0)
          << "\n";
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace kcost
