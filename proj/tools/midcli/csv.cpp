#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mid/errors.hpp"

namespace midcli {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

}  // namespace

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

mid::MultiSeries read_panel_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError(path, 0, 0, "cannot open file");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw CsvError(path, 1, 1, "empty file");

    // Header detection: the first row is a header iff any cell is non-numeric.
    long first_data = 0;
    {
        double ignored;
        for (const std::string& cell : split_cells(lines[0]))
            if (!parse_double(cell, ignored)) {
                first_data = 1;
                break;
            }
    }
    if (static_cast<long>(lines.size()) - first_data <= 0)
        throw CsvError(path, static_cast<long>(lines.size()), 1, "no data rows");

    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size() - static_cast<std::size_t>(first_data));
    long d = -1;
    for (std::size_t i = static_cast<std::size_t>(first_data); i < lines.size(); ++i) {
        const long lineno = static_cast<long>(i) + 1;
        const auto cells = split_cells(lines[i]);
        if (d < 0) d = static_cast<long>(cells.size());
        if (static_cast<long>(cells.size()) != d)
            throw CsvError(path, lineno, static_cast<long>(cells.size()),
                           "expected " + std::to_string(d) + " cells, got " +
                               std::to_string(cells.size()));
        std::vector<double> row(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j)
            if (!parse_double(cells[j], row[j]))
                throw CsvError(path, lineno, static_cast<long>(j) + 1,
                               "not a number: '" + cells[j] + "'");
        rows.push_back(std::move(row));
    }

    try {
        return mid::MultiSeries::from_rows(rows);
    } catch (const mid::NonFiniteEntry& e) {
        throw CsvError(path, e.row + first_data, e.col, "non-finite value");
    } catch (const mid::TooShort&) {
        throw CsvError(path, 1 + first_data, 1, "panel needs at least 2 data rows");
    }
}

void write_panel_csv(const std::string& path, const mid::MultiSeries& series) {
    std::ostringstream os;
    for (long j = 1; j <= series.d(); ++j) os << (j > 1 ? "," : "") << 'c' << j;
    os << '\n';
    for (long t = 1; t <= series.T(); ++t) {
        for (long j = 1; j <= series.d(); ++j)
            os << (j > 1 ? "," : "") << format_g17(series.at(t, j));
        os << '\n';
    }
    write_text_atomic(path, os.str());
}

std::vector<double> read_sigma_file(const std::string& path, long d) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("sigma file: cannot open '" + path + "'");
    std::vector<double> sigma;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string cell = trim(line);
        if (cell.empty() && in.peek() == EOF) break;  // tolerate one trailing newline
        double v;
        if (!parse_double(cell, v) || !(v > 0.0) || !std::isfinite(v))
            throw std::runtime_error("sigma file: line " + std::to_string(lineno) +
                                     ": expected one positive decimal, got '" + cell + "'");
        sigma.push_back(v);
    }
    if (static_cast<long>(sigma.size()) != d)
        throw std::runtime_error("sigma file: expected " + std::to_string(d) + " lines, got " +
                                 std::to_string(sigma.size()));
    return sigma;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp~";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

void emit_text(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text_atomic(path, content);
}

}  // namespace midcli
