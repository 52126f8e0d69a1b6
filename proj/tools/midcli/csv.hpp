#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mid/series.hpp"

namespace midcli {

// Malformed input with a 1-based file location; the driver maps it to exit 2.
class CsvError : public std::runtime_error {
public:
    CsvError(std::string path, long line, long col, const std::string& what_arg)
        : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                             ": " + what_arg),
          path_(std::move(path)),
          line_(line),
          col_(col) {}
    const std::string& path() const { return path_; }
    long line() const { return line_; }
    long col() const { return col_; }

private:
    std::string path_;
    long line_;
    long col_;
};

// Rows = time, columns = components, comma delimiter, decimal point. An
// optional single header row is auto-detected: the first row is a header iff
// any of its cells fails to parse as a number.
mid::MultiSeries read_panel_csv(const std::string& path);

// Writes a "c1,...,cd" header plus one %.17g row per time index, so a panel
// survives a write/read round trip bit-for-bit.
void write_panel_csv(const std::string& path, const mid::MultiSeries& series);

// One positive decimal per line, exactly d lines. Violations throw
// std::runtime_error (a configuration problem, not a panel parse error).
std::vector<double> read_sigma_file(const std::string& path, long d);

// Writes via temp file + rename so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

// write_text_atomic when path is nonempty, stdout otherwise.
void emit_text(const std::string& path, const std::string& content);

// Shortest exact decimal is overkill for CSV; 17 significant digits always
// round-trips a double.
std::string format_g17(double x);

}  // namespace midcli
