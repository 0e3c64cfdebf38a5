#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasekit {

/// Shortest representation that round-trips a double (17 significant digits).
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Fixed 6-significant-digit form for figure coordinates.
inline std::string format_g6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

/// Comma-separated UTF-8 with a header row and 17-significant-digit floats.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path) : out_(path) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path.string());
    }

    void header(const std::vector<std::string>& cols) { write_row(cols); }

    void row(const std::vector<std::string>& cells) { write_row(cells); }

    void row_numeric(const std::vector<double>& vals) {
        std::vector<std::string> cells;
        cells.reserve(vals.size());
        for (double v : vals) cells.push_back(format_g17(v));
        write_row(cells);
    }

private:
    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ofstream out_;
};

} // namespace phasekit
