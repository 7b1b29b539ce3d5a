#pragma once

// CSV result tables. Floats are printed with %.17g so a round trip is exact
// and output is byte-identical across runs and worker counts; anything
// run-dependent (timestamps) belongs in the JSON sidecar, never here.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "params.hpp"

namespace nhkitaev {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> meta;  // emitted as "# key: value"

    void add_row(std::vector<double> r) {
        if (r.size() != columns.size())
            throw validation_error("ResultTable: row width does not match columns");
        rows.push_back(std::move(r));
    }
};

inline void write_csv(const ResultTable& t, std::ostream& os) {
    for (const auto& [key, value] : t.meta) os << "# " << key << ": " << value << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_g17(row[c]);
        os << "\n";
    }
}

inline void write_csv_file(const ResultTable& t, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw validation_error("cannot open output file: " + path);
    write_csv(t, os);
    if (!os.flush()) throw numeric_error("write failed: " + path);
}

}  // namespace nhkitaev
