// Reader for the frozen reference tables in tests/data.
#ifndef DUNKL_TESTS_SUPPORT_HPP
#define DUNKL_TESTS_SUPPORT_HPP

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing {

struct Row {
    std::map<std::string, std::string> cells;
    double operator[](const std::string& col) const { return std::stod(cells.at(col)); }
    int integer(const std::string& col) const { return std::stoi(cells.at(col)); }
};

inline std::vector<Row> read_table(const std::string& name) {
    std::ifstream in(std::string(DUNKL_TEST_DATA) + "/" + name);
    if (!in) throw std::runtime_error("missing reference table " + name);
    std::vector<std::string> header;
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (header.empty()) {
            header = fields;
            continue;
        }
        Row r;
        for (std::size_t i = 0; i < header.size(); ++i) r.cells[header[i]] = fields.at(i);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace testing

#endif
