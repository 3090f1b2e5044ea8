#pragma once

// Reader for the multiprecision special-function fixture.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace golden {

struct Row {
    std::string function;  // H, K or logK
    int n = 0;
    double x = 0.0;
    double re = 0.0;
    double im = 0.0;
};

inline std::vector<Row> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        Row r;
        std::string field;
        std::getline(ss, r.function, ',');
        std::getline(ss, field, ',');
        r.n = std::stoi(field);
        std::getline(ss, field, ',');
        r.x = std::stod(field);
        std::getline(ss, field, ',');
        r.re = std::stod(field);
        std::getline(ss, field, ',');
        r.im = std::stod(field);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace golden
