#include "spinterf/io.hpp"

#include <cstdio>
#include <cstdlib>

namespace spinterf {

std::string fmt17(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

double parse_double(const std::string& cell) {
    if (cell.empty()) {
        throw std::invalid_argument("empty numeric cell");
    }
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) {
        throw std::invalid_argument("not a number: '" + cell + "'");
    }
    return v;
}

}  // namespace spinterf
