#pragma once

#include <stdexcept>
#include <string>

namespace spinterf {

/// File write/read failure, message prefixed with the offending path.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal rendering with 17 significant digits; round-trips
/// doubles exactly through strtod.
std::string fmt17(double value);

/// Parses one CSV cell as a double; the whole cell must be consumed.
/// Throws std::invalid_argument otherwise.
double parse_double(const std::string& cell);

}  // namespace spinterf
