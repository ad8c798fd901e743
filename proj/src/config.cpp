#include "spinterf/config.hpp"

#include <cctype>
#include <fstream>

#include "spinterf/io.hpp"
#include "spinterf/sweep.hpp"

namespace spinterf {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value,
                    const std::string& where) {
    const auto number = [&]() -> double {
        try {
            return parse_double(value);
        } catch (const std::invalid_argument&) {
            throw ConfigError(where + ": value of '" + key +
                              "' is not a number: '" + value + "'");
        }
    };

    if (key == "lambda") lambda = number();
    else if (key == "u0") u0 = number();
    else if (key == "b0") b0 = number();
    else if (key == "rho_bar") rho_bar = number();
    else if (key == "b_ext") b_ext = number();
    else if (key == "theta") theta = number();
    else if (key == "l") l = number();
    else if (key == "tau") tau = number();
    else if (key == "mode") {
        try {
            mode = mode_from_name(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where + ": " + e.what());
        }
    } else if (key == "out_dir") {
        out_dir = value;
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
    origin[key] = where;
}

void RunConfig::set(const std::string& key, double value,
                    const std::string& where) {
    if (key == "lambda") lambda = value;
    else if (key == "u0") u0 = value;
    else if (key == "b0") b0 = value;
    else if (key == "rho_bar") rho_bar = value;
    else if (key == "b_ext") b_ext = value;
    else if (key == "theta") theta = value;
    else if (key == "l") l = value;
    else if (key == "tau") tau = value;
    else throw ConfigError(where + ": unknown numeric key '" + key + "'");
    origin[key] = where;
}

std::string RunConfig::describe_origin(const std::string& key) const {
    const auto it = origin.find(key);
    return it == origin.end() ? std::string("default") : it->second;
}

NeutronBeam RunConfig::make_beam() const {
    const auto reject = [&](const std::string& key, const std::string& why) {
        throw ConfigError("invalid '" + key + "' (" + why + ") set at " +
                          describe_origin(key));
    };
    if (!(lambda > 0.0)) reject("lambda", "must be > 0");
    if (!(u0 > 0.0)) reject("u0", "must be > 0");
    if (!(b0 >= 0.0)) reject("b0", "must be >= 0");
    if (!(rho_bar > 0.0)) reject("rho_bar", "must be > 0");
    return NeutronBeam(lambda, u0, b0, rho_bar);
}

ExternalField RunConfig::make_external() const {
    const auto reject = [&](const std::string& key, const std::string& why) {
        throw ConfigError("invalid '" + key + "' (" + why + ") set at " +
                          describe_origin(key));
    };
    if (!(b_ext >= 0.0)) reject("b_ext", "must be >= 0");
    if (!(l > 0.0)) reject("l", "must be > 0");
    if (!(tau > 0.0)) reject("tau", "must be > 0");
    return ExternalField(b_ext, theta, l, tau);
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;

        const std::string where = path.string() + ":" + std::to_string(line_no);
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        base.set(key, value, where);
    }
    return base;
}

}  // namespace spinterf
