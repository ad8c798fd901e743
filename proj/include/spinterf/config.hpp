#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "spinterf/core_model.hpp"

namespace spinterf {

/// Configuration problem; the message carries file and line ("path:line")
/// or "command line" for flag-sourced values.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Beam and field defaults for the command-line surface. Values may come
/// from built-in defaults, a flat key=value config file, or flag
/// overrides; `origin` remembers where each key was last set so that
/// invariant violations point at the offending assignment.
struct RunConfig {
    double lambda = 1.0;
    double u0 = 1.0;
    double b0 = 1.0;
    double rho_bar = 1.0;
    double b_ext = 0.0;
    double theta = 0.0;
    double l = 1.0;
    double tau = 1.0;
    MediumMode mode = MediumMode::Neutral;
    std::string out_dir;  ///< empty -> timestamped directory

    std::map<std::string, std::string> origin;

    /// Assigns one key from text. Throws ConfigError on unknown keys or
    /// unparsable values; `where` names the source for error messages.
    void set(const std::string& key, const std::string& value,
             const std::string& where);

    /// Assigns one numeric key (flag overrides).
    void set(const std::string& key, double value, const std::string& where);

    /// Validated constructors; violations raise ConfigError naming the
    /// origin of the offending key.
    NeutronBeam make_beam() const;
    ExternalField make_external() const;

    std::string describe_origin(const std::string& key) const;
};

/// Parses a flat key=value file ('#' starts a comment) on top of the
/// given defaults. Unknown keys, bad numbers and invariant violations
/// raise ConfigError with file:line context.
RunConfig load_config(const std::filesystem::path& path,
                      RunConfig base = RunConfig{});

}  // namespace spinterf
