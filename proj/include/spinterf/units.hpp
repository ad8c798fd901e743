#pragma once

#include <array>
#include <string_view>

namespace spinterf::units {

/// Intended physical reading of each parameter. The simulator itself works
/// in dimensionless natural units and performs no conversions; this table
/// only documents what the numbers would mean in a physical setup.
struct Annotation {
    std::string_view name;
    std::string_view symbol;
    std::string_view physical_unit;
    std::string_view meaning;
};

inline constexpr std::array<Annotation, 8> parameter_annotations{{
    {"lambda", "lambda", "length", "beam wavelength"},
    {"u0", "u0", "length/time", "beam speed"},
    {"b0", "B0", "magnetic field", "intrinsic magnetic amplitude"},
    {"rho_bar", "rho", "mass/volume", "mean beam density"},
    {"b_ext", "B_ext", "magnetic field", "external field magnitude"},
    {"theta", "theta", "radians", "external field orientation"},
    {"l", "l", "length", "magnet length"},
    {"tau", "tau", "time", "field ramp time"},
}};

inline constexpr std::string_view convention_note =
    "All quantities are dimensionless (natural units): field energy density "
    "B^2 and kinetic energy density rho*u^2 share one scale, no conversion "
    "constants are applied.";

constexpr const Annotation* find(std::string_view name) {
    for (const auto& a : parameter_annotations) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

}  // namespace spinterf::units
