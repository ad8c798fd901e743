#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinterf/core_model.hpp"

namespace spinterf {

/// Quantity evaluated at each grid point of a sweep.
enum class Quantity { EmPotential, KineticShift, Phase, Intensity };

std::string quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);

MediumMode mode_from_name(const std::string& name);
std::string mode_name(MediumMode mode);

/// Names accepted as sweep axes or fixed bindings.
std::span<const std::string_view> parameter_names();
bool is_parameter_name(std::string_view name);

struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 0;  ///< >= 2, linearly spaced inclusive of both ends
};

struct SvgSpec {
    std::string path;
    std::string x_axis;
    std::string series_axis;  ///< empty for a single series
};

/// Declarative sweep: swept axes, fixed bindings for the rest, and where
/// the outputs go. Parameters not mentioned fall back to the documented
/// defaults.
struct SweepPlan {
    Quantity quantity = Quantity::Phase;
    std::vector<SweepAxis> axes;
    std::map<std::string, double> fixed;
    MediumMode mode = MediumMode::Neutral;
    std::string csv_path;  ///< empty to skip CSV emission
    std::optional<SvgSpec> svg;

    /// Throws std::invalid_argument on unknown parameter names, counts < 2,
    /// empty/duplicate axes, parameters both fixed and swept, or dangling
    /// SVG axis references.
    void validate() const;
};

/// Column-named table of doubles; rows in row-major grid order.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

bool operator==(const Table& a, const Table& b);

/// Evaluates the plan's quantity over the Cartesian grid, row-major over
/// axes in declaration order (last axis fastest). Pure function of the
/// plan; parallel and serial evaluation produce identical tables.
/// threads = 0 picks a worker count automatically, 1 forces serial.
Table run_plan(const SweepPlan& plan, unsigned threads = 0);

/// Loads a plan from its JSON file form. Throws std::invalid_argument on
/// parse or schema errors (message carries the path) and IoError when the
/// file cannot be read.
SweepPlan load_plan(const std::filesystem::path& path);

/// CSV: UTF-8, comma separated, LF endings, header row of column names,
/// numbers rendered with 17 significant digits (lossless round-trip).
void emit_csv(const Table& table, const std::filesystem::path& path);
Table parse_csv(const std::filesystem::path& path);

/// Self-contained 960x540 SVG line plot: the last column against x_axis,
/// one polyline per distinct value of series_axis (at most 16 series).
void emit_svg_lineplot(const Table& table, const std::filesystem::path& path,
                       const std::string& x_axis,
                       const std::string& series_axis = "");

}  // namespace spinterf
