#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "spinterf/core_model.hpp"

namespace spinterf {

/// Uniform space-time grid for residual evaluation.
class GridSpec {
  public:
    /// Throws std::invalid_argument unless x_max > x_min, t_max > t_min and
    /// nx, nt >= 3.
    GridSpec(double x_min, double x_max, double t_min, double t_max, int nx,
             int nt);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    int nx() const { return nx_; }
    int nt() const { return nt_; }

    double spacing_x() const { return (x_max_ - x_min_) / (nx_ - 1); }
    double spacing_t() const { return (t_max_ - t_min_) / (nt_ - 1); }

    /// Same bounds, each axis refined so spacings halve exactly.
    GridSpec refined() const;

  private:
    double x_min_, x_max_, t_min_, t_max_;
    int nx_, nt_;
};

/// Discrete curl-equation residuals of the ramped field model.
///
/// faraday holds |dB/dt + curl E| and ampere |(1/u0^2) dE/dt - curl B|
/// per interior grid point (max over components), both stored row-major
/// with x as the outer index. The headline statistic is the max-norm.
struct ResidualReport {
    explicit ResidualReport(GridSpec spec) : grid(spec) {}

    GridSpec grid;
    double faraday_max = 0.0;
    double ampere_max = 0.0;
    std::vector<double> interior_x;  ///< size nx-2
    std::vector<double> interior_t;  ///< size nt-2
    std::vector<double> faraday;     ///< size (nx-2)*(nt-2)
    std::vector<double> ampere;      ///< size (nx-2)*(nt-2)
    std::optional<double> convergence_order;
};

/// Centered second-order differences on interior points; boundary points
/// are excluded from the norms. The grid must lie inside the interaction
/// region [0, u0*tau] x [0, tau] or std::domain_error is thrown.
ResidualReport residuals_closed_form(const NeutronBeam& beam,
                                     const ExternalField& ext,
                                     const GridSpec& grid);

/// Average of log2 ratios of consecutive residual max-norms over a
/// sequence of reports on nested grids (each refining the previous by 2x
/// in both axes). Throws std::invalid_argument when fewer than two
/// reports are given or the grids are not nested refinements.
double estimate_convergence_order(const std::vector<ResidualReport>& reports);

/// CSV export, columns: x, t, faraday_residual, ampere_residual.
void write_residual_csv(const ResidualReport& report,
                        const std::filesystem::path& path);

}  // namespace spinterf
