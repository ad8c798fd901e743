#include "spinterf/field_residual.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "spinterf/io.hpp"

namespace spinterf {

GridSpec::GridSpec(double x_min, double x_max, double t_min, double t_max,
                   int nx, int nt)
    : x_min_(x_min), x_max_(x_max), t_min_(t_min), t_max_(t_max), nx_(nx), nt_(nt) {
    if (!(x_max > x_min)) throw std::invalid_argument("grid needs x_max > x_min");
    if (!(t_max > t_min)) throw std::invalid_argument("grid needs t_max > t_min");
    if (nx < 3 || nt < 3) {
        throw std::invalid_argument("grid needs at least 3 points per axis");
    }
}

GridSpec GridSpec::refined() const {
    return GridSpec(x_min_, x_max_, t_min_, t_max_, 2 * (nx_ - 1) + 1,
                    2 * (nt_ - 1) + 1);
}

namespace {

struct FieldSample {
    double ey, ez, by, bz;
};

}  // namespace

ResidualReport residuals_closed_form(const NeutronBeam& beam,
                                     const ExternalField& ext,
                                     const GridSpec& grid) {
    const double x_end = interaction_region_end(beam, ext);
    if (grid.x_min() < 0.0 || grid.x_max() > x_end || grid.t_min() < 0.0 ||
        grid.t_max() > ext.ramp_time()) {
        throw std::domain_error(
            "grid exceeds the interaction region [0, u0*tau=" +
            std::to_string(x_end) + "] x [0, tau=" +
            std::to_string(ext.ramp_time()) + "]");
    }

    const int nx = grid.nx();
    const int nt = grid.nt();
    const double hx = grid.spacing_x();
    const double ht = grid.spacing_t();

    std::vector<double> xs(nx), ts(nt);
    for (int i = 0; i < nx; ++i) xs[i] = grid.x_min() + i * hx;
    for (int j = 0; j < nt; ++j) ts[j] = grid.t_min() + j * ht;

    std::vector<FieldSample> f(static_cast<std::size_t>(nx) * nt);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nt; ++j) {
            const FieldState s = ramped_fields(beam, ext, xs[i], ts[j]);
            f[static_cast<std::size_t>(i) * nt + j] = {s.e.y, s.e.z, s.b.y, s.b.z};
        }
    }
    const auto at = [&](int i, int j) -> const FieldSample& {
        return f[static_cast<std::size_t>(i) * nt + j];
    };

    ResidualReport report{grid};
    report.interior_x.assign(xs.begin() + 1, xs.end() - 1);
    report.interior_t.assign(ts.begin() + 1, ts.end() - 1);
    report.faraday.resize(static_cast<std::size_t>(nx - 2) * (nt - 2));
    report.ampere.resize(report.faraday.size());

    // Fields vary in x and t only, so
    //   curl E = (0, -dEz/dx, dEy/dx) and curl B = (0, -dBz/dx, dBy/dx);
    // the x-components of both residuals vanish identically.
    const double inv_u2 = 1.0 / (beam.speed() * beam.speed());
    for (int i = 1; i < nx - 1; ++i) {
        for (int j = 1; j < nt - 1; ++j) {
            const double dey_dx = (at(i + 1, j).ey - at(i - 1, j).ey) / (2.0 * hx);
            const double dez_dx = (at(i + 1, j).ez - at(i - 1, j).ez) / (2.0 * hx);
            const double dby_dx = (at(i + 1, j).by - at(i - 1, j).by) / (2.0 * hx);
            const double dbz_dx = (at(i + 1, j).bz - at(i - 1, j).bz) / (2.0 * hx);
            const double dey_dt = (at(i, j + 1).ey - at(i, j - 1).ey) / (2.0 * ht);
            const double dez_dt = (at(i, j + 1).ez - at(i, j - 1).ez) / (2.0 * ht);
            const double dby_dt = (at(i, j + 1).by - at(i, j - 1).by) / (2.0 * ht);
            const double dbz_dt = (at(i, j + 1).bz - at(i, j - 1).bz) / (2.0 * ht);

            const double faraday_y = dby_dt - dez_dx;
            const double faraday_z = dbz_dt + dey_dx;
            const double ampere_y = inv_u2 * dey_dt + dbz_dx;
            const double ampere_z = inv_u2 * dez_dt - dby_dx;

            const std::size_t k =
                static_cast<std::size_t>(i - 1) * (nt - 2) + (j - 1);
            report.faraday[k] = std::max(std::abs(faraday_y), std::abs(faraday_z));
            report.ampere[k] = std::max(std::abs(ampere_y), std::abs(ampere_z));
            report.faraday_max = std::max(report.faraday_max, report.faraday[k]);
            report.ampere_max = std::max(report.ampere_max, report.ampere[k]);
        }
    }
    return report;
}

double estimate_convergence_order(const std::vector<ResidualReport>& reports) {
    if (reports.size() < 2) {
        throw std::invalid_argument(
            "convergence order needs at least two reports");
    }
    for (std::size_t i = 1; i < reports.size(); ++i) {
        const GridSpec& coarse = reports[i - 1].grid;
        const GridSpec& fine = reports[i].grid;
        const bool same_bounds = coarse.x_min() == fine.x_min() &&
                                 coarse.x_max() == fine.x_max() &&
                                 coarse.t_min() == fine.t_min() &&
                                 coarse.t_max() == fine.t_max();
        const bool halved = fine.nx() - 1 == 2 * (coarse.nx() - 1) &&
                            fine.nt() - 1 == 2 * (coarse.nt() - 1);
        if (!same_bounds || !halved) {
            throw std::invalid_argument(
                "reports are not on nested 2x grid refinements");
        }
    }

    double sum = 0.0;
    for (std::size_t i = 1; i < reports.size(); ++i) {
        const double coarse =
            std::max(reports[i - 1].faraday_max, reports[i - 1].ampere_max);
        const double fine =
            std::max(reports[i].faraday_max, reports[i].ampere_max);
        if (!(coarse > 0.0) || !(fine > 0.0)) {
            throw std::invalid_argument(
                "residual norms must be positive to estimate an order");
        }
        sum += std::log2(coarse / fine);
    }
    return sum / static_cast<double>(reports.size() - 1);
}

void write_residual_csv(const ResidualReport& report,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << "x,t,faraday_residual,ampere_residual\n";
    const std::size_t nt_in = report.interior_t.size();
    for (std::size_t i = 0; i < report.interior_x.size(); ++i) {
        for (std::size_t j = 0; j < nt_in; ++j) {
            const std::size_t k = i * nt_in + j;
            out << fmt17(report.interior_x[i]) << ',' << fmt17(report.interior_t[j])
                << ',' << fmt17(report.faraday[k]) << ',' << fmt17(report.ampere[k])
                << '\n';
        }
    }
    if (!out.flush()) throw IoError(path.string() + ": write failed");
}

}  // namespace spinterf
