#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinterf/config.hpp"
#include "spinterf/core_model.hpp"
#include "spinterf/field_residual.hpp"
#include "spinterf/interferometer.hpp"
#include "spinterf/io.hpp"
#include "spinterf/sweep.hpp"
#include "spinterf/units.hpp"

namespace fs = std::filesystem;
using namespace spinterf;

namespace {

enum class Format { Text, Csv };

std::string units_footer() {
    std::string text = "\n";
    text += units::convention_note;
    text += "\nParameters (intended physical reading):\n";
    for (const auto& a : units::parameter_annotations) {
        text += "  ";
        text += a.name;
        text += "  [";
        text += a.physical_unit;
        text += "]  ";
        text += a.meaning;
        text += "\n";
    }
    return text;
}

void print_record(Format format, const std::vector<std::string>& names,
                  const std::vector<std::string>& values) {
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            std::cout << names[i] << (i + 1 < names.size() ? "," : "\n");
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::cout << values[i] << (i + 1 < values.size() ? "," : "\n");
        }
    } else {
        for (std::size_t i = 0; i < names.size(); ++i) {
            std::cout << names[i] << " = " << values[i] << "\n";
        }
    }
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir;
    if (!cfg.out_dir.empty()) {
        dir = cfg.out_dir;
    } else {
        const auto now = std::chrono::system_clock::now();
        const std::time_t stamp = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::tm tm_buf{};
        localtime_r(&stamp, &tm_buf);
        std::strftime(buf, sizeof buf, "spinterf-out-%Y%m%d-%H%M%S", &tm_buf);
        dir = buf;
    }
    fs::create_directories(dir);
    return dir;
}

Table two_column_table(std::string x_name, std::string y_name,
                       const std::vector<std::pair<double, double>>& points) {
    Table table;
    table.columns = {std::move(x_name), std::move(y_name)};
    for (const auto& [x, y] : points) table.rows.push_back({x, y});
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "spinterf -- deterministic spin-superposition interferometry "
        "simulator: intrinsic beam fields, ramped external field, "
        "interaction potentials, phase shifts, interferograms and "
        "curl-equation residual diagnostics." +
        units_footer()};
    app.require_subcommand(1);

    std::string config_path;
    std::string format_name = "text";
    std::string out_dir;
    std::string mode_override;
    app.add_option("--config", config_path,
                   "flat key=value config file (fallback: SPINTERF_CONFIG)");
    app.add_option("--format", format_name, "output format: text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    app.add_option("--out", out_dir,
                   "output directory (default: timestamped spinterf-out-*)");
    app.add_option("--mode", mode_override,
                   "medium mode: neutral | charged_plus | charged_minus");

    // numeric overrides; flag spelling -> config key
    const std::array<std::pair<const char*, const char*>, 8> param_flags{{
        {"--lambda", "lambda"},
        {"--u0", "u0"},
        {"--b0", "b0"},
        {"--rho-bar", "rho_bar"},
        {"--b-ext", "b_ext"},
        {"--theta", "theta"},
        {"--l", "l"},
        {"--tau", "tau"},
    }};
    std::array<std::optional<double>, 8> param_values;
    for (std::size_t i = 0; i < param_flags.size(); ++i) {
        const auto* annotation = units::find(param_flags[i].second);
        app.add_option(param_flags[i].first, param_values[i],
                       std::string(annotation->meaning) + " [" +
                           std::string(annotation->physical_unit) +
                           "], natural units");
    }

    const std::string footer =
        "Exit codes: 0 ok, 2 usage/config error, 3 domain error, 4 I/O error.";
    app.footer(footer + units_footer());

    auto* cmd_fields = app.add_subcommand(
        "fields",
        "field components at one sample point (natural units; config b_ext "
        "selects the ramped model)");
    double arg_x = 0.0, arg_t = 0.0;
    bool x_set = false, t_set = false;
    cmd_fields->add_option("--x", arg_x, "position in [0, u0*tau] [length]");
    cmd_fields->add_option("--t", arg_t, "time in [0, tau] [time]");

    auto* cmd_potential = app.add_subcommand(
        "potential",
        "interaction potential, collapsed form, kinetic shift and classical "
        "moment energy (natural units; defaults to the co-moving end of ramp)");
    cmd_potential->add_option("--x", arg_x, "position [length]")
        ->each([&](const std::string&) { x_set = true; });
    cmd_potential->add_option("--t", arg_t, "time [time]")
        ->each([&](const std::string&) { t_set = true; });

    auto* cmd_phase = app.add_subcommand(
        "phase",
        "velocity delta and accumulated beam phase (radians, natural units)");

    auto* cmd_gram = app.add_subcommand(
        "interferogram",
        "two-beam intensity over a field sweep; writes CSV and SVG (natural "
        "units)");
    double b_min = 0.0, b_max = 2.0;
    int gram_count = 201;
    cmd_gram->add_option("--b-min", b_min, "sweep start [magnetic field]");
    cmd_gram->add_option("--b-max", b_max, "sweep end [magnetic field]");
    cmd_gram->add_option("--count", gram_count, "number of samples (>= 2)");

    auto* cmd_orient = app.add_subcommand(
        "orientation",
        "interaction potential vs classical moment energy over orientation "
        "angles; writes CSV and SVGs (natural units)");
    int orient_count = 73;
    double theta_min = 0.0, theta_max = 2.0 * std::numbers::pi;
    cmd_orient->add_option("--count", orient_count, "number of angles (>= 1)");
    cmd_orient->add_option("--theta-min", theta_min, "first angle [radians]");
    cmd_orient->add_option("--theta-max", theta_max, "last angle [radians]");

    auto* cmd_resid = app.add_subcommand(
        "residuals",
        "centered-difference curl-equation residuals of the ramped field "
        "model on a grid; writes per-point CSV (natural units)");
    int nx = 65, nt = 65, refine = 1;
    double x_min = 0.0, t_min = 0.0;
    std::optional<double> x_max_opt, t_max_opt;
    cmd_resid->add_option("--nx", nx, "grid points along x (>= 3)");
    cmd_resid->add_option("--nt", nt, "grid points along t (>= 3)");
    cmd_resid->add_option("--x-min", x_min, "grid start in x [length]");
    cmd_resid->add_option("--x-max", x_max_opt,
                          "grid end in x (default u0*tau/4) [length]");
    cmd_resid->add_option("--t-min", t_min, "grid start in t [time]");
    cmd_resid->add_option("--t-max", t_max_opt, "grid end in t (default tau) [time]");
    cmd_resid->add_option("--refine", refine,
                          "number of nested 2x refinements to run (>= 1)");

    auto* cmd_sweep = app.add_subcommand(
        "sweep", "run a JSON sweep plan and emit its CSV/SVG outputs");
    std::string plan_path;
    cmd_sweep->add_option("plan", plan_path, "path to the plan JSON file")
        ->required();

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        sub->footer(footer + "\n" + std::string(units::convention_note));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help et al.
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg;
        if (config_path.empty()) {
            if (const char* env = std::getenv("SPINTERF_CONFIG")) {
                config_path = env;
            }
        }
        if (!config_path.empty()) cfg = load_config(config_path);
        for (std::size_t i = 0; i < param_flags.size(); ++i) {
            if (param_values[i]) {
                cfg.set(param_flags[i].second, *param_values[i], "command line");
            }
        }
        if (!mode_override.empty()) cfg.set("mode", mode_override, "command line");
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        const Format format = format_name == "csv" ? Format::Csv : Format::Text;
        const NeutronBeam beam = cfg.make_beam();
        const ExternalField ext = cfg.make_external();

        if (*cmd_fields) {
            const FieldState s = ramped_fields(beam, ext, arg_x, arg_t);
            print_record(format,
                         {"x", "t", "e_x", "e_y", "e_z", "b_x", "b_y", "b_z"},
                         {fmt17(s.x), fmt17(s.t), fmt17(s.e.x), fmt17(s.e.y),
                          fmt17(s.e.z), fmt17(s.b.x), fmt17(s.b.y), fmt17(s.b.z)});
        } else if (*cmd_potential) {
            const double x = x_set ? arg_x : interaction_region_end(beam, ext);
            const double t = t_set ? arg_t : ext.ramp_time();
            const FieldState s = ramped_fields(beam, ext, x, t);
            const double phi = em_potential(s, beam.speed());
            const double collapsed =
                em_potential_collapsed(beam, ext, beam.wave_phase(x, t));
            const double shift = kinetic_shift(beam, ext, cfg.mode);
            const double classical =
                classical_interaction_energy({0.0, 0.0, 1.0}, ext);
            print_record(format,
                         {"x", "t", "em_potential", "em_potential_collapsed",
                          "kinetic_shift", "classical_energy"},
                         {fmt17(x), fmt17(t), fmt17(phi), fmt17(collapsed),
                          fmt17(shift), fmt17(classical)});
        } else if (*cmd_phase) {
            const PhaseResult r = phase_shift(beam, ext);
            print_record(format,
                         {"delta_u", "phase_raw", "wrap_count", "alpha"},
                         {fmt17(r.delta_u), fmt17(r.phase_raw),
                          std::to_string(r.wrap_count), fmt17(r.phase_wrapped)});
        } else if (*cmd_gram) {
            const Interferogram gram =
                sweep_interferogram(beam, ext, b_min, b_max, gram_count);
            const fs::path dir = ensure_out_dir(cfg);
            const fs::path csv = dir / "interferogram.csv";
            const fs::path svg = dir / "interferogram.svg";
            write_interferogram_csv(gram, csv);
            std::vector<std::pair<double, double>> points;
            for (const auto& s : gram.samples) {
                points.emplace_back(s.b_ext, s.intensity);
            }
            emit_svg_lineplot(two_column_table("b_ext", "intensity", points), svg,
                              "b_ext");
            print_record(format, {"samples", "csv", "svg"},
                         {std::to_string(gram.samples.size()), csv.string(),
                          svg.string()});
        } else if (*cmd_orient) {
            if (orient_count < 1) {
                throw std::invalid_argument("orientation needs count >= 1");
            }
            std::vector<double> thetas(static_cast<std::size_t>(orient_count));
            for (int i = 0; i < orient_count; ++i) {
                thetas[static_cast<std::size_t>(i)] =
                    orient_count == 1
                        ? theta_min
                        : theta_min + i * (theta_max - theta_min) /
                                          (orient_count - 1);
            }
            const auto samples = orientation_sweep(beam, ext, thetas);
            const fs::path dir = ensure_out_dir(cfg);
            const fs::path csv = dir / "orientation.csv";
            write_orientation_csv(samples, csv);
            std::vector<std::pair<double, double>> em_points, classical_points;
            for (const auto& s : samples) {
                em_points.emplace_back(s.theta, s.em_potential);
                classical_points.emplace_back(s.theta, s.classical_energy);
            }
            const fs::path em_svg = dir / "orientation_potential.svg";
            const fs::path cl_svg = dir / "orientation_classical.svg";
            emit_svg_lineplot(two_column_table("theta", "em_potential", em_points),
                              em_svg, "theta");
            emit_svg_lineplot(
                two_column_table("theta", "classical_energy", classical_points),
                cl_svg, "theta");
            print_record(format, {"samples", "csv", "svg_potential", "svg_classical"},
                         {std::to_string(samples.size()), csv.string(),
                          em_svg.string(), cl_svg.string()});
        } else if (*cmd_resid) {
            if (refine < 1) throw std::invalid_argument("--refine must be >= 1");
            const double x_max =
                x_max_opt ? *x_max_opt : interaction_region_end(beam, ext) / 4.0;
            const double t_max = t_max_opt ? *t_max_opt : ext.ramp_time();
            const fs::path dir = ensure_out_dir(cfg);

            std::vector<ResidualReport> reports;
            GridSpec grid(x_min, x_max, t_min, t_max, nx, nt);
            for (int level = 0; level < refine; ++level) {
                reports.push_back(residuals_closed_form(beam, ext, grid));
                const fs::path csv =
                    dir / (level == 0 ? std::string("residuals.csv")
                                      : "residuals_" + std::to_string(level) +
                                            ".csv");
                write_residual_csv(reports.back(), csv);
                if (level + 1 < refine) grid = grid.refined();
            }
            if (reports.size() >= 2) {
                reports.back().convergence_order =
                    estimate_convergence_order(reports);
            }

            if (format == Format::Csv) {
                std::cout << "level,nx,nt,faraday_max,ampere_max\n";
                for (std::size_t i = 0; i < reports.size(); ++i) {
                    std::cout << i << ',' << reports[i].grid.nx() << ','
                              << reports[i].grid.nt() << ','
                              << fmt17(reports[i].faraday_max) << ','
                              << fmt17(reports[i].ampere_max) << '\n';
                }
            } else {
                for (std::size_t i = 0; i < reports.size(); ++i) {
                    std::cout << "level " << i << ": nx=" << reports[i].grid.nx()
                              << " nt=" << reports[i].grid.nt()
                              << " faraday_max=" << fmt17(reports[i].faraday_max)
                              << " ampere_max=" << fmt17(reports[i].ampere_max)
                              << '\n';
                }
            }
            if (reports.back().convergence_order) {
                const double order = *reports.back().convergence_order;
                if (format == Format::Csv) {
                    std::cout << "order," << fmt17(order) << '\n';
                } else {
                    std::cout << "estimated order = " << fmt17(order) << '\n';
                }
            }
        } else if (*cmd_sweep) {
            const SweepPlan plan = load_plan(plan_path);
            const Table table = run_plan(plan);
            const fs::path dir = ensure_out_dir(cfg);
            std::vector<std::string> names{"rows"};
            std::vector<std::string> values{std::to_string(table.rows.size())};
            if (!plan.csv_path.empty()) {
                const fs::path csv = dir / plan.csv_path;
                emit_csv(table, csv);
                names.push_back("csv");
                values.push_back(csv.string());
            }
            if (plan.svg) {
                const fs::path svg = dir / plan.svg->path;
                emit_svg_lineplot(table, svg, plan.svg->x_axis,
                                  plan.svg->series_axis);
                names.push_back("svg");
                values.push_back(svg.string());
            }
            print_record(format, names, values);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
