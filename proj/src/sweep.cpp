#include "spinterf/sweep.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "spinterf/interferometer.hpp"
#include "spinterf/io.hpp"

namespace spinterf {

namespace {

constexpr std::array<std::string_view, 8> kParameterNames = {
    "b_ext", "theta", "lambda", "rho_bar", "b0", "u0", "l", "tau"};

struct ParamSet {
    double lambda = 1.0;
    double u0 = 1.0;
    double b0 = 1.0;
    double rho_bar = 1.0;
    double b_ext = 0.0;
    double theta = 0.0;
    double l = 1.0;
    double tau = 1.0;

    void set(std::string_view name, double value) {
        if (name == "lambda") lambda = value;
        else if (name == "u0") u0 = value;
        else if (name == "b0") b0 = value;
        else if (name == "rho_bar") rho_bar = value;
        else if (name == "b_ext") b_ext = value;
        else if (name == "theta") theta = value;
        else if (name == "l") l = value;
        else if (name == "tau") tau = value;
        else throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
    }
};

double evaluate_quantity(Quantity q, const ParamSet& p, MediumMode mode) {
    const NeutronBeam beam(p.lambda, p.u0, p.b0, p.rho_bar);
    const ExternalField ext(p.b_ext, p.theta, p.l, p.tau);
    switch (q) {
        case Quantity::EmPotential:
            // collapsed form at the co-moving end-of-ramp phase
            return em_potential_collapsed(beam, ext, 0.0);
        case Quantity::KineticShift:
            return kinetic_shift(beam, ext, mode);
        case Quantity::Phase:
            return phase_shift(beam, ext).phase_raw;
        case Quantity::Intensity:
            return recombine_intensity(phase_shift(beam, ext).phase_raw);
    }
    throw std::logic_error("unhandled quantity");
}

}  // namespace

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::EmPotential: return "em_potential";
        case Quantity::KineticShift: return "kinetic_shift";
        case Quantity::Phase: return "phase";
        case Quantity::Intensity: return "intensity";
    }
    throw std::logic_error("unhandled quantity");
}

Quantity quantity_from_name(const std::string& name) {
    if (name == "em_potential") return Quantity::EmPotential;
    if (name == "kinetic_shift") return Quantity::KineticShift;
    if (name == "phase") return Quantity::Phase;
    if (name == "intensity") return Quantity::Intensity;
    throw std::invalid_argument("unknown quantity '" + name + "'");
}

MediumMode mode_from_name(const std::string& name) {
    if (name == "neutral") return MediumMode::Neutral;
    if (name == "charged_plus") return MediumMode::ChargedPlus;
    if (name == "charged_minus") return MediumMode::ChargedMinus;
    throw std::invalid_argument("unknown mode '" + name + "'");
}

std::string mode_name(MediumMode mode) {
    switch (mode) {
        case MediumMode::Neutral: return "neutral";
        case MediumMode::ChargedPlus: return "charged_plus";
        case MediumMode::ChargedMinus: return "charged_minus";
    }
    throw std::logic_error("unhandled mode");
}

std::span<const std::string_view> parameter_names() { return kParameterNames; }

bool is_parameter_name(std::string_view name) {
    return std::find(kParameterNames.begin(), kParameterNames.end(), name) !=
           kParameterNames.end();
}

void SweepPlan::validate() const {
    if (axes.empty()) throw std::invalid_argument("plan has no axes");
    for (const auto& axis : axes) {
        if (!is_parameter_name(axis.name)) {
            throw std::invalid_argument("unknown axis parameter '" + axis.name + "'");
        }
        if (axis.count < 2) {
            throw std::invalid_argument("axis '" + axis.name + "' needs count >= 2");
        }
        if (!(axis.max > axis.min)) {
            throw std::invalid_argument("axis '" + axis.name + "' needs max > min");
        }
    }
    for (std::size_t i = 0; i < axes.size(); ++i) {
        for (std::size_t j = i + 1; j < axes.size(); ++j) {
            if (axes[i].name == axes[j].name) {
                throw std::invalid_argument("axis '" + axes[i].name + "' swept twice");
            }
        }
    }
    for (const auto& [name, value] : fixed) {
        (void)value;
        if (!is_parameter_name(name)) {
            throw std::invalid_argument("unknown fixed parameter '" + name + "'");
        }
        for (const auto& axis : axes) {
            if (axis.name == name) {
                throw std::invalid_argument("parameter '" + name +
                                            "' is both fixed and swept");
            }
        }
    }
    if (svg) {
        const auto is_axis = [&](const std::string& name) {
            return std::any_of(axes.begin(), axes.end(),
                               [&](const SweepAxis& a) { return a.name == name; });
        };
        if (svg->path.empty()) throw std::invalid_argument("svg path is empty");
        if (!is_axis(svg->x_axis)) {
            throw std::invalid_argument("svg x axis '" + svg->x_axis +
                                        "' is not a swept axis");
        }
        if (!svg->series_axis.empty() && !is_axis(svg->series_axis)) {
            throw std::invalid_argument("svg series axis '" + svg->series_axis +
                                        "' is not a swept axis");
        }
        if (!svg->series_axis.empty() && svg->series_axis == svg->x_axis) {
            throw std::invalid_argument("svg series axis equals the x axis");
        }
    }
}

bool operator==(const Table& a, const Table& b) {
    return a.columns == b.columns && a.rows == b.rows;
}

Table run_plan(const SweepPlan& plan, unsigned threads) {
    plan.validate();

    Table table;
    for (const auto& axis : plan.axes) table.columns.push_back(axis.name);
    table.columns.push_back(quantity_name(plan.quantity));

    std::size_t total = 1;
    for (const auto& axis : plan.axes) total *= static_cast<std::size_t>(axis.count);
    table.rows.resize(total);

    // Row-major over axes in declaration order: last axis varies fastest.
    const auto eval_row = [&](std::size_t flat) {
        ParamSet params;
        for (const auto& [name, value] : plan.fixed) params.set(name, value);

        std::vector<double> row(plan.axes.size() + 1);
        std::size_t rest = flat;
        for (std::size_t a = plan.axes.size(); a-- > 0;) {
            const auto& axis = plan.axes[a];
            const std::size_t idx = rest % static_cast<std::size_t>(axis.count);
            rest /= static_cast<std::size_t>(axis.count);
            const double value =
                axis.min + static_cast<double>(idx) * (axis.max - axis.min) /
                               (axis.count - 1);
            params.set(axis.name, value);
            row[a] = value;
        }
        row.back() = evaluate_quantity(plan.quantity, params, plan.mode);
        table.rows[flat] = std::move(row);
    };

    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    workers = std::max(1u, std::min<unsigned>(workers, 16u));
    if (total < 256 || workers == 1) {
        for (std::size_t i = 0; i < total; ++i) eval_row(i);
        return table;
    }

    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) eval_row(i);
            } catch (...) {
                std::scoped_lock lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return table;
}

SweepPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }

    try {
        if (!doc.is_object()) {
            throw std::invalid_argument("plan root must be an object");
        }
        for (const auto& [key, value] : doc.items()) {
            (void)value;
            static const std::array<std::string_view, 6> known = {
                "quantity", "axes", "fixed", "mode", "csv", "svg"};
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                throw std::invalid_argument("unknown plan key '" + key + "'");
            }
        }

        SweepPlan plan;
        plan.quantity = quantity_from_name(doc.at("quantity").get<std::string>());
        for (const auto& axis : doc.at("axes")) {
            plan.axes.push_back({axis.at("name").get<std::string>(),
                                 axis.at("min").get<double>(),
                                 axis.at("max").get<double>(),
                                 axis.at("count").get<int>()});
        }
        if (doc.contains("fixed")) {
            for (const auto& [name, value] : doc.at("fixed").items()) {
                plan.fixed[name] = value.get<double>();
            }
        }
        if (doc.contains("mode")) {
            plan.mode = mode_from_name(doc.at("mode").get<std::string>());
        }
        if (doc.contains("csv")) plan.csv_path = doc.at("csv").get<std::string>();
        if (doc.contains("svg")) {
            const auto& svg = doc.at("svg");
            plan.svg = SvgSpec{svg.at("path").get<std::string>(),
                               svg.at("x").get<std::string>(),
                               svg.contains("series")
                                   ? svg.at("series").get<std::string>()
                                   : std::string{}};
        }
        plan.validate();
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << fmt17(row[c]);
        }
        out << '\n';
    }
    if (!out.flush()) throw IoError(path.string() + ": write failed");
}

Table parse_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open");

    const auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream stream(line);
        std::string cell;
        while (std::getline(stream, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };

    Table table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument(path.string() + ": missing header row");
    }
    table.columns = split(line);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != table.columns.size()) {
            throw std::invalid_argument(path.string() + ":" +
                                        std::to_string(line_no) +
                                        ": wrong number of columns");
        }
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                row[c] = parse_double(cells[c]);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(path.string() + ":" +
                                            std::to_string(line_no) + ": " +
                                            e.what());
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace spinterf
