#include "spinterf/interferometer.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "spinterf/io.hpp"

namespace spinterf {

double recombine_intensity(double phase) {
    const double c = std::cos(0.5 * phase);
    return c * c;
}

Interferogram sweep_interferogram(const NeutronBeam& beam,
                                  const ExternalField& ext_template,
                                  double b_min, double b_max, int count) {
    if (!(b_min >= 0.0) || !(b_max > b_min)) {
        throw std::invalid_argument("need 0 <= b_min < b_max");
    }
    if (count < 2) throw std::invalid_argument("need count >= 2");

    Interferogram gram{{}, beam, ext_template, b_min, b_max, count};
    gram.samples.reserve(static_cast<std::size_t>(count));
    const double step = (b_max - b_min) / (count - 1);
    for (int i = 0; i < count; ++i) {
        const double b = b_min + i * step;
        const PhaseResult phase = phase_shift(beam, ext_template.with_magnitude(b));
        gram.samples.push_back({b, phase.phase_raw, phase.phase_wrapped,
                                recombine_intensity(phase.phase_raw)});
    }
    return gram;
}

std::vector<OrientationSample> orientation_sweep(const NeutronBeam& beam,
                                                 const ExternalField& ext,
                                                 std::span<const double> thetas,
                                                 double mu_magnitude) {
    if (thetas.empty()) throw std::invalid_argument("need at least one angle");

    // Evaluate the full field route at the co-moving end of the ramp; the
    // collapsed form, which never sees theta, is checked against it in tests.
    const double x_end = interaction_region_end(beam, ext);
    const Vec3 mu{0.0, 0.0, mu_magnitude};

    std::vector<OrientationSample> samples;
    samples.reserve(thetas.size());
    for (double theta : thetas) {
        const ExternalField rotated(ext.magnitude(), theta, ext.magnet_length(),
                                    ext.ramp_time());
        const FieldState state =
            ramped_fields(beam, rotated, x_end, ext.ramp_time());
        samples.push_back({theta, em_potential(state, beam.speed()),
                           classical_interaction_energy(mu, rotated)});
    }
    return samples;
}

void write_interferogram_csv(const Interferogram& gram,
                             const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << "b_ext,phase_raw,alpha_wrapped,intensity\n";
    for (const auto& s : gram.samples) {
        out << fmt17(s.b_ext) << ',' << fmt17(s.phase_raw) << ','
            << fmt17(s.alpha) << ',' << fmt17(s.intensity) << '\n';
    }
    if (!out.flush()) throw IoError(path.string() + ": write failed");
}

void write_orientation_csv(const std::vector<OrientationSample>& samples,
                           const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << "theta,em_potential,classical_energy\n";
    for (const auto& s : samples) {
        out << fmt17(s.theta) << ',' << fmt17(s.em_potential) << ','
            << fmt17(s.classical_energy) << '\n';
    }
    if (!out.flush()) throw IoError(path.string() + ": write failed");
}

}  // namespace spinterf
