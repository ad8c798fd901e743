#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "spinterf/core_model.hpp"

namespace spinterf {

/// Two-beam recombination intensity for equal amplitudes, cos^2(phase/2),
/// normalized so the unperturbed (phase 0) output is 1.
double recombine_intensity(double phase);

struct InterferogramSample {
    double b_ext = 0.0;
    double phase_raw = 0.0;
    double alpha = 0.0;      ///< wrapped phase in [0, 2*pi)
    double intensity = 0.0;  ///< in [0, 1]
};

/// Output intensity versus swept field magnitude. Samples are ascending
/// in b_ext with no duplicates; intensity at b_ext = 0 is 1.
struct Interferogram {
    std::vector<InterferogramSample> samples;
    NeutronBeam beam;
    ExternalField ext_template;  ///< theta, l, tau fixed; magnitude varies
    double b_min = 0.0;
    double b_max = 0.0;
    int count = 0;
};

/// Evaluates the phase shift and the recombination intensity at `count`
/// equally spaced magnitudes in [b_min, b_max].
/// Throws std::invalid_argument unless 0 <= b_min < b_max and count >= 2.
Interferogram sweep_interferogram(const NeutronBeam& beam,
                                  const ExternalField& ext_template,
                                  double b_min, double b_max, int count);

struct OrientationSample {
    double theta = 0.0;
    double em_potential = 0.0;      ///< from the full ramped fields
    double classical_energy = 0.0;  ///< -mu . B_ext, mu = (0, 0, mu_magnitude)
};

/// Evaluates, per orientation angle, the interaction potential of the full
/// ramped fields at the co-moving end-of-ramp point (constant across the
/// sweep) next to the classical moment coupling (varying as
/// -mu_magnitude * b_ext * cos(theta)).
/// Throws std::invalid_argument on an empty angle list.
std::vector<OrientationSample> orientation_sweep(const NeutronBeam& beam,
                                                 const ExternalField& ext,
                                                 std::span<const double> thetas,
                                                 double mu_magnitude = 1.0);

/// CSV export, columns: b_ext, phase_raw, alpha_wrapped, intensity.
void write_interferogram_csv(const Interferogram& gram,
                             const std::filesystem::path& path);

/// CSV export, columns: theta, em_potential, classical_energy.
void write_orientation_csv(const std::vector<OrientationSample>& samples,
                           const std::filesystem::path& path);

}  // namespace spinterf
