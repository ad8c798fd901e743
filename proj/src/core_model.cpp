#include "spinterf/core_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinterf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

}  // namespace

NeutronBeam::NeutronBeam(double wavelength, double speed,
                         double intrinsic_amplitude, double mean_density)
    : lambda_(wavelength),
      u0_(speed),
      b0_(intrinsic_amplitude),
      rho_bar_(mean_density) {
    require_finite(wavelength, "wavelength");
    require_finite(speed, "speed");
    require_finite(intrinsic_amplitude, "intrinsic amplitude");
    require_finite(mean_density, "mean density");
    if (lambda_ <= 0.0) throw std::invalid_argument("wavelength must be > 0");
    if (u0_ <= 0.0) throw std::invalid_argument("speed must be > 0");
    if (b0_ < 0.0) {
        throw std::invalid_argument("intrinsic amplitude must be >= 0");
    }
    if (rho_bar_ <= 0.0) {
        throw std::invalid_argument("mean density must be > 0");
    }
}

double NeutronBeam::wavenumber() const { return kTwoPi / lambda_; }

double NeutronBeam::angular_frequency() const { return u0_ * wavenumber(); }

double NeutronBeam::wave_phase(double x, double t) const {
    return wavenumber() * x - angular_frequency() * t;
}

ExternalField::ExternalField(double magnitude, double orientation,
                             double magnet_length, double ramp_time)
    : b_ext_(magnitude), theta_(orientation), l_(magnet_length), tau_(ramp_time) {
    require_finite(magnitude, "field magnitude");
    require_finite(orientation, "orientation");
    require_finite(magnet_length, "magnet length");
    require_finite(ramp_time, "ramp time");
    if (b_ext_ < 0.0) throw std::invalid_argument("field magnitude must be >= 0");
    if (l_ <= 0.0) throw std::invalid_argument("magnet length must be > 0");
    if (tau_ <= 0.0) throw std::invalid_argument("ramp time must be > 0");
}

Vec3 ExternalField::field_vector() const {
    return {0.0, -std::sin(theta_) * b_ext_, std::cos(theta_) * b_ext_};
}

ExternalField ExternalField::with_magnitude(double b_ext) const {
    return ExternalField(b_ext, theta_, l_, tau_);
}

FieldState intrinsic_fields(const NeutronBeam& beam, double x, double t) {
    const double c = std::cos(beam.wave_phase(x, t));
    return FieldState{{0.0, beam.electric_amplitude() * c, 0.0},
                      {0.0, 0.0, beam.intrinsic_amplitude() * c},
                      x,
                      t};
}

double interaction_region_end(const NeutronBeam& beam, const ExternalField& ext) {
    return beam.speed() * ext.ramp_time();
}

FieldState ramped_fields(const NeutronBeam& beam, const ExternalField& ext,
                         double x, double t) {
    const double tau = ext.ramp_time();
    if (!(t >= 0.0 && t <= tau)) {
        throw std::domain_error("t=" + std::to_string(t) +
                                " outside the ramp interval [0, tau=" +
                                std::to_string(tau) + "]");
    }
    const double x_end = interaction_region_end(beam, ext);
    if (!(x >= 0.0 && x <= x_end)) {
        throw std::domain_error("x=" + std::to_string(x) +
                                " outside the interaction region [0, u0*tau=" +
                                std::to_string(x_end) + "]");
    }

    const double c = std::cos(beam.wave_phase(x, t));
    const double b_ext = ext.magnitude();
    const double sin_th = std::sin(ext.orientation());
    const double cos_th = std::cos(ext.orientation());
    const double ramp = t / tau;  // external B switched on linearly

    FieldState state;
    state.x = x;
    state.t = t;
    state.e.y = beam.electric_amplitude() * c - b_ext * (cos_th / tau) * x;
    state.e.z = -b_ext * (sin_th / tau) * x;
    state.b.y = -b_ext * sin_th * ramp;
    state.b.z = beam.intrinsic_amplitude() * c + b_ext * cos_th * ramp;
    return state;
}

double em_potential(const FieldState& state, double u) {
    if (!(u > 0.0)) {
        throw std::domain_error("propagation speed must be > 0");
    }
    return 0.5 * (norm_squared(state.e) / (u * u) + norm_squared(state.b));
}

double em_potential_collapsed(const NeutronBeam& beam, const ExternalField& ext,
                              double phase_arg) {
    const double b0 = beam.intrinsic_amplitude();
    const double c = std::cos(phase_arg);
    const double b_ext = ext.magnitude();
    return b0 * b0 * c * c + b_ext * b_ext;
}

double classical_interaction_energy(const Vec3& mu, const ExternalField& ext) {
    return -dot(mu, ext.field_vector());
}

double kinetic_shift(const NeutronBeam& /*beam*/, const ExternalField& ext,
                     MediumMode mode) {
    const double b2 = ext.magnitude() * ext.magnitude();
    return mode == MediumMode::ChargedPlus ? b2 : -b2;
}

double velocity_delta(const NeutronBeam& beam, const ExternalField& ext) {
    const double rho = beam.mean_density();
    if (!(rho > 0.0)) {
        throw std::domain_error("mean density must be > 0");
    }
    return ext.magnitude() / std::sqrt(rho);
}

PhaseResult phase_shift(const NeutronBeam& beam, const ExternalField& ext) {
    PhaseResult result;
    result.delta_u = velocity_delta(beam, ext);
    const double traversal_time = ext.magnet_length() / beam.speed();
    result.phase_raw =
        kTwoPi * result.delta_u * traversal_time / beam.wavelength();

    double n = std::floor(result.phase_raw / kTwoPi);
    double alpha = result.phase_raw - kTwoPi * n;
    // floor can land one period off when phase_raw sits within rounding of
    // an exact multiple of 2*pi
    if (alpha < 0.0) {
        alpha += kTwoPi;
        n -= 1.0;
    } else if (alpha >= kTwoPi) {
        alpha -= kTwoPi;
        n += 1.0;
    }
    result.wrap_count = static_cast<std::int64_t>(n);
    result.phase_wrapped = alpha;
    return result;
}

double phase_period(const NeutronBeam& beam, const ExternalField& ext, double k) {
    if (!(k > 0.0)) {
        throw std::domain_error("phase multiple k must be > 0");
    }
    return k * beam.wavelength() * std::sqrt(beam.mean_density()) * beam.speed() /
           ext.magnet_length();
}

}  // namespace spinterf
