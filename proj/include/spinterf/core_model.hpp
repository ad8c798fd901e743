#pragma once

#include <cstdint>

#include "spinterf/vec3.hpp"

namespace spinterf {

/// Monochromatic beam parameters in natural (dimensionless) units.
///
/// Stored: wavelength lambda, speed u0, intrinsic magnetic amplitude b0,
/// mean density rho_bar. Everything else is derived on demand:
/// wavenumber k0 = 2*pi/lambda, angular frequency w0 = u0*k0, and the
/// electric amplitude e0 = u0*b0 (never stored independently).
class NeutronBeam {
  public:
    /// Throws std::invalid_argument unless lambda > 0, u0 > 0, b0 >= 0,
    /// rho_bar > 0.
    NeutronBeam(double wavelength, double speed, double intrinsic_amplitude,
                double mean_density);

    double wavelength() const { return lambda_; }
    double speed() const { return u0_; }
    double intrinsic_amplitude() const { return b0_; }
    double mean_density() const { return rho_bar_; }

    double wavenumber() const;
    double angular_frequency() const;
    double electric_amplitude() const { return u0_ * b0_; }

    /// cos argument of the travelling wave, k0*x - w0*t.
    double wave_phase(double x, double t) const;

  private:
    double lambda_;
    double u0_;
    double b0_;
    double rho_bar_;
};

/// Static external field ramped on linearly over [0, tau] along the
/// magnet of length l. The orientation angle is stored unreduced; every
/// potential built from it is 2*pi-periodic in theta.
class ExternalField {
  public:
    /// Throws std::invalid_argument unless magnitude >= 0, magnet_length > 0,
    /// ramp_time > 0.
    ExternalField(double magnitude, double orientation, double magnet_length,
                  double ramp_time);

    double magnitude() const { return b_ext_; }
    double orientation() const { return theta_; }
    double magnet_length() const { return l_; }
    double ramp_time() const { return tau_; }

    /// Field three-vector (0, -sin(theta), cos(theta)) * b_ext.
    Vec3 field_vector() const;

    /// Copy with a different magnitude (sweep helper).
    ExternalField with_magnitude(double b_ext) const;

  private:
    double b_ext_;
    double theta_;
    double l_;
    double tau_;
};

/// E and B at one space-time sample point. Components are finite by
/// construction (the evaluators only accept finite inputs).
struct FieldState {
    Vec3 e;
    Vec3 b;
    double x = 0.0;
    double t = 0.0;
};

/// Sign branch of the kinetic-potential shift. Neutral particles keep
/// total energy density constant, which selects the minus branch; the
/// plus branch applies to the charged case of opposite convention.
enum class MediumMode { Neutral, ChargedPlus, ChargedMinus };

/// Accumulated phase of the perturbed beam path.
struct PhaseResult {
    double delta_u = 0.0;        ///< speed change magnitude
    double phase_raw = 0.0;      ///< unwrapped phase, >= 0 for b_ext >= 0
    std::int64_t wrap_count = 0; ///< n with phase_raw = alpha + 2*pi*n
    double phase_wrapped = 0.0;  ///< alpha in [0, 2*pi)
};

/// Unperturbed co-moving plane wave:
/// E = (0, e0*cos(k0*x - w0*t), 0), B = (0, 0, b0*cos(k0*x - w0*t)).
FieldState intrinsic_fields(const NeutronBeam& beam, double x, double t);

/// Fields during/after the linear ramp. At t = tau:
///   E_y = e0*cos(.) - b_ext*(cos(theta)/tau)*x
///   E_z = -b_ext*(sin(theta)/tau)*x
///   B_y = -b_ext*sin(theta)
///   B_z = b0*cos(.) + b_ext*cos(theta)
/// For t < tau the external contributions to B scale by t/tau while the
/// induced E terms keep their end-of-ramp form.
///
/// Throws std::domain_error when t is outside [0, tau] or x is outside
/// the interaction region [0, u0*tau].
FieldState ramped_fields(const NeutronBeam& beam, const ExternalField& ext,
                         double x, double t);

/// Upper bound of the interaction region, u0 * tau.
double interaction_region_end(const NeutronBeam& beam, const ExternalField& ext);

/// Electromagnetic energy density (|E|^2/u^2 + |B|^2) / 2.
/// Throws std::domain_error on u <= 0.
double em_potential(const FieldState& state, double u);

/// Collapsed interaction potential b0^2*cos^2(phase_arg) + b_ext^2.
/// Independent of the field orientation by construction.
double em_potential_collapsed(const NeutronBeam& beam, const ExternalField& ext,
                              double phase_arg);

/// Classical moment coupling -mu . B_ext. Kept as the contrast case: this
/// value varies with theta while em_potential_collapsed does not.
double classical_interaction_energy(const Vec3& mu, const ExternalField& ext);

/// Kinetic-potential shift: -b_ext^2 for Neutral/ChargedMinus,
/// +b_ext^2 for ChargedPlus.
double kinetic_shift(const NeutronBeam& beam, const ExternalField& ext,
                     MediumMode mode);

/// Speed change magnitude delta_u = b_ext / sqrt(rho_bar).
/// Throws std::domain_error if the density is not positive.
double velocity_delta(const NeutronBeam& beam, const ExternalField& ext);

/// Phase accumulated over the traversal time t1 = l/u0:
///   phase_raw = 2*pi * delta_u * t1 / lambda
///             = 2*pi * (l/lambda) * b_ext / (sqrt(rho_bar) * u0),
/// wrapped to alpha in [0, 2*pi) with n = floor(phase_raw / (2*pi)).
PhaseResult phase_shift(const NeutronBeam& beam, const ExternalField& ext);

/// Field increment that advances phase_raw by k*2*pi:
///   delta_b = k * lambda * sqrt(rho_bar) * u0 / l.
/// Throws std::domain_error on k <= 0.
double phase_period(const NeutronBeam& beam, const ExternalField& ext, double k);

}  // namespace spinterf
