#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinterf/core_model.hpp"

using namespace spinterf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

NeutronBeam unit_beam() { return NeutronBeam(kTwoPi, 1.0, 1.0, 1.0); }

}  // namespace

TEST_CASE("beam constructor enforces invariants") {
    CHECK_THROWS_AS(NeutronBeam(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NeutronBeam(-1.0, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NeutronBeam(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NeutronBeam(1.0, 1.0, -0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NeutronBeam(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NeutronBeam(1.0, 1.0, 1.0, -2.0), std::invalid_argument);
    CHECK_NOTHROW(NeutronBeam(1.0, 1.0, 0.0, 1.0));  // b0 = 0 is allowed

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.05, 20.0);
    for (int i = 0; i < 200; ++i) {
        const NeutronBeam beam(dist(rng), dist(rng), dist(rng), dist(rng));
        // k0*lambda = 2*pi to ulp scale, w0 = u0*k0
        CHECK(rel_diff(beam.wavenumber() * beam.wavelength(), kTwoPi) < 1e-15);
        CHECK(rel_diff(beam.angular_frequency(), beam.speed() * beam.wavenumber()) <
              1e-12);
        CHECK(beam.electric_amplitude() ==
              beam.speed() * beam.intrinsic_amplitude());
    }
}

TEST_CASE("external field constructor and vector") {
    CHECK_THROWS_AS(ExternalField(-0.1, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ExternalField(1.0, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ExternalField(1.0, 0.0, 1.0, -1.0), std::invalid_argument);

    const ExternalField ext(2.0, std::numbers::pi / 2.0, 1.0, 1.0);
    const Vec3 v = ext.field_vector();
    CHECK(v.x == 0.0);
    CHECK(v.y == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(std::abs(v.z) < 1e-15);
}

TEST_CASE("intrinsic fields at characteristic points") {
    const NeutronBeam beam = unit_beam();  // b0=1, u0=1, lambda=2*pi -> k0=1
    const FieldState at_origin = intrinsic_fields(beam, 0.0, 0.0);
    CHECK(at_origin.e == Vec3{0.0, 1.0, 0.0});
    CHECK(at_origin.b == Vec3{0.0, 0.0, 1.0});

    // k0*x - w0*t = pi/2 -> both fields vanish
    const FieldState at_node = intrinsic_fields(beam, std::numbers::pi / 2.0, 0.0);
    CHECK(std::abs(at_node.e.y) < 1e-15);
    CHECK(std::abs(at_node.b.z) < 1e-15);
}

TEST_CASE("intrinsic fields match the independent recomputation") {
    // expected values from tests/oracles/closed_form_values.py
    const NeutronBeam beam(1.0, 3.0, 2.0, 1.0);
    const FieldState s = intrinsic_fields(beam, 0.1, 0.05);
    CHECK(rel_diff(s.e.y, 5.7063390977709219) < 1e-14);
    CHECK(rel_diff(s.b.z, 1.9021130325903071) < 1e-14);
    CHECK(s.e.x == 0.0);
    CHECK(s.e.z == 0.0);
    CHECK(s.b.x == 0.0);
    CHECK(s.b.y == 0.0);
}

TEST_CASE("ramped fields reduce to intrinsic fields at b_ext = 0") {
    const NeutronBeam beam(0.8, 1.3, 0.9, 1.0);
    const ExternalField ext(0.0, 0.4, 1.0, 0.7);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xs(0.0, 1.3 * 0.7);
    std::uniform_real_distribution<double> ts(0.0, 0.7);
    for (int i = 0; i < 100; ++i) {
        const double x = xs(rng);
        const double t = ts(rng);
        const FieldState a = ramped_fields(beam, ext, x, t);
        const FieldState b = intrinsic_fields(beam, x, t);
        CHECK(a.e.y == b.e.y);
        CHECK(a.e.z == b.e.z);
        CHECK(a.b.y == b.b.y);
        CHECK(a.b.z == b.b.z);
    }
}

TEST_CASE("ramped fields at theta = 0, t = tau, x = u0*tau") {
    // expected values from tests/oracles/closed_form_values.py
    const NeutronBeam beam(0.8, 1.3, 0.9, 1.0);
    const ExternalField ext(0.6, 0.0, 1.0, 0.7);
    const double x = interaction_region_end(beam, ext);
    const FieldState s = ramped_fields(beam, ext, x, ext.ramp_time());
    CHECK(rel_diff(s.e.y, 0.39000000000000001) < 1e-13);
    CHECK(std::abs(s.e.z) < 1e-15);
    CHECK(std::abs(s.b.y) < 1e-15);
    CHECK(rel_diff(s.b.z, 1.5) < 1e-13);
}

TEST_CASE("ramped fields at theta = pi/2 carry no external z component") {
    const NeutronBeam beam(0.8, 1.3, 0.9, 1.0);
    const ExternalField ext(0.6, std::numbers::pi / 2.0, 1.0, 0.7);
    const double x = interaction_region_end(beam, ext);
    const FieldState s = ramped_fields(beam, ext, x, ext.ramp_time());
    const FieldState plain = intrinsic_fields(beam, x, ext.ramp_time());
    CHECK(rel_diff(s.b.y, -0.6) < 1e-15);
    CHECK(rel_diff(s.b.z, plain.b.z) < 1e-12);  // cos(pi/2) rounds to ~6e-17
}

TEST_CASE("ramped fields reject out-of-domain queries") {
    const NeutronBeam beam(1.0, 1.0, 1.0, 1.0);
    const ExternalField ext(1.0, 0.0, 1.0, 1.0);
    CHECK_THROWS_AS(ramped_fields(beam, ext, 0.5, -0.1), std::domain_error);
    CHECK_THROWS_AS(ramped_fields(beam, ext, 0.5, 1.1), std::domain_error);
    CHECK_THROWS_AS(ramped_fields(beam, ext, -0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(ramped_fields(beam, ext, 1.7, 0.5), std::domain_error);
    CHECK_NOTHROW(ramped_fields(beam, ext, 1.0, 1.0));  // region boundary
}

TEST_CASE("em potential basics") {
    CHECK(em_potential(FieldState{}, 1.0) == 0.0);
    CHECK_THROWS_AS(em_potential(FieldState{}, 0.0), std::domain_error);
    CHECK_THROWS_AS(em_potential(FieldState{}, -1.0), std::domain_error);

    FieldState unit;
    unit.e = {0.0, 3.0, 0.0};
    unit.b = {0.0, 0.0, 1.0};
    CHECK(em_potential(unit, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("full-field potential collapses at the co-moving end of ramp") {
    // expected value from tests/oracles/closed_form_values.py
    const NeutronBeam beam(0.8, 1.3, 0.9, 1.0);
    const ExternalField ext(0.6, 0.0, 1.0, 0.7);
    const double x = interaction_region_end(beam, ext);
    const FieldState s = ramped_fields(beam, ext, x, ext.ramp_time());
    const double phi = em_potential(s, beam.speed());
    CHECK(rel_diff(phi, 1.1699999999999999) < 1e-13);
    CHECK(rel_diff(phi, em_potential_collapsed(
                            beam, ext, beam.wave_phase(x, ext.ramp_time()))) <
          1e-13);
}

TEST_CASE("collapse identity holds over randomized parameters") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(0.1, 5.0);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const NeutronBeam beam(dist(rng), dist(rng), dist(rng), dist(rng));
        const ExternalField ext(dist(rng), angle(rng), dist(rng), dist(rng));
        const double x = interaction_region_end(beam, ext);
        const double t = ext.ramp_time();
        const double full =
            em_potential(ramped_fields(beam, ext, x, t), beam.speed());
        const double collapsed =
            em_potential_collapsed(beam, ext, beam.wave_phase(x, t));
        CHECK(rel_diff(full, collapsed) < 1e-12);
    }
}

TEST_CASE("interaction potential is orientation independent") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(0.1, 5.0);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const NeutronBeam beam(dist(rng), dist(rng), dist(rng), dist(rng));
        const double b_ext = dist(rng);
        const double l = dist(rng);
        const double tau = dist(rng);
        const ExternalField a(b_ext, angle(rng), l, tau);
        const ExternalField b(b_ext, angle(rng), l, tau);
        const double x = beam.speed() * tau;
        const double phi_a = em_potential(ramped_fields(beam, a, x, tau), beam.speed());
        const double phi_b = em_potential(ramped_fields(beam, b, x, tau), beam.speed());
        CHECK(rel_diff(phi_a, phi_b) < 1e-12);
    }
}

TEST_CASE("collapsed potential ignores theta bit for bit") {
    const NeutronBeam beam(2.0, 1.0, 1.0, 1.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-30.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        const ExternalField a(0.5, angle(rng), 1.0, 1.0);
        const ExternalField b(0.5, angle(rng), 1.0, 1.0);
        CHECK(em_potential_collapsed(beam, a, 0.37) ==
              em_potential_collapsed(beam, b, 0.37));
    }
    CHECK(em_potential_collapsed(beam, ExternalField(0.0, 0.0, 1.0, 1.0), 0.0) ==
          1.0);
    CHECK(em_potential_collapsed(beam, ExternalField(0.5, 0.0, 1.0, 1.0), 0.0) ==
          doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("a beam without an intrinsic wave still sees the external field") {
    // b0 = 0 is a valid degenerate beam: the potential is pure b_ext^2
    const NeutronBeam beam(1.0, 1.0, 0.0, 1.0);
    const ExternalField ext(0.7, 1.3, 1.0, 1.0);
    const double x = interaction_region_end(beam, ext);
    const double phi = em_potential(ramped_fields(beam, ext, x, 1.0), 1.0);
    CHECK(rel_diff(phi, 0.49) < 1e-13);
    CHECK(em_potential_collapsed(beam, ext, 0.42) ==
          doctest::Approx(0.49).epsilon(1e-15));
}

TEST_CASE("classical moment energy varies with theta") {
    const Vec3 mu{0.0, 0.0, 1.0};
    CHECK(classical_interaction_energy(mu, ExternalField(1.0, 0.0, 1.0, 1.0)) ==
          -1.0);
    CHECK(std::abs(classical_interaction_energy(
              mu, ExternalField(1.0, std::numbers::pi / 2.0, 1.0, 1.0))) < 1e-15);
    // expected value from tests/oracles/closed_form_values.py
    CHECK(rel_diff(classical_interaction_energy(
                       mu, ExternalField(2.0, std::numbers::pi / 3.0, 1.0, 1.0)),
                   -1.0) < 1e-14);

    // the contrast pair: classical energies differ while potentials agree
    const NeutronBeam beam(1.0, 1.0, 1.0, 1.0);
    const ExternalField at_0(1.0, 0.0, 1.0, 1.0);
    const ExternalField at_90(1.0, std::numbers::pi / 2.0, 1.0, 1.0);
    CHECK(std::abs(classical_interaction_energy(mu, at_0) -
                   classical_interaction_energy(mu, at_90)) > 0.5);
    const double x = interaction_region_end(beam, at_0);
    CHECK(rel_diff(em_potential(ramped_fields(beam, at_0, x, 1.0), 1.0),
                   em_potential(ramped_fields(beam, at_90, x, 1.0), 1.0)) < 1e-12);
}

TEST_CASE("kinetic shift sign branches") {
    const NeutronBeam beam(1.0, 1.0, 1.0, 1.0);
    const ExternalField off(0.0, 0.0, 1.0, 1.0);
    const ExternalField on(2.0, 0.0, 1.0, 1.0);
    for (auto mode : {MediumMode::Neutral, MediumMode::ChargedPlus,
                      MediumMode::ChargedMinus}) {
        CHECK(kinetic_shift(beam, off, mode) == 0.0);
    }
    CHECK(kinetic_shift(beam, on, MediumMode::Neutral) == -4.0);
    CHECK(kinetic_shift(beam, on, MediumMode::ChargedMinus) == -4.0);
    CHECK(kinetic_shift(beam, on, MediumMode::ChargedPlus) == 4.0);
}

TEST_CASE("velocity delta") {
    CHECK(velocity_delta(NeutronBeam(1.0, 1.0, 1.0, 1.0),
                         ExternalField(0.0, 0.0, 1.0, 1.0)) == 0.0);
    CHECK(velocity_delta(NeutronBeam(1.0, 1.0, 1.0, 1.0),
                         ExternalField(3.0, 0.0, 1.0, 1.0)) == 3.0);
    CHECK(velocity_delta(NeutronBeam(1.0, 1.0, 1.0, 4.0),
                         ExternalField(2.0, 0.0, 1.0, 1.0)) == 1.0);
}

TEST_CASE("phase shift canonical values") {
    const NeutronBeam beam(1.0, 1.0, 1.0, 1.0);

    const PhaseResult zero = phase_shift(beam, ExternalField(0.0, 0.0, 1.0, 1.0));
    CHECK(zero.phase_raw == 0.0);
    CHECK(zero.wrap_count == 0);
    CHECK(zero.phase_wrapped == 0.0);

    // l = lambda, rho = 1, u0 = 1, b_ext = 1 -> exactly one full turn
    const PhaseResult turn = phase_shift(beam, ExternalField(1.0, 0.0, 1.0, 1.0));
    CHECK(turn.phase_raw == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK(turn.wrap_count == 1);
    CHECK(std::abs(turn.phase_wrapped) < 1e-15);

    // generic regression point from tests/oracles/closed_form_values.py
    const NeutronBeam generic(0.7, 1.9, 1.0, 2.3);
    const PhaseResult r = phase_shift(generic, ExternalField(1.7, 0.0, 3.1, 1.0));
    CHECK(rel_diff(r.delta_u, 1.1209468047728379) < 1e-14);
    CHECK(rel_diff(r.phase_raw, 16.416286564679442) < 1e-14);
    CHECK(r.wrap_count == 2);
    CHECK(rel_diff(r.phase_wrapped, 3.8499159503202693) < 1e-13);
}

TEST_CASE("phase wrap consistency and linearity over random inputs") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> dist(0.05, 8.0);
    for (int i = 0; i < 1000; ++i) {
        const NeutronBeam beam(dist(rng), dist(rng), dist(rng), dist(rng));
        const ExternalField ext(dist(rng), 0.0, dist(rng), dist(rng));
        const PhaseResult r = phase_shift(beam, ext);

        CHECK(r.phase_raw >= 0.0);
        CHECK(r.wrap_count >= 0);
        CHECK(r.phase_wrapped >= 0.0);
        CHECK(r.phase_wrapped < kTwoPi);
        CHECK(rel_diff(r.phase_raw,
                       r.phase_wrapped + kTwoPi * static_cast<double>(r.wrap_count)) <
              1e-12);

        // doubling the field doubles the raw phase
        const PhaseResult twice =
            phase_shift(beam, ext.with_magnitude(2.0 * ext.magnitude()));
        CHECK(rel_diff(twice.phase_raw, 2.0 * r.phase_raw) < 1e-13);
    }
}

TEST_CASE("energy bookkeeping: potential gain equals the kinetic loss") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(0.05, 6.0);
    for (int i = 0; i < 1000; ++i) {
        const NeutronBeam beam(dist(rng), dist(rng), dist(rng), dist(rng));
        const ExternalField ext(dist(rng), dist(rng), dist(rng), dist(rng));
        const double phase_arg = dist(rng);
        const double b0 = beam.intrinsic_amplitude();
        const double c = std::cos(phase_arg);
        const double intrinsic_part = b0 * b0 * c * c;
        const double gain =
            em_potential_collapsed(beam, ext, phase_arg) - intrinsic_part;
        const double b2 = ext.magnitude() * ext.magnitude();
        CHECK(rel_diff(gain, b2) < 1e-12);
        CHECK(kinetic_shift(beam, ext, MediumMode::Neutral) == -b2);
    }
}

TEST_CASE("phase period inverts the phase law") {
    const NeutronBeam unit(1.0, 1.0, 1.0, 1.0);
    const ExternalField ext(1.0, 0.0, 1.0, 1.0);
    CHECK(phase_period(unit, ext, 1.0) == 1.0);
    CHECK(phase_period(unit, ext, 2.0) == 2.0 * phase_period(unit, ext, 1.0));
    CHECK_THROWS_AS(phase_period(unit, ext, 0.0), std::domain_error);
    CHECK_THROWS_AS(phase_period(unit, ext, -1.0), std::domain_error);

    // generic values from tests/oracles/closed_form_values.py
    const NeutronBeam generic(0.7, 1.9, 1.0, 2.3);
    const ExternalField far(1.7, 0.0, 3.1, 1.0);
    CHECK(rel_diff(phase_period(generic, far, 1.0), 0.65065963487668144) < 1e-14);
    CHECK(rel_diff(phase_period(generic, far, 2.0), 1.3013192697533629) < 1e-14);

    // advancing b_ext by the period advances the raw phase by k*2*pi
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(0.1, 4.0);
    for (int i = 0; i < 300; ++i) {
        const NeutronBeam beam(dist(rng), dist(rng), dist(rng), dist(rng));
        const ExternalField base(dist(rng), 0.0, dist(rng), dist(rng));
        const double k = dist(rng);
        const double delta_b = phase_period(beam, base, k);
        const double before = phase_shift(beam, base).phase_raw;
        const double after =
            phase_shift(beam, base.with_magnitude(base.magnitude() + delta_b))
                .phase_raw;
        CHECK(rel_diff(after - before, k * kTwoPi) < 1e-10);
    }
}

TEST_CASE("field-unit rescaling scales the raw phase linearly") {
    const NeutronBeam beam(0.9, 1.4, 1.2, 2.0);
    const ExternalField ext(0.8, 0.3, 2.0, 1.5);
    const double base = phase_shift(beam, ext).phase_raw;

    // power-of-two rescale is exact in floating point
    const double doubled =
        phase_shift(beam, ext.with_magnitude(2.0 * ext.magnitude())).phase_raw;
    CHECK(doubled == 2.0 * base);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> scale(0.1, 7.0);
    for (int i = 0; i < 200; ++i) {
        const double s = scale(rng);
        const double scaled =
            phase_shift(beam, ext.with_magnitude(s * ext.magnitude())).phase_raw;
        CHECK(rel_diff(scaled, s * base) < 1e-12);
    }

    // full unit rescale (b-type inputs by s, density by s^2) leaves the
    // dimensionless phase unchanged while the period axis stretches by s
    const double s = 2.0;
    const NeutronBeam rescaled_beam(beam.wavelength(), beam.speed(),
                                    s * beam.intrinsic_amplitude(),
                                    s * s * beam.mean_density());
    const ExternalField rescaled_ext = ext.with_magnitude(s * ext.magnitude());
    CHECK(phase_shift(rescaled_beam, rescaled_ext).phase_raw == base);
    CHECK(phase_period(rescaled_beam, rescaled_ext, 1.0) ==
          s * phase_period(beam, ext, 1.0));
}
