#pragma once

#include <complex>
#include <optional>

namespace twinfocal {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

// Geometry and spectrum of the twin-photon instrument. All lengths in metres.
// The surrounding medium is air (index 1).
struct MicroscopeConfig {
    double lambda_p = 351e-9;  // pump wavelength
    double lambda_o = 702e-9;  // signal (ordinary) wavelength
    double lambda_e = 702e-9;  // idler (extraordinary) wavelength
    double a = 0.02;           // objective aperture radius
    double f = 0.02;           // objective focal length
    double f_p = 0.02;         // pump lens focal length
    double w0 = 1e-3;          // pump beam radius at the pump lens
    double s0 = 0.02;          // crystal face to objective
    // Objective to pinhole. nullopt means collimated (s0 = f, s1 at infinity);
    // the imaging-condition check is skipped in that case.
    std::optional<double> s1;
    double d = 0.02;           // pump waist to pump lens
    // Drop the pump Gaussian exp(-y^2/r0^2) entirely (r0 treated as infinite).
    bool unfocused_pump = false;

    // Throws ConfigError naming the violated invariant.
    void validate() const;

    bool operator==(const MicroscopeConfig&) const = default;
};

// Reference parameter set: 351 nm pump, degenerate 702 nm pair, a = f = f_p = 2 cm,
// w0 = 1 mm, d = f_p, s0 = f, collimated detection arm.
MicroscopeConfig reference_config();

// Angular frequency 2 pi c / lambda.
double angular_frequency(double lambda);

struct PumpFocus {
    std::complex<double> sigma_p_sq;   // m^2
    double r0;                         // m, +inf for an unfocused pump
    std::complex<double> eta0_inv_sq;  // m^-2
};

std::complex<double> sigma_p_sq(const MicroscopeConfig& cfg);

// r0^2 = c lambda_p f_p^2 / (pi omega_p w0^2); shares its arithmetic with
// the imaginary part of sigma_p_sq, so sigma_p_sq == -i r0_squared when d == f_p.
double r0_squared(const MicroscopeConfig& cfg);

// Pump spot radius in the crystal. Checks the two closed forms against each
// other; +inf when cfg.unfocused_pump.
double r0(const MicroscopeConfig& cfg);

// 1/eta0^2 = 1/r0^2 - 2 i omega_p / (s0 c).
std::complex<double> eta0_inv_sq(const MicroscopeConfig& cfg);

PumpFocus pump_focus(const MicroscopeConfig& cfg);

// First zero of the detection Airy pattern, 1.22 lambda_o f / (2a).
double airy_radius(const MicroscopeConfig& cfg);

// Pump radius at which r0 equals the Airy radius.
double crossover_waist(const MicroscopeConfig& cfg);
double crossover_waist(double lambda_p, double f_p, double r_airy);

// sin(arctan(a/f)). Reported as metadata only; no formula uses it.
double numerical_aperture(const MicroscopeConfig& cfg);

}  // namespace twinfocal
