#include "twinfocal/optics.hpp"

#include "twinfocal/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace twinfocal {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string("microscope.") + name + " must be a finite positive length");
}

}  // namespace

void MicroscopeConfig::validate() const
{
    require_positive(lambda_p, "lambda_p");
    require_positive(lambda_o, "lambda_o");
    require_positive(lambda_e, "lambda_e");
    require_positive(a, "a");
    require_positive(f, "f");
    require_positive(f_p, "f_p");
    require_positive(w0, "w0");
    require_positive(s0, "s0");
    require_positive(d, "d");
    if (s1)
        require_positive(*s1, "s1");

    if (w0 > a)
        throw ConfigError("microscope.w0 must not exceed the lens radius microscope.a");

    const double inv_p = 1.0 / lambda_p;
    if (std::fabs(1.0 / lambda_o + 1.0 / lambda_e - inv_p) > 1e-9 * inv_p)
        throw ConfigError("energy conservation violated: 1/lambda_o + 1/lambda_e must equal 1/lambda_p");

    if (s1) {
        const double inv_f = 1.0 / f;
        if (std::fabs(1.0 / s0 + 1.0 / *s1 - inv_f) > 1e-9 * inv_f)
            throw ConfigError("imaging condition violated: 1/s0 + 1/s1 must equal 1/f");
    } else if (std::fabs(s0 - f) > 1e-9 * f) {
        throw ConfigError("collimated detection (s1 = infinity) requires microscope.s0 == microscope.f");
    }
}

MicroscopeConfig reference_config()
{
    return MicroscopeConfig{};
}

double angular_frequency(double lambda)
{
    return 2.0 * std::numbers::pi * kSpeedOfLight / lambda;
}

namespace {

// (c/omega_p) (lambda_p / (pi w0^2)) f_p^2
double focus_term(const MicroscopeConfig& cfg)
{
    const double c_over_omega = kSpeedOfLight / angular_frequency(cfg.lambda_p);
    return c_over_omega * (cfg.lambda_p / (std::numbers::pi * cfg.w0 * cfg.w0)) * (cfg.f_p * cfg.f_p);
}

}  // namespace

std::complex<double> sigma_p_sq(const MicroscopeConfig& cfg)
{
    cfg.validate();
    const double c_over_omega = kSpeedOfLight / angular_frequency(cfg.lambda_p);
    return {c_over_omega * (cfg.d - cfg.f_p), -focus_term(cfg)};
}

double r0_squared(const MicroscopeConfig& cfg)
{
    cfg.validate();
    if (cfg.unfocused_pump)
        return std::numeric_limits<double>::infinity();
    return focus_term(cfg);
}

double r0(const MicroscopeConfig& cfg)
{
    const double sq = r0_squared(cfg);
    if (cfg.unfocused_pump)
        return sq;
    const double from_sigma = std::sqrt(sq);
    const double direct = cfg.lambda_p * cfg.f_p / (std::numbers::sqrt2 * std::numbers::pi * cfg.w0);
    if (std::fabs(from_sigma - direct) > 1e-12 * direct)
        throw std::logic_error("r0: closed forms disagree");
    return from_sigma;
}

std::complex<double> eta0_inv_sq(const MicroscopeConfig& cfg)
{
    const double sq = r0_squared(cfg);
    const double re = cfg.unfocused_pump ? 0.0 : 1.0 / sq;
    const double im = -2.0 * angular_frequency(cfg.lambda_p) / (cfg.s0 * kSpeedOfLight);
    return {re, im};
}

PumpFocus pump_focus(const MicroscopeConfig& cfg)
{
    return {sigma_p_sq(cfg), r0(cfg), eta0_inv_sq(cfg)};
}

double airy_radius(const MicroscopeConfig& cfg)
{
    cfg.validate();
    return 1.22 * cfg.lambda_o * cfg.f / (2.0 * cfg.a);
}

double crossover_waist(double lambda_p, double f_p, double r_airy)
{
    if (!(lambda_p > 0.0) || !(f_p > 0.0) || !(r_airy > 0.0))
        throw ConfigError("crossover_waist: arguments must be positive");
    return lambda_p * f_p / (std::numbers::sqrt2 * std::numbers::pi * r_airy);
}

double crossover_waist(const MicroscopeConfig& cfg)
{
    return crossover_waist(cfg.lambda_p, cfg.f_p, airy_radius(cfg));
}

double numerical_aperture(const MicroscopeConfig& cfg)
{
    cfg.validate();
    return std::sin(std::atan(cfg.a / cfg.f));
}

}  // namespace twinfocal
