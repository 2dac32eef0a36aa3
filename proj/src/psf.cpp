#include "twinfocal/psf.hpp"

#include "twinfocal/errors.hpp"
#include "twinfocal/quadrature.hpp"
#include "twinfocal/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twinfocal {

void validate(const Pupil& p)
{
    if (const auto* hard = std::get_if<HardCircular>(&p)) {
        if (!(hard->a > 0.0))
            throw ConfigError("pupil: aperture radius must be positive");
        return;
    }
    const auto& tab = std::get<TabulatedRadial>(p);
    if (tab.radius.size() != tab.amplitude.size())
        throw ConfigError("pupil: radius and amplitude tables differ in length");
    if (tab.radius.size() < 8)
        throw ConfigError("pupil: at least 8 samples required");
    if (tab.radius.front() != 0.0)
        throw ConfigError("pupil: radii must start at 0");
    for (std::size_t i = 0; i < tab.radius.size(); ++i) {
        if (i > 0 && !(tab.radius[i] > tab.radius[i - 1]))
            throw ConfigError("pupil: radii must be strictly increasing");
        if (!(tab.amplitude[i] >= 0.0 && tab.amplitude[i] <= 1.0))
            throw ConfigError("pupil: amplitudes must lie in [0, 1]");
    }
}

namespace {

// Integral of p(r) J0(q r) r dr over the table, p linear per interval.
double hankel0(const TabulatedRadial& tab, double q, const GaussLegendreRule& rule)
{
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < tab.radius.size(); ++i) {
        const double r0 = tab.radius[i];
        const double r1 = tab.radius[i + 1];
        const double p0 = tab.amplitude[i];
        const double p1 = tab.amplitude[i + 1];
        const double half = 0.5 * (r1 - r0);
        const double mid = 0.5 * (r1 + r0);
        double part = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double r = mid + half * rule.nodes[k];
            const double p = p0 + (p1 - p0) * (r - r0) / (r1 - r0);
            part += rule.weights[k] * p * specfun::bessel_j0(q * r) * r;
        }
        sum += half * part;
    }
    return sum;
}

}  // namespace

double pupil_ft(const Pupil& p, double q)
{
    validate(p);
    if (!std::isfinite(q) || q < 0.0)
        throw std::invalid_argument("pupil_ft: q must be finite and >= 0");
    if (const auto* hard = std::get_if<HardCircular>(&p))
        return specfun::airy_amp(q * hard->a);

    const auto& tab = std::get<TabulatedRadial>(p);
    static const GaussLegendreRule rule = gauss_legendre(6);
    const double norm = hankel0(tab, 0.0, rule);
    if (!(norm > 0.0))
        throw ConfigError("pupil: tabulated pupil is opaque");
    if (q == 0.0)
        return 1.0;
    return hankel0(tab, q, rule) / norm;
}

const char* to_string(Instrument i)
{
    switch (i) {
    case Instrument::Widefield: return "widefield";
    case Instrument::Confocal: return "confocal";
    case Instrument::TwinPhoton: return "twin";
    }
    return "?";
}

PsfModel::PsfModel(Instrument instrument, const MicroscopeConfig& cfg) : instrument_(instrument)
{
    cfg.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    k_o_a_ = (two_pi / cfg.lambda_o) * cfg.a;
    k_e_a_ = (two_pi / cfg.lambda_e) * cfg.a;
    f_ = cfg.f;
    s0_ = cfg.s0;
    gaussian_ = !cfg.unfocused_pump;
    inv_r0_sq_ = gaussian_ ? 1.0 / r0_squared(cfg) : 0.0;
}

double PsfModel::operator()(double y) const
{
    if (!(y >= 0.0))
        throw std::invalid_argument("psf: scan offset must be >= 0");
    switch (instrument_) {
    case Instrument::Widefield: {
        const double amp = specfun::airy_amp(k_o_a_ * y / f_);
        return amp * amp;
    }
    case Instrument::Confocal: {
        const double amp = specfun::airy_amp(k_o_a_ * y / f_);
        return (amp * amp) * (amp * amp);
    }
    case Instrument::TwinPhoton: {
        // 2 Omega_j a y / (s0 c) with Omega_j / c = 2 pi / lambda_j.
        const double amp_o = specfun::airy_amp(2.0 * k_o_a_ * y / s0_);
        const double amp_e = specfun::airy_amp(2.0 * k_e_a_ * y / s0_);
        const double detect = (amp_o * amp_o) * (amp_e * amp_e);
        return gaussian_ ? detect * std::exp(-y * y * inv_r0_sq_) : detect;
    }
    }
    return 0.0;
}

double psf_widefield(double y, const MicroscopeConfig& cfg)
{
    return PsfModel(Instrument::Widefield, cfg)(y);
}

double psf_confocal(double y, const MicroscopeConfig& cfg)
{
    return PsfModel(Instrument::Confocal, cfg)(y);
}

double psf_twin(double y, const MicroscopeConfig& cfg)
{
    return PsfModel(Instrument::TwinPhoton, cfg)(y);
}

void RadialProfile::validate() const
{
    if (offsets.size() != intensity.size() || offsets.empty())
        throw std::invalid_argument("RadialProfile: offsets and intensity must be non-empty and equal length");
    if (offsets.front() != 0.0 || intensity.front() != 1.0)
        throw std::invalid_argument("RadialProfile: profile must start at y = 0 with intensity 1");
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (i > 0 && !(offsets[i] > offsets[i - 1]))
            throw std::invalid_argument("RadialProfile: offsets must be strictly increasing");
        if (!std::isfinite(intensity[i]) || intensity[i] < 0.0 || intensity[i] > 1.0)
            throw std::invalid_argument("RadialProfile: intensities must lie in [0, 1]");
    }
}

RadialProfile sample_profile(const std::function<double(double)>& intensity, double range, std::size_t n,
                             std::string label)
{
    if (n < 2 || !(range > 0.0))
        throw std::invalid_argument("sample_profile: need n >= 2 and range > 0");
    RadialProfile p;
    p.label = std::move(label);
    p.offsets.resize(n);
    p.intensity.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.offsets[i] = range * static_cast<double>(i) / static_cast<double>(n - 1);
        p.intensity[i] = intensity(p.offsets[i]);
    }
    p.validate();
    return p;
}

double fwhm(const std::function<double(double)>& intensity, double range, std::size_t grid)
{
    if (!(range > 0.0))
        throw std::invalid_argument("fwhm: range must be positive");
    if (std::fabs(intensity(0.0) - 1.0) > 1e-9)
        throw std::invalid_argument("fwhm: intensity must be peak-normalized to 1 at y = 0");
    const std::size_t n = std::max<std::size_t>(grid, 2048);

    double lo = 0.0;
    double hi = -1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double y = range * static_cast<double>(i) / static_cast<double>(n - 1);
        if (intensity(y) < 0.5) {
            hi = y;
            break;
        }
        lo = y;
    }
    if (hi < 0.0)
        throw RangeError("fwhm: intensity never drops below half maximum within [0, " + std::to_string(range) +
                         " m]; widen the scan range");

    while (hi - lo > 1e-8 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (intensity(mid) < 0.5)
            hi = mid;
        else
            lo = mid;
    }
    return lo + hi;  // 2 * midpoint
}

double fwhm(const RadialProfile& profile)
{
    profile.validate();
    for (std::size_t i = 1; i < profile.offsets.size(); ++i) {
        const double v1 = profile.intensity[i];
        if (v1 < 0.5) {
            const double v0 = profile.intensity[i - 1];
            const double y0 = profile.offsets[i - 1];
            const double y1 = profile.offsets[i];
            return 2.0 * (y0 + (v0 - 0.5) / (v0 - v1) * (y1 - y0));
        }
    }
    throw RangeError("fwhm: profile '" + profile.label + "' never drops below half maximum; widen the scan range");
}

double default_fwhm_range(const MicroscopeConfig& cfg)
{
    return 4.0 * airy_radius(cfg);
}

double fwhm(Instrument instrument, const MicroscopeConfig& cfg)
{
    const PsfModel model(instrument, cfg);
    return fwhm([&](double y) { return model(y); }, default_fwhm_range(cfg));
}

double width_reduction(double reference, double narrower)
{
    if (!(reference > 0.0) || !(narrower > 0.0))
        throw std::invalid_argument("width_reduction: widths must be positive");
    return 100.0 * (1.0 - narrower / reference);
}

}  // namespace twinfocal
