#pragma once

#include "twinfocal/optics.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace twinfocal {

// Objective pupil p. Radial only: the hard aperture of radius a, or a
// tabulated amplitude profile (linear between samples, zero beyond the last).
struct HardCircular {
    double a;
};

struct TabulatedRadial {
    std::vector<double> radius;
    std::vector<double> amplitude;
};

using Pupil = std::variant<HardCircular, TabulatedRadial>;

void validate(const Pupil& p);

// Fourier transform of the pupil at spatial frequency q (rad/m), normalized
// so the value at q = 0 is 1. HardCircular gives airy_amp(q a).
double pupil_ft(const Pupil& p, double q);

enum class Instrument { Widefield, Confocal, TwinPhoton };

const char* to_string(Instrument i);

// Lateral intensity PSFs, peak 1 at y = 0.
double psf_widefield(double y, const MicroscopeConfig& cfg);
double psf_confocal(double y, const MicroscopeConfig& cfg);
double psf_twin(double y, const MicroscopeConfig& cfg);

// Evaluator with the configuration validated once; for tight loops.
class PsfModel {
public:
    PsfModel(Instrument instrument, const MicroscopeConfig& cfg);

    double operator()(double y) const;
    Instrument instrument() const { return instrument_; }

private:
    Instrument instrument_;
    double k_o_a_;        // (2 pi / lambda_o) a
    double k_e_a_;        // (2 pi / lambda_e) a
    double f_;
    double s0_;
    double inv_r0_sq_;    // 0 for an unfocused pump
    bool gaussian_;
};

struct RadialProfile {
    std::vector<double> offsets;    // m, strictly increasing from 0
    std::vector<double> intensity;  // peak-normalized, intensity[0] == 1
    std::string label;

    void validate() const;
};

RadialProfile sample_profile(const std::function<double(double)>& intensity, double range, std::size_t n,
                             std::string label);

// Full width at half maximum, taken at the first half-max crossing from the
// peak at y = 0. The callable form brackets on a grid of max(grid, 2048)
// points over [0, range] and bisects to 1e-8 relative.
double fwhm(const std::function<double(double)>& intensity, double range, std::size_t grid = 2048);
// Sampled form: linear interpolation between the bracketing samples.
double fwhm(const RadialProfile& profile);

// Default FWHM search range: [0, 4 R_airy].
double default_fwhm_range(const MicroscopeConfig& cfg);

double fwhm(Instrument instrument, const MicroscopeConfig& cfg);

// 100 (1 - narrower / reference), in percent.
double width_reduction(double reference, double narrower);

}  // namespace twinfocal
