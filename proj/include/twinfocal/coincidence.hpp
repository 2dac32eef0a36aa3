#pragma once

#include "twinfocal/dispersion.hpp"
#include "twinfocal/optics.hpp"
#include "twinfocal/quadrature.hpp"
#include "twinfocal/sample.hpp"

#include <complex>
#include <optional>

namespace twinfocal {

// Arrival-time difference T12 = T1 - T2 and, optionally, the crystal that
// sets the window (0, D L). Without a crystal the window is treated as open.
struct TimingWindow {
    double t12 = 0.0;
    std::optional<CrystalConstants> crystal;
};

double gate(const TimingWindow& w);

// Integrand of the coincidence amplitude for a point at distance r from the
// scan position:
//   K(r) = exp(-r^2 / (2 eta0^2)) p~(2 Omega_o r / (s0 c)) p~(2 Omega_e r / (s0 c))
// with a hard circular pupil. |K(r)|^2 equals psf_twin(r).
class CoincidenceKernel {
public:
    explicit CoincidenceKernel(const MicroscopeConfig& cfg);

    std::complex<double> operator()(double r_sq) const;

    // Largest radial frequency of the two Airy factors (rad/m).
    double max_frequency() const { return std::max(alpha_o_, alpha_e_); }
    double min_frequency() const { return std::min(alpha_o_, alpha_e_); }
    double r0() const { return r0_; }

private:
    double alpha_o_;
    double alpha_e_;
    std::complex<double> half_eta_;  // 1 / (2 eta0^2)
    double r0_;
};

// Truncation radius and panel size actually used for a configuration.
struct ResolvedQuadrature {
    int nodes;
    double truncation_radius;
    double panel_size;
    double target_rel_tol;
};

ResolvedQuadrature resolve(const QuadratureSpec& quad, const MicroscopeConfig& cfg);

// Unnormalized coincidence amplitude at scan offset y (gate not applied).
// Point samples are summed in closed form; extended samples are integrated
// over their support within the truncation box around y. Throws
// NumericalError when doubling the Gauss-Legendre order changes the result by
// more than 10 * target_rel_tol.
std::complex<double> amplitude(Vec2 y, const MicroscopeConfig& cfg, const SampleTransmittance& sample,
                               const QuadratureSpec& quad);

// gate * |amplitude|^2; Delta samples return gate * psf_twin(|y|).
double coincidence_rate(Vec2 y, const MicroscopeConfig& cfg, const SampleTransmittance& sample,
                        const QuadratureSpec& quad, const TimingWindow& window);

// Reusable evaluator for scans: config, kernel and quadrature resolved once.
class CoincidenceModel {
public:
    CoincidenceModel(const MicroscopeConfig& cfg, const SampleTransmittance& sample, const QuadratureSpec& quad);

    std::complex<double> amplitude(Vec2 y) const;
    double rate(Vec2 y, const TimingWindow& window) const;

    const ResolvedQuadrature& quadrature() const { return quad_; }

private:
    MicroscopeConfig cfg_;
    SampleTransmittance sample_;
    CoincidenceKernel kernel_;
    ResolvedQuadrature quad_;
};

}  // namespace twinfocal
