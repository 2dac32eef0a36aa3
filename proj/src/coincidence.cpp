#include "twinfocal/coincidence.hpp"

#include "twinfocal/errors.hpp"
#include "twinfocal/psf.hpp"
#include "twinfocal/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace twinfocal {

double gate(const TimingWindow& w)
{
    return w.crystal ? gate(w.t12, *w.crystal) : 1.0;
}

CoincidenceKernel::CoincidenceKernel(const MicroscopeConfig& cfg)
{
    cfg.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    alpha_o_ = 2.0 * ((two_pi / cfg.lambda_o) * cfg.a) / cfg.s0;
    alpha_e_ = 2.0 * ((two_pi / cfg.lambda_e) * cfg.a) / cfg.s0;
    half_eta_ = 0.5 * eta0_inv_sq(cfg);
    r0_ = twinfocal::r0(cfg);
}

std::complex<double> CoincidenceKernel::operator()(double r_sq) const
{
    const double r = std::sqrt(r_sq);
    const double amp_o = specfun::airy_amp(alpha_o_ * r);
    const double amp_e = alpha_e_ == alpha_o_ ? amp_o : specfun::airy_amp(alpha_e_ * r);
    return std::exp(-r_sq * half_eta_) * (amp_o * amp_e);
}

ResolvedQuadrature resolve(const QuadratureSpec& quad, const MicroscopeConfig& cfg)
{
    quad.validate();
    const CoincidenceKernel kernel(cfg);
    ResolvedQuadrature out{quad.nodes, quad.truncation_radius, quad.panel_size, quad.target_rel_tol};
    const double r0 = kernel.r0();
    if (out.truncation_radius == 0.0) {
        // Radius enclosing 1 - tol of the pump Gaussian's mass, but never
        // inside the third Airy zero. Unfocused: 40 Airy radii.
        const double third_zero = 10.173468135062722 / kernel.min_frequency();
        if (std::isfinite(r0))
            out.truncation_radius = std::max(r0 * std::sqrt(2.0 * std::log(1.0 / quad.target_rel_tol)), third_zero);
        else
            out.truncation_radius = 40.0 * airy_radius(cfg);
    }
    if (out.panel_size == 0.0)
        out.panel_size = 0.5 * std::min(std::numbers::pi / kernel.max_frequency(), r0);
    return out;
}

CoincidenceModel::CoincidenceModel(const MicroscopeConfig& cfg, const SampleTransmittance& sample,
                                   const QuadratureSpec& quad)
    : cfg_(cfg), sample_(sample), kernel_(cfg), quad_(resolve(quad, cfg))
{
    validate(sample_);
}

std::complex<double> CoincidenceModel::amplitude(Vec2 y) const
{
    if (is_point_sample(sample_)) {
        // t(r + y) = sum of delta(r + y - u_i): integrand collapses onto r = u_i - y.
        std::complex<double> sum{};
        for (const Vec2& u : point_positions(sample_)) {
            const Vec2 r = u - y;
            sum += kernel_(r.x * r.x + r.y * r.y);
        }
        return sum;
    }

    const double R = quad_.truncation_radius;
    const std::vector<Cell> cells = support_cells(sample_, {y.x - R, y.y - R}, {y.x + R, y.y + R});
    const RadialKernel k = [this](double r_sq) { return kernel_(r_sq); };
    const CellIntegral res = integrate_cells(cells, y, k, quad_.nodes, quad_.panel_size);
    if (res.rel_change > 10.0 * quad_.target_rel_tol) {
        std::ostringstream msg;
        msg << "coincidence amplitude did not converge at y = (" << y.x << ", " << y.y << ") m: "
            << "doubling the Gauss-Legendre order from " << quad_.nodes << " changed the result by "
            << res.rel_change << " (relative to L1 norm " << res.l1_norm << "), limit "
            << 10.0 * quad_.target_rel_tol << "; panel_size = " << quad_.panel_size
            << " m, truncation_radius = " << R << " m, cells = " << cells.size();
        throw NumericalError(msg.str());
    }
    return res.value;
}

double CoincidenceModel::rate(Vec2 y, const TimingWindow& window) const
{
    const double g = gate(window);
    if (g == 0.0)
        return 0.0;
    if (std::holds_alternative<Delta>(sample_))
        return g * psf_twin(std::hypot(y.x, y.y), cfg_);
    return g * std::norm(amplitude(y));
}

std::complex<double> amplitude(Vec2 y, const MicroscopeConfig& cfg, const SampleTransmittance& sample,
                               const QuadratureSpec& quad)
{
    return CoincidenceModel(cfg, sample, quad).amplitude(y);
}

double coincidence_rate(Vec2 y, const MicroscopeConfig& cfg, const SampleTransmittance& sample,
                        const QuadratureSpec& quad, const TimingWindow& window)
{
    return CoincidenceModel(cfg, sample, quad).rate(y, window);
}

}  // namespace twinfocal
