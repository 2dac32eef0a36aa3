#include "twinfocal/scansim.hpp"

#include "twinfocal/errors.hpp"
#include "twinfocal/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace twinfocal {

namespace {

double symmetric_coord(double half, std::size_t i, std::size_t n)
{
    const double num = 2.0 * static_cast<double>(i) - static_cast<double>(n - 1);
    return half * num / static_cast<double>(n - 1);
}

// Incoherent image of |t|^2 through a closed-form intensity PSF.
class IncoherentModel {
public:
    IncoherentModel(Instrument instrument, const MicroscopeConfig& cfg, const SampleTransmittance& sample,
                    const QuadratureSpec& quad)
        : psf_(instrument, cfg), sample_(sample)
    {
        quad.validate();
        nodes_ = quad.nodes;
        tol_ = quad.target_rel_tol;
        const double alpha = (2.0 * std::numbers::pi / cfg.lambda_o) * cfg.a / cfg.f;
        radius_ = quad.truncation_radius > 0.0 ? quad.truncation_radius : 40.0 * airy_radius(cfg);
        panel_ = quad.panel_size > 0.0 ? quad.panel_size : 0.5 * std::numbers::pi / alpha;
    }

    double operator()(Vec2 y) const
    {
        if (is_point_sample(sample_)) {
            double sum = 0.0;
            for (const Vec2& u : point_positions(sample_))
                sum += psf_(std::hypot(u.x - y.x, u.y - y.y));
            return sum;
        }
        const std::vector<Cell> cells =
            intensity_cells(sample_, {y.x - radius_, y.y - radius_}, {y.x + radius_, y.y + radius_});
        const RadialKernel k = [this](double r_sq) { return std::complex<double>(psf_(std::sqrt(r_sq))); };
        const CellIntegral res = integrate_cells(cells, y, k, nodes_, panel_);
        if (res.rel_change > 10.0 * tol_) {
            std::ostringstream msg;
            msg << to_string(psf_.instrument()) << " image did not converge at y = (" << y.x << ", " << y.y
                << ") m: relative change " << res.rel_change << " on doubling the order from " << nodes_;
            throw NumericalError(msg.str());
        }
        return res.value.real();
    }

private:
    PsfModel psf_;
    SampleTransmittance sample_;
    int nodes_;
    double tol_;
    double radius_;
    double panel_;
};

}  // namespace

void ScanPlan::validate() const
{
    if (const auto* line = std::get_if<LinePlan>(&geometry)) {
        if (line->samples < 16)
            throw ConfigError("scan.samples must be >= 16");
        if (!(line->half_range > 0.0))
            throw ConfigError("scan.half_range must be positive");
        const double norm = std::hypot(line->direction.x, line->direction.y);
        if (std::fabs(norm - 1.0) > 1e-12)
            throw ConfigError("scan.direction must be a unit vector");
        return;
    }
    const auto& grid = std::get<GridPlan>(geometry);
    if (grid.nx < 16 || grid.ny < 16)
        throw ConfigError("scan.nx and scan.ny must be >= 16");
    if (!(grid.half_range_x > 0.0) || !(grid.half_range_y > 0.0))
        throw ConfigError("scan.half_range_x and scan.half_range_y must be positive");
}

std::vector<double> ScanPlan::line_coordinates() const
{
    std::vector<double> out;
    if (const auto* line = std::get_if<LinePlan>(&geometry)) {
        out.resize(line->samples);
        for (std::size_t i = 0; i < line->samples; ++i)
            out[i] = symmetric_coord(line->half_range, i, line->samples);
    }
    return out;
}

std::vector<Vec2> ScanPlan::positions() const
{
    validate();
    std::vector<Vec2> out;
    if (const auto* line = std::get_if<LinePlan>(&geometry)) {
        for (double s : line_coordinates())
            out.push_back(s * line->direction);
        return out;
    }
    const auto& grid = std::get<GridPlan>(geometry);
    out.reserve(grid.nx * grid.ny);
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i)
            out.push_back({symmetric_coord(grid.half_range_x, i, grid.nx),
                           symmetric_coord(grid.half_range_y, j, grid.ny)});
    return out;
}

ScanImage scan(const ScanPlan& plan, const MicroscopeConfig& cfg, const SampleTransmittance& sample,
               const QuadratureSpec& quad, const TimingWindow& window)
{
    const std::vector<Vec2> pos = plan.positions();
    std::vector<double> raw(pos.size());

    if (plan.instrument == Instrument::TwinPhoton) {
        const CoincidenceModel model(cfg, sample, quad);
        parallel_for(pos.size(), [&](std::size_t i) { raw[i] = model.rate(pos[i], window); });
    } else {
        const IncoherentModel model(plan.instrument, cfg, sample, quad);
        parallel_for(pos.size(), [&](std::size_t i) { raw[i] = model(pos[i]); });
    }

    const double peak = *std::max_element(raw.begin(), raw.end());
    if (!(peak > 0.0))
        throw NumericalError("scan produced no signal (closed coincidence window or opaque sample)");

    ScanImage image{plan, std::move(raw), peak};
    for (double& v : image.values)
        v /= peak;
    return image;
}

double dip_contrast(const ScanImage& image)
{
    const auto* line = std::get_if<LinePlan>(&image.plan.geometry);
    if (!line)
        throw ConfigError("dip_contrast: requires a line scan");
    if (line->samples % 2 == 0 || image.values.size() != line->samples)
        throw ConfigError("dip_contrast: line scan must be symmetric with a sample at the origin (odd count)");
    const double mid = image.values[line->samples / 2];
    const double peak = *std::max_element(image.values.begin(), image.values.end());
    return std::max(0.0, 1.0 - mid / peak);
}

double min_resolvable_separation(const MicroscopeConfig& cfg, Instrument instrument, double threshold,
                                 const QuadratureSpec& quad, const TimingWindow& window)
{
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ConfigError("threshold must lie in (0, 1)");
    const double width = fwhm(instrument, cfg);

    auto dip = [&](double sep) {
        ScanPlan plan{LinePlan{{1.0, 0.0}, 0.5 * sep + width, 1001}, instrument};
        return dip_contrast(scan(plan, cfg, TwoPoint{sep}, quad, window));
    };

    double lo = 0.1 * width;
    double hi = 4.0 * width;
    if (dip(hi) < threshold || dip(lo) >= threshold) {
        std::ostringstream msg;
        msg << "min_resolvable_separation: dip threshold " << threshold << " not bracketed by ["
            << lo << ", " << hi << "] m";
        throw RangeError(msg.str());
    }
    while (hi - lo > 1e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (dip(mid) >= threshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace twinfocal
