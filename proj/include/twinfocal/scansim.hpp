#pragma once

#include "twinfocal/coincidence.hpp"
#include "twinfocal/psf.hpp"

#include <variant>
#include <vector>

namespace twinfocal {

// Scan along a line through the origin: positions s * direction for
// s = half_range * (2i - (samples - 1)) / (samples - 1).
struct LinePlan {
    Vec2 direction{1.0, 0.0};
    double half_range = 0.0;
    std::size_t samples = 0;

    bool operator==(const LinePlan&) const = default;
};

// Regular grid, row-major (ny rows of nx), x fastest.
struct GridPlan {
    double half_range_x = 0.0;
    double half_range_y = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;

    bool operator==(const GridPlan&) const = default;
};

struct ScanPlan {
    std::variant<LinePlan, GridPlan> geometry;
    Instrument instrument = Instrument::TwinPhoton;

    void validate() const;
    std::vector<Vec2> positions() const;
    // Signed coordinate along the line for LinePlan; empty for grids.
    std::vector<double> line_coordinates() const;
    bool is_line() const { return std::holds_alternative<LinePlan>(geometry); }

    bool operator==(const ScanPlan&) const = default;
};

struct ScanImage {
    ScanPlan plan;
    std::vector<double> values;  // peak-normalized
    double peak_value_raw = 0.0;
};

// Scans the instrument over the sample (equivalently the sample under a fixed
// instrument). TwinPhoton uses the coincidence rate; Widefield and Confocal
// form the incoherent image of |t|^2 through their intensity PSFs. Positions
// are evaluated in parallel, each into its own slot.
ScanImage scan(const ScanPlan& plan, const MicroscopeConfig& cfg, const SampleTransmittance& sample,
               const QuadratureSpec& quad, const TimingWindow& window);

// 1 - I(0) / I_peak for a symmetric line scan with a sample at its centre.
double dip_contrast(const ScanImage& image);

// Smallest TwoPoint separation whose dip contrast reaches threshold, by
// bisection over [FWHM/10, 4 FWHM] to 1e-3 relative.
double min_resolvable_separation(const MicroscopeConfig& cfg, Instrument instrument, double threshold,
                                 const QuadratureSpec& quad, const TimingWindow& window);

}  // namespace twinfocal
