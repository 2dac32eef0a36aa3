#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace twinfocal {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule by Newton iteration on P_n. n >= 1.
GaussLegendreRule gauss_legendre(int n);

// Controls the sample-area integrals of the coincidence amplitude and of the
// incoherent widefield/confocal images.
//
// Each transmitting cell of the sample (a rectangle after clipping to the
// truncation box) is split into panels no larger than panel_size and
// integrated with an n-point Gauss-Legendre tensor rule. The result is
// accepted when the 2n-point rule agrees with the n-point rule to
// target_rel_tol (relative to the L1 norm of the integrand).
struct QuadratureSpec {
    int nodes = 8;                   // Gauss-Legendre order per panel axis
    double truncation_radius = 0.0;  // m; 0 selects the kernel's default
    double panel_size = 0.0;         // m; 0 selects the kernel's default
    double target_rel_tol = 1e-8;

    void validate() const;

    bool operator==(const QuadratureSpec&) const = default;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

// Axis-aligned rectangle of constant complex transmittance.
struct Cell {
    double x0, x1, y0, y1;
    std::complex<double> t;
};

// Radially symmetric kernel, called with the squared distance |u - centre|^2.
using RadialKernel = std::function<std::complex<double>(double r_sq)>;

struct CellIntegral {
    std::complex<double> value;  // from the 2n-point rule
    std::complex<double> coarse; // from the n-point rule
    double l1_norm;              // integral of |kernel * t| (2n-point rule)
    double rel_change;           // |value - coarse| / l1_norm, 0 when l1_norm == 0
};

// Integral over the cells of kernel(|u - centre|^2) * t(u). Cells are
// summed in the order given; the result is independent of threading.
CellIntegral integrate_cells(std::span<const Cell> cells, Vec2 centre, const RadialKernel& kernel,
                             int nodes, double panel_size);

}  // namespace twinfocal
