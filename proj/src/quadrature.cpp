#include "twinfocal/quadrature.hpp"

#include "twinfocal/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twinfocal {

GaussLegendreRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess for the i-th largest root.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            const double pn = n == 1 ? x : p1;
            const double pnm1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

void QuadratureSpec::validate() const
{
    if (nodes < 8)
        throw ConfigError("quadrature.nodes must be >= 8");
    if (truncation_radius < 0.0 || !std::isfinite(truncation_radius))
        throw ConfigError("quadrature.truncation_radius must be >= 0 (0 = automatic)");
    if (panel_size < 0.0 || !std::isfinite(panel_size))
        throw ConfigError("quadrature.panel_size must be >= 0 (0 = automatic)");
    if (!(target_rel_tol > 0.0))
        throw ConfigError("quadrature.target_rel_tol must be > 0");
}

namespace {

struct Panelled {
    std::vector<double> x;  // absolute abscissae
    std::vector<double> w;  // absolute weights
};

Panelled panel_axis(double lo, double hi, double panel_size, const GaussLegendreRule& rule)
{
    Panelled out;
    const double len = hi - lo;
    if (!(len > 0.0))
        return out;
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(len / panel_size)));
    const double h = len / static_cast<double>(panels);
    out.x.reserve(panels * rule.nodes.size());
    out.w.reserve(panels * rule.nodes.size());
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + (static_cast<double>(p) + 0.5) * h;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            out.x.push_back(mid + 0.5 * h * rule.nodes[k]);
            out.w.push_back(0.5 * h * rule.weights[k]);
        }
    }
    return out;
}

struct Accum {
    std::complex<double> sum{};
    double l1 = 0.0;
};

Accum integrate_one(const Cell& c, Vec2 centre, const RadialKernel& kernel, double panel_size,
                    const GaussLegendreRule& rule)
{
    Accum acc;
    const Panelled px = panel_axis(c.x0, c.x1, panel_size, rule);
    const Panelled py = panel_axis(c.y0, c.y1, panel_size, rule);
    for (std::size_t j = 0; j < py.x.size(); ++j) {
        const double dy = py.x[j] - centre.y;
        std::complex<double> row{};
        double row_l1 = 0.0;
        for (std::size_t i = 0; i < px.x.size(); ++i) {
            const double dx = px.x[i] - centre.x;
            const std::complex<double> k = kernel(dx * dx + dy * dy);
            row += px.w[i] * k;
            row_l1 += px.w[i] * std::abs(k);
        }
        acc.sum += py.w[j] * row;
        acc.l1 += py.w[j] * row_l1;
    }
    acc.sum *= c.t;
    acc.l1 *= std::abs(c.t);
    return acc;
}

}  // namespace

CellIntegral integrate_cells(std::span<const Cell> cells, Vec2 centre, const RadialKernel& kernel,
                             int nodes, double panel_size)
{
    if (!(panel_size > 0.0))
        throw std::invalid_argument("integrate_cells: panel_size must be positive");
    const GaussLegendreRule coarse_rule = gauss_legendre(nodes);
    const GaussLegendreRule fine_rule = gauss_legendre(2 * nodes);

    CellIntegral out{};
    for (const Cell& c : cells) {
        if (c.t == std::complex<double>{})
            continue;
        const Accum coarse = integrate_one(c, centre, kernel, panel_size, coarse_rule);
        const Accum fine = integrate_one(c, centre, kernel, panel_size, fine_rule);
        out.coarse += coarse.sum;
        out.value += fine.sum;
        out.l1_norm += fine.l1;
    }
    out.rel_change = out.l1_norm > 0.0 ? std::abs(out.value - out.coarse) / out.l1_norm : 0.0;
    return out;
}

}  // namespace twinfocal
