#include "twinfocal/sample.hpp"

#include "twinfocal/errors.hpp"

#include <algorithm>
#include <cmath>

namespace twinfocal {

Raster Raster::centred(double pitch, std::size_t nx, std::size_t ny, std::vector<std::complex<double>> values)
{
    Raster r{pitch, nx, ny, std::move(values), {}};
    r.origin = {-0.5 * pitch * static_cast<double>(nx), -0.5 * pitch * static_cast<double>(ny)};
    return r;
}

namespace {

struct Validator {
    void operator()(const Delta&) const {}
    void operator()(const TwoPoint& s) const
    {
        if (!(s.separation >= 0.0) || !std::isfinite(s.separation))
            throw ConfigError("sample.separation must be a finite length >= 0");
    }
    void operator()(const Slit& s) const
    {
        if (!(s.width > 0.0) || !std::isfinite(s.width))
            throw ConfigError("sample.width must be a finite positive length");
    }
    void operator()(const Grating& s) const
    {
        if (!(s.period > 0.0) || !std::isfinite(s.period))
            throw ConfigError("sample.period must be a finite positive length");
        if (!(s.duty > 0.0 && s.duty < 1.0))
            throw ConfigError("sample.duty must lie in (0, 1)");
    }
    void operator()(const Raster& s) const
    {
        if (!(s.pitch > 0.0) || !std::isfinite(s.pitch))
            throw ConfigError("sample.pitch must be a finite positive length");
        if (s.nx == 0 || s.ny == 0 || s.values.size() != s.nx * s.ny)
            throw ConfigError("sample.grid must hold nx * ny values");
        for (const auto& t : s.values)
            if (!(std::abs(t) <= 1.0 + 1e-12))
                throw ConfigError("sample.grid values must satisfy |t| <= 1");
    }
};

void push_clipped(std::vector<Cell>& out, Cell c, Vec2 lo, Vec2 hi)
{
    c.x0 = std::max(c.x0, lo.x);
    c.x1 = std::min(c.x1, hi.x);
    c.y0 = std::max(c.y0, lo.y);
    c.y1 = std::min(c.y1, hi.y);
    if (c.x1 > c.x0 && c.y1 > c.y0 && c.t != std::complex<double>{})
        out.push_back(c);
}

}  // namespace

void validate(const SampleTransmittance& s)
{
    std::visit(Validator{}, s);
}

bool is_point_sample(const SampleTransmittance& s)
{
    return std::holds_alternative<Delta>(s) || std::holds_alternative<TwoPoint>(s);
}

std::vector<Vec2> point_positions(const SampleTransmittance& s)
{
    if (std::holds_alternative<Delta>(s))
        return {Vec2{}};
    if (const auto* tp = std::get_if<TwoPoint>(&s))
        return {Vec2{-0.5 * tp->separation, 0.0}, Vec2{0.5 * tp->separation, 0.0}};
    return {};
}

std::vector<Cell> support_cells(const SampleTransmittance& s, Vec2 lo, Vec2 hi)
{
    validate(s);
    std::vector<Cell> out;
    if (const auto* slit = std::get_if<Slit>(&s)) {
        push_clipped(out, {-0.5 * slit->width, 0.5 * slit->width, lo.y, hi.y, 1.0}, lo, hi);
    } else if (const auto* g = std::get_if<Grating>(&s)) {
        const double half = 0.5 * g->duty * g->period;
        const auto m_lo = static_cast<long long>(std::floor((lo.x - half) / g->period));
        const auto m_hi = static_cast<long long>(std::ceil((hi.x + half) / g->period));
        for (long long m = m_lo; m <= m_hi; ++m) {
            const double centre = static_cast<double>(m) * g->period;
            push_clipped(out, {centre - half, centre + half, lo.y, hi.y, 1.0}, lo, hi);
        }
    } else if (const auto* r = std::get_if<Raster>(&s)) {
        const double p = r->pitch;
        const auto first = [p](double a, double o) {
            return static_cast<long long>(std::floor((a - o) / p));
        };
        const long long i0 = std::max(0LL, first(lo.x, r->origin.x));
        const long long i1 = std::min(static_cast<long long>(r->nx) - 1, first(hi.x, r->origin.x));
        const long long j0 = std::max(0LL, first(lo.y, r->origin.y));
        const long long j1 = std::min(static_cast<long long>(r->ny) - 1, first(hi.y, r->origin.y));
        for (long long j = j0; j <= j1; ++j) {
            for (long long i = i0; i <= i1; ++i) {
                const double x0 = r->origin.x + static_cast<double>(i) * p;
                const double y0 = r->origin.y + static_cast<double>(j) * p;
                push_clipped(out, {x0, x0 + p, y0, y0 + p, r->at(i, j)}, lo, hi);
            }
        }
    }
    return out;
}

std::vector<Cell> intensity_cells(const SampleTransmittance& s, Vec2 lo, Vec2 hi)
{
    std::vector<Cell> cells = support_cells(s, lo, hi);
    for (Cell& c : cells)
        c.t = std::norm(c.t);
    return cells;
}

}  // namespace twinfocal
