#pragma once

#include "twinfocal/quadrature.hpp"

#include <complex>
#include <variant>
#include <vector>

namespace twinfocal {

// Ideal point object at the origin.
struct Delta {
    bool operator==(const Delta&) const = default;
};

// Two ideal point objects at (+-separation/2, 0).
struct TwoPoint {
    double separation;
    bool operator==(const TwoPoint&) const = default;
};

// Transmitting strip |u_x| < width/2, unbounded along y.
struct Slit {
    double width;
    bool operator==(const Slit&) const = default;
};

// Transmitting strips of width duty*period centred on u_x = m*period.
struct Grating {
    double period;
    double duty;
    bool operator==(const Grating&) const = default;
};

// Pixelated complex transmittance. values is row-major (ny rows of nx);
// pixel (i, j) covers [origin.x + i*pitch, origin.x + (i+1)*pitch) x
// [origin.y + j*pitch, origin.y + (j+1)*pitch). Opaque outside the grid.
struct Raster {
    double pitch;
    std::size_t nx;
    std::size_t ny;
    std::vector<std::complex<double>> values;
    Vec2 origin;

    // Grid centred on (0, 0).
    static Raster centred(double pitch, std::size_t nx, std::size_t ny,
                          std::vector<std::complex<double>> values);

    std::complex<double> at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
    bool operator==(const Raster&) const = default;
};

using SampleTransmittance = std::variant<Delta, TwoPoint, Slit, Grating, Raster>;

void validate(const SampleTransmittance& s);

// Point positions of the ideal-point kinds (Delta, TwoPoint); empty otherwise.
std::vector<Vec2> point_positions(const SampleTransmittance& s);

bool is_point_sample(const SampleTransmittance& s);

// Transmitting cells of an extended sample clipped to the axis-aligned box
// [lo, hi]. Opaque pixels are omitted.
std::vector<Cell> support_cells(const SampleTransmittance& s, Vec2 lo, Vec2 hi);

// Same cells with t replaced by |t|^2, for incoherent image formation.
std::vector<Cell> intensity_cells(const SampleTransmittance& s, Vec2 lo, Vec2 hi);

}  // namespace twinfocal
