#include "twinfocal/dispersion.hpp"
#include "twinfocal/errors.hpp"
#include "twinfocal/optics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace twinfocal;

namespace {

constexpr double c = 299792458.0;
constexpr double pi = std::numbers::pi;

DispersionModel constant_crystal(double no, double ne, double L)
{
    DispersionModel d;
    d.n_o = [no](double) { return no; };
    d.n_e = [ne](double, double) { return ne; };
    d.psi = pi / 4.0;
    d.L = L;
    return d;
}

}  // namespace

TEST_CASE("wavenumber_K")
{
    const double omega = 2.0 * pi * c / 702e-9;
    CHECK(wavenumber_K([](double) { return 1.0; }, omega) == doctest::Approx(2.0 * pi / 702e-9).epsilon(1e-14));
    CHECK(wavenumber_K([](double) { return 1.0; }, omega) == doctest::Approx(8.951e6).epsilon(1e-4));
    CHECK(wavenumber_K([](double) { return 1.6; }, omega) == doctest::Approx(1.432e7).epsilon(1e-3));
    const double w = 2.684e15;
    CHECK(wavenumber_K([](double x) { return 1.5 + 1e-17 * x; }, w) ==
          doctest::Approx(w / c * 1.52684).epsilon(1e-14));
}

TEST_CASE("inv_group_velocity against analytic derivatives")
{
    const double omega = 2.684e15;
    CHECK(inv_group_velocity([](double) { return 1.5; }, omega) == doctest::Approx(1.5 / c).epsilon(1e-9));
    for (double alpha : {1e-17, -3e-18, 5e-17}) {
        const auto n = [alpha](double w) { return 1.5 + alpha * w; };
        CHECK(inv_group_velocity(n, omega) == doctest::Approx((1.5 + 2.0 * alpha * omega) / c).epsilon(1e-9));
    }
    // Quadratic model: d/dw [w (a + b w^2)] = a + 3 b w^2.
    const auto quad = [](double w) { return 1.6 + 2e-33 * w * w; };
    CHECK(inv_group_velocity(quad, omega) ==
          doctest::Approx((1.6 + 3.0 * 2e-33 * omega * omega) / c).epsilon(1e-9));
}

TEST_CASE("inverse group velocity difference of constant indices")
{
    const double omega = 2.0 * pi * c / 702e-9;
    const auto k = crystal_constants(constant_crystal(1.66, 1.55, 1e-3), omega, omega);
    CHECK(k.D() == doctest::Approx((1.66 - 1.55) / c).epsilon(1e-9));
    CHECK(k.D() == doctest::Approx(3.669e-10).epsilon(1e-3));
    CHECK(k.window() == doctest::Approx(3.669e-13).epsilon(1e-3));
}

TEST_CASE("walkoff_Ne")
{
    const double omega = 2.684e15;
    CHECK(walkoff_Ne([](double, double) { return 1.6; }, omega, 0.7) == 0.0);
    const auto ne = [](double, double psi) { return 1.5 + 0.1 * std::sin(psi); };
    const double psi = pi / 4.0;
    const double oracle = 0.1 * std::cos(psi) / (1.5 + 0.1 * std::sin(psi));
    CHECK(walkoff_Ne(ne, omega, psi) == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(walkoff_Ne(ne, omega, psi) == doctest::Approx(0.04501).epsilon(1e-3));
    const auto flipped = [](double, double p) { return 1.5 - 0.1 * std::sin(p); };
    const double oracle_flipped = -0.1 * std::cos(psi) / (1.5 - 0.1 * std::sin(psi));
    CHECK(walkoff_Ne(flipped, omega, psi) == doctest::Approx(oracle_flipped).epsilon(1e-9));
    CHECK(walkoff_Ne(flipped, omega, psi) < 0.0);
    CHECK_THROWS_AS(walkoff_Ne(ne, omega, 0.0), std::domain_error);
    CHECK_THROWS_AS(walkoff_Ne([](double, double) { return NAN; }, omega, psi), std::domain_error);
}

TEST_CASE("longitudinal_k reduces to the carrier")
{
    DispersionModel d = constant_crystal(1.66, 1.55, 1e-3);
    d.n_e = [](double, double psi) { return 1.5 + 0.1 * std::sin(psi); };
    d.theta_e = 3.0 * pi / 180.0;
    const double omega = 2.0 * pi * c / 702e-9;
    const CrystalConstants k = crystal_constants(d, omega, omega);
    CHECK(longitudinal_k(Branch::Ordinary, k, 0.0, 0.0) == k.K_o);
    CHECK(longitudinal_k(Branch::Extraordinary, k, 0.0, 0.0) == k.K_e);

    const double q = 1e5;
    CHECK(longitudinal_k(Branch::Ordinary, k, 0.0, q) == doctest::Approx(k.K_o - q * q / (2.0 * k.K_o)).epsilon(1e-15));

    // Term-by-term recomputation from independently derived constants.
    const double psi = pi / 4.0;
    const double ne = 1.5 + 0.1 * std::sin(psi);
    const double Ke = omega * ne / c;
    const double Ne = 0.1 * std::cos(psi) / ne;
    const double nu = 1e12;
    const double expected = Ke + nu * ne / c - Ne * q * std::cos(d.theta_e) +
                            q * q / (2.0 * Ke) * (Ne / std::tan(psi) - 1.0);
    CHECK(longitudinal_k(Branch::Extraordinary, k, nu, q) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(longitudinal_k(Branch::Extraordinary, k, nu, -q) == longitudinal_k(Branch::Extraordinary, k, nu, q));
    CHECK(longitudinal_k(Branch::Ordinary, k, nu, 0.0) == doctest::Approx(k.K_o + nu * 1.66 / c).epsilon(1e-14));
}

TEST_CASE("gate window")
{
    const double omega = 2.0 * pi * c / 702e-9;
    const DispersionModel d = constant_crystal(1.66, 1.55, 1e-3);
    const CrystalConstants k = crystal_constants(d, omega, omega);
    const double DL = (1.66 - 1.55) / c * 1e-3;
    CHECK(gate(0.5 * DL, k) == 1.0);
    CHECK(gate(-1e-15, k) == 0.0);
    CHECK(gate(0.0, k) == 0.0);
    CHECK(gate(0.5e-12, k) == 0.0);
    CHECK(gate(0.999 * DL, d, omega, omega) == 1.0);
    CHECK(gate(1.001 * DL, d, omega, omega) == 0.0);
    for (double t = -1e-12; t < 1e-12; t += 1.3e-14) {
        const double g = gate(t, k);
        CHECK((g == 0.0 || g == 1.0));
        CHECK(g * g == g);
    }

    // Reversed ordering: empty window.
    const CrystalConstants rev = crystal_constants(constant_crystal(1.55, 1.66, 1e-3), omega, omega);
    CHECK(rev.window() < 0.0);
    for (double t : {-1e-13, 1e-14, 1e-13})
        CHECK(gate(t, rev) == 0.0);
}

TEST_CASE("model validation")
{
    DispersionModel d = constant_crystal(1.66, 1.55, 1e-3);
    CHECK_NOTHROW(d.validate());
    d.L = 0.0;
    CHECK_THROWS_AS(d.validate(), ConfigError);
    d = constant_crystal(1.66, 1.55, 1e-3);
    d.psi = 2.0;
    CHECK_THROWS_AS(d.validate(), ConfigError);
    d = constant_crystal(1.66, 1.55, 1e-3);
    d.n_o = nullptr;
    CHECK_THROWS_AS(d.validate(), ConfigError);
    const double omega = 2.0 * pi * c / 702e-9;
    CHECK_THROWS(crystal_constants(constant_crystal(0.9, 1.55, 1e-3), omega, omega));
}
