#include "twinfocal/dispersion.hpp"

#include "twinfocal/errors.hpp"
#include "twinfocal/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace twinfocal {

namespace {

constexpr double kRelStep = 1e-6;
constexpr double kPsiStep = 1e-6;

double checked(double v, const char* who)
{
    if (!std::isfinite(v))
        throw std::domain_error(std::string(who) + ": index function returned a non-finite value");
    return v;
}

template <class F>
double richardson_central(F&& g, double x, double h)
{
    const double d_h = (g(x + h) - g(x - h)) / (2.0 * h);
    const double d_h2 = (g(x + 0.5 * h) - g(x - 0.5 * h)) / h;
    return (4.0 * d_h2 - d_h) / 3.0;
}

}  // namespace

void DispersionModel::validate() const
{
    if (!n_o || !n_e)
        throw ConfigError("dispersion: both n_o and n_e must be provided");
    if (!(psi > 0.0 && psi < std::numbers::pi / 2))
        throw ConfigError("dispersion.psi must lie strictly inside (0, pi/2)");
    if (!(L > 0.0))
        throw ConfigError("dispersion.L must be positive");
}

double wavenumber_K(const OrdinaryIndex& n, double omega)
{
    if (!(omega > 0.0))
        throw std::domain_error("wavenumber_K: omega must be positive");
    return omega * checked(n(omega), "wavenumber_K") / kSpeedOfLight;
}

double inv_group_velocity(const OrdinaryIndex& n, double omega)
{
    if (!(omega > 0.0))
        throw std::domain_error("inv_group_velocity: omega must be positive");
    auto k = [&](double w) { return w * checked(n(w), "inv_group_velocity") / kSpeedOfLight; };
    return richardson_central(k, omega, kRelStep * omega);
}

double walkoff_Ne(const ExtraordinaryIndex& n_e, double omega, double psi)
{
    if (!(psi - kPsiStep > 0.0 && psi + kPsiStep < std::numbers::pi / 2))
        throw std::domain_error("walkoff_Ne: psi must be interior to (0, pi/2)");
    auto n = [&](double p) { return checked(n_e(omega, p), "walkoff_Ne"); };
    const double dn = richardson_central(n, psi, kPsiStep);
    const double n0 = n(psi);
    if (!(n0 > 0.0))
        throw std::domain_error("walkoff_Ne: index must be positive");
    return dn / n0;
}

CrystalConstants crystal_constants(const DispersionModel& disp, double omega_o, double omega_e)
{
    disp.validate();
    const OrdinaryIndex n_e_at_psi = [&](double w) { return disp.n_e(w, disp.psi); };
    for (double n : {disp.n_o(omega_o), disp.n_e(omega_e, disp.psi)})
        if (!(n >= 1.0))
            throw ConfigError("dispersion: refractive index " + std::to_string(n) + " below 1 at the carrier");
    CrystalConstants c{};
    c.K_o = wavenumber_K(disp.n_o, omega_o);
    c.K_e = wavenumber_K(n_e_at_psi, omega_e);
    c.inv_u_o = inv_group_velocity(disp.n_o, omega_o);
    c.inv_u_e = inv_group_velocity(n_e_at_psi, omega_e);
    c.N_e = walkoff_Ne(disp.n_e, omega_e, disp.psi);
    c.psi = disp.psi;
    c.theta_e = disp.theta_e;
    c.L = disp.L;
    return c;
}

double longitudinal_k(Branch branch, const CrystalConstants& c, double nu, double k_perp)
{
    const double k_sq = k_perp * k_perp;
    if (branch == Branch::Ordinary)
        return c.K_o + nu * c.inv_u_o - k_sq / (2.0 * c.K_o);
    const double cot_psi = 1.0 / std::tan(c.psi);
    return c.K_e + nu * c.inv_u_e - c.N_e * std::fabs(k_perp) * std::cos(c.theta_e) +
           k_sq / (2.0 * c.K_e) * (c.N_e * cot_psi - 1.0);
}

double gate(double t12, const CrystalConstants& c)
{
    const double window = c.window();
    return (t12 > 0.0 && t12 < window) ? 1.0 : 0.0;
}

double gate(double t12, const DispersionModel& disp, double omega_o, double omega_e)
{
    return gate(t12, crystal_constants(disp, omega_o, omega_e));
}

}  // namespace twinfocal
