#pragma once

#include <functional>

namespace twinfocal {

// n_o(omega) and n_e(omega, psi); omega in rad/s, psi in rad.
using OrdinaryIndex = std::function<double(double omega)>;
using ExtraordinaryIndex = std::function<double(double omega, double psi)>;

// Thin nonlinear crystal. Index functions are user supplied; no material
// data ships with the library.
struct DispersionModel {
    OrdinaryIndex n_o;
    ExtraordinaryIndex n_e;
    double psi = 0.0;      // propagation axis to optic axis
    double theta_e = 0.0;  // idler emission angle from the optic axis
    double theta_o = 0.0;  // signal emission angle; metadata only
    double L = 0.0;        // crystal length, m

    void validate() const;
};

// Carrier-frequency constants of the thin-crystal expansion.
struct CrystalConstants {
    double K_o;       // rad/m
    double K_e;
    double inv_u_o;   // s/m
    double inv_u_e;
    double N_e;       // (1/n_e) dn_e/dpsi
    double psi;
    double theta_e;
    double L;

    // Inverse group velocity difference 1/u_o - 1/u_e.
    double D() const { return inv_u_o - inv_u_e; }
    // Length of the coincidence window D L (s); <= 0 means the window is empty.
    double window() const { return D() * L; }
};

// (omega / c) n(omega).
double wavenumber_K(const OrdinaryIndex& n, double omega);

// d/domega [(omega / c) n(omega)] by central differences with relative step
// 1e-6 and one Richardson pass.
double inv_group_velocity(const OrdinaryIndex& n, double omega);

// (1/n_e) dn_e/dpsi by central differences in psi (step 1e-6 rad) with one
// Richardson pass.
double walkoff_Ne(const ExtraordinaryIndex& n_e, double omega, double psi);

// Evaluate the expansion at the signal/idler carriers omega_o, omega_e.
CrystalConstants crystal_constants(const DispersionModel& disp, double omega_o, double omega_e);

enum class Branch { Ordinary, Extraordinary };

// Thin-crystal longitudinal wavenumber at detuning nu (rad/s) and transverse
// wavenumber k_perp (rad/m):
//   ordinary:      K_o + nu/u_o - k^2/(2 K_o)
//   extraordinary: K_e + nu/u_e - N_e k cos(theta_e) + k^2/(2 K_e) (N_e cot(psi) - 1)
double longitudinal_k(Branch branch, const CrystalConstants& c, double nu, double k_perp);

// Coincidence window: 1 iff 0 < T12 < D L, else 0.
double gate(double t12, const CrystalConstants& c);
double gate(double t12, const DispersionModel& disp, double omega_o, double omega_e);

}  // namespace twinfocal
