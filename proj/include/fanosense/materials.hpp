#pragma once

#include <complex>

namespace fanosense::materials {

// Drude description of the metal. Energies in meV.
struct DrudeMetal {
    double eps_inf = 3.16 * 3.16;
    double omega_p = 8579.0;
    double gamma_p = 71.0;

    void validate() const;
};

// Background medium, substrate and QD indices. t in nm.
struct Environment {
    double n = 1.3330;
    double n_s = 1.5;
    double n_d = 2.45;
    double t = 0.17e6;

    double eps_b() const { return n * n; }
    double eps_s() const { return n_s * n_s; }
    double eps_d() const { return n_d * n_d; }
    // Effective dielectric constant seen by the QD dipole.
    double eps_b_eff() const { return (2.0 * eps_b() + eps_d()) / 3.0; }

    void validate() const;
};

// Lengths in nm. s_alpha is 2 for longitudinal and -1 for transverse coupling.
struct Geometry {
    double r = 25.0;
    double r_c = 0.8;
    double t_s = 0.7;
    double l = 3.5;
    int s_alpha = 2;
    int s_beta = 2;

    double a() const { return r_c + t_s; }
    double d() const { return r + l + a(); }
    // The point-dipole coupling is only trusted for l >= 3 nm.
    bool gap_below_dipole_limit() const { return l < 3.0; }

    void validate() const;
};

// How the wavenumber k = omega n / c inside the radiative rate reads an energy.
// angular: omega = E / hbar. cyclic: omega = E / h (the table energy taken as a cyclic frequency).
enum class Wavenumber { angular, cyclic };

struct SubstrateFactor {
    double L = 1.0 / 3.0;
    double f = 2.0;
    double reflectance = 0.0;
};

struct LorentzianParams {
    double eta = 0.0;       // meV
    double gamma_nr = 0.0;  // meV
};

struct DerivedPlasmon {
    double L_factor = 0.0;
    double f = 0.0;
    double reflectance = 0.0;
    double omega_pl = 0.0;   // meV
    double lambda_pl = 0.0;  // nm
    double eta = 0.0;        // meV
    double gamma_nr = 0.0;   // meV
    double gamma_r = 0.0;    // meV
    double gamma_pl = 0.0;   // meV
    double chi = 0.0;        // Debye
    double g = 0.0;          // meV
};

// Both forms in nm^3.
struct Polarizability {
    std::complex<double> exact;
    std::complex<double> lorentzian;
};

std::complex<double> drude_permittivity(const DrudeMetal& metal, double omega);

SubstrateFactor substrate_geometric_factor(const Environment& env, const Geometry& geom);

double lspr_energy(const DrudeMetal& metal, double f, double eps_b);

LorentzianParams lorentzian_parameters(const DrudeMetal& metal, double f, double eps_b, double omega_pl);

double radiative_rate(double f, double eta, double n, double omega_pl, double r,
                      Wavenumber convention = Wavenumber::cyclic);

double mnp_dipole_moment(double f, double eps_b, double eta, double r);

double coupling_rate(double f, double mu, const Geometry& geom, const Environment& env, double eta);

Polarizability quasistatic_polarizability(const DrudeMetal& metal, const Environment& env,
                                          const Geometry& geom, double omega);

DerivedPlasmon derive_plasmon(const DrudeMetal& metal, const Environment& env, const Geometry& geom,
                              double mu, Wavenumber convention = Wavenumber::cyclic);

// Plasma energy that places the LSPR at target_lambda (nm) for the given environment.
double calibrate_plasma_energy(const DrudeMetal& metal, const Environment& env, const Geometry& geom,
                               double target_lambda);

// Drive-side quantities. gamma_ex is kept in neV as tabulated.
struct DriveParams {
    double I0 = 33.6;         // W/cm^2
    double omega = 0.0;       // meV
    double E0 = 0.0;          // V/m
    double Omega_pl = 0.0;    // meV
    double Omega_ex = 0.0;    // meV
    double mu = 72.0;         // Debye
    double omega_ex = 2149.0; // meV
    double gamma_ex = 118.0;  // neV

    double lambda() const;
    double delta_pl(const DerivedPlasmon& p) const { return p.omega_pl - omega; }
    double delta_ex() const { return omega_ex - omega; }
    double gamma_ex_meV() const { return gamma_ex * 1e-6; }
};

// E0 = sqrt(2 I0 / (c eps0 n^index_power)); index_power = 1 is the plain medium form.
double field_amplitude(double I0, double n, int index_power);

DriveParams drive_params(const DerivedPlasmon& plasmon, const Environment& env, double I0, double omega,
                         double mu, double omega_ex, double gamma_ex, int index_power = 2);

}  // namespace fanosense::materials
