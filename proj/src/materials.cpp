#include "fanosense/materials.hpp"

#include <cmath>

#include "fanosense/errors.hpp"
#include "fanosense/units.hpp"

namespace fanosense::materials {

namespace {

void require(bool ok, const char* path, const char* what) {
    if (!ok) throw ConfigError(path, what);
}

double cube(double x) { return x * x * x; }

}  // namespace

void DrudeMetal::validate() const {
    require(std::isfinite(eps_inf) && eps_inf >= 1.0, "metal.n_inf", "eps_inf must be >= 1");
    require(std::isfinite(omega_p) && omega_p > 0.0, "metal.omega_p", "must be > 0");
    require(std::isfinite(gamma_p) && gamma_p >= 0.0, "metal.gamma_p", "must be >= 0");
    require(gamma_p < omega_p, "metal.gamma_p", "must be below omega_p");
}

void Environment::validate() const {
    require(std::isfinite(n) && n >= 1.0, "environment.n", "must be >= 1");
    require(std::isfinite(n_s) && n_s >= 1.0, "environment.n_s", "must be >= 1");
    require(std::isfinite(n_d) && n_d >= 1.0, "environment.n_d", "must be >= 1");
    require(std::isfinite(t) && t > 0.0, "environment.t", "must be > 0");
}

void Geometry::validate() const {
    require(std::isfinite(r) && r > 0.0, "geometry.r", "must be > 0");
    require(std::isfinite(r_c) && r_c > 0.0, "geometry.r_c", "must be > 0");
    require(std::isfinite(t_s) && t_s >= 0.0, "geometry.t_s", "must be >= 0");
    require(std::isfinite(l) && l > 0.0, "geometry.l", "must be > 0");
    require(s_alpha == 2 || s_alpha == -1, "geometry.s_alpha", "must be 2 or -1");
    require(s_beta == 1 || s_beta == 2, "geometry.s_beta", "must be 1 or 2");
}

std::complex<double> drude_permittivity(const DrudeMetal& metal, double omega) {
    if (!(omega > 0.0)) throw DomainError("drude_permittivity: omega must be positive");
    const double wp2 = metal.omega_p * metal.omega_p;
    const double denom = omega * omega + metal.gamma_p * metal.gamma_p;
    return {metal.eps_inf - wp2 / denom, wp2 * metal.gamma_p / (omega * denom)};
}

SubstrateFactor substrate_geometric_factor(const Environment& env, const Geometry& geom) {
    const double es = env.eps_s();
    const double eb = env.eps_b();
    if (es + eb == 0.0) throw DomainError("substrate_geometric_factor: eps_s + eps_b = 0");
    SubstrateFactor out;
    out.reflectance = (es - eb) / (es + eb);
    const double R = out.reflectance;
    const double image = 1.0 - (1.0 - R * R) / cube(1.0 + env.t / geom.r);
    out.L = (1.0 - geom.s_beta * (R / 8.0) * image) / 3.0;
    out.f = (1.0 - out.L) / out.L;
    return out;
}

double lspr_energy(const DrudeMetal& metal, double f, double eps_b) {
    const double w2 = metal.omega_p * metal.omega_p / (metal.eps_inf + f * eps_b) - metal.gamma_p * metal.gamma_p;
    if (!(w2 > 0.0)) throw NoResonanceError("no plasmon resonance: Froehlich root is imaginary");
    return std::sqrt(w2);
}

LorentzianParams lorentzian_parameters(const DrudeMetal& metal, double f, double eps_b, double omega_pl) {
    if (!(omega_pl > 0.0)) throw DomainError("lorentzian_parameters: omega_pl must be positive");
    const double ratio = metal.omega_p / (metal.eps_inf + f * eps_b);
    const double damping = metal.gamma_p / omega_pl;
    return {ratio * ratio / (2.0 * omega_pl), metal.gamma_p * (1.0 + damping * damping)};
}

double radiative_rate(double f, double eta, double n, double omega_pl, double r, Wavenumber convention) {
    if (!(f > 0.0 && eta > 0.0 && n > 0.0 && omega_pl > 0.0 && r > 0.0))
        throw DomainError("radiative_rate: inputs must be positive");
    double omega = omega_pl * units::meV / units::hbar;
    if (convention == Wavenumber::cyclic) omega /= 2.0 * units::pi;
    const double kr = omega * n / units::c * r * units::nm;
    return 4.0 / 9.0 * (f + 1.0) * (f + 1.0) * eta * n * n * cube(kr);
}

double mnp_dipole_moment(double f, double eps_b, double eta, double r) {
    if (!(f > 0.0 && eps_b > 0.0 && eta > 0.0 && r > 0.0))
        throw DomainError("mnp_dipole_moment: inputs must be positive");
    const double eta_si = eta * units::meV / units::hbar;
    const double r_si = r * units::nm;
    const double chi = (f + 1.0) / 3.0 * eps_b * std::sqrt(12.0 * units::pi * units::eps0 * units::hbar * eta_si * cube(r_si));
    return chi / units::debye;
}

double coupling_rate(double f, double mu, const Geometry& geom, const Environment& env, double eta) {
    if (!(geom.d() > geom.r + geom.a())) throw DomainError("coupling_rate: QD overlaps the nanoparticle");
    const double eta_si = eta * units::meV / units::hbar;
    const double r_si = geom.r * units::nm;
    const double d_si = geom.d() * units::nm;
    const double dipole = mu * units::debye * geom.s_alpha / cube(d_si);
    const double g = (f + 1.0) / 3.0 * dipole * (env.eps_b() / env.eps_b_eff())
                     * std::sqrt(3.0 * eta_si * cube(r_si) / (4.0 * units::pi * units::eps0 * units::hbar));
    return g * units::hbar / units::meV;
}

Polarizability quasistatic_polarizability(const DrudeMetal& metal, const Environment& env, const Geometry& geom,
                                          double omega) {
    const auto sub = substrate_geometric_factor(env, geom);
    const double eb = env.eps_b();
    const auto eps = drude_permittivity(metal, omega);
    const auto denom = sub.L * eps + (1.0 - sub.L) * eb;
    if (std::abs(denom) == 0.0) throw PoleError("quasistatic_polarizability: singular denominator");
    const double volume = 4.0 * units::pi * cube(geom.r) / 3.0;

    Polarizability out;
    out.exact = volume * (eps - eb) / denom;

    const double omega_pl = lspr_energy(metal, sub.f, eb);
    const auto lor = lorentzian_parameters(metal, sub.f, eb, omega_pl);
    const std::complex<double> i{0.0, 1.0};
    const double strength = 4.0 / 3.0 * units::pi * eb * (sub.f + 1.0) * (sub.f + 1.0) * cube(geom.r) * lor.eta;
    out.lorentzian = i * strength / (i * (omega_pl - omega) + lor.gamma_nr / 2.0);
    return out;
}

DerivedPlasmon derive_plasmon(const DrudeMetal& metal, const Environment& env, const Geometry& geom, double mu,
                              Wavenumber convention) {
    DerivedPlasmon p;
    const auto sub = substrate_geometric_factor(env, geom);
    p.L_factor = sub.L;
    p.f = sub.f;
    p.reflectance = sub.reflectance;
    const double eb = env.eps_b();
    p.omega_pl = lspr_energy(metal, p.f, eb);
    p.lambda_pl = units::wavelength_nm(p.omega_pl);
    const auto lor = lorentzian_parameters(metal, p.f, eb, p.omega_pl);
    p.eta = lor.eta;
    p.gamma_nr = lor.gamma_nr;
    p.gamma_r = radiative_rate(p.f, p.eta, env.n, p.omega_pl, geom.r, convention);
    p.gamma_pl = p.gamma_nr + p.gamma_r;
    p.chi = mnp_dipole_moment(p.f, eb, p.eta, geom.r);
    p.g = coupling_rate(p.f, mu, geom, env, p.eta);
    return p;
}

double calibrate_plasma_energy(const DrudeMetal& metal, const Environment& env, const Geometry& geom,
                               double target_lambda) {
    if (!(target_lambda > 0.0)) throw ConfigError("metal.lspr_target", "must be > 0");
    const auto sub = substrate_geometric_factor(env, geom);
    const double w = units::energy_meV(target_lambda);
    return std::sqrt((w * w + metal.gamma_p * metal.gamma_p) * (metal.eps_inf + sub.f * env.eps_b()));
}

double DriveParams::lambda() const { return units::wavelength_nm(omega); }

double field_amplitude(double I0, double n, int index_power) {
    if (!(I0 >= 0.0)) throw DomainError("field_amplitude: intensity must be >= 0");
    const double intensity = I0 * 1e4;  // W/m^2
    return std::sqrt(2.0 * intensity / (units::c * units::eps0 * std::pow(n, index_power)));
}

DriveParams drive_params(const DerivedPlasmon& plasmon, const Environment& env, double I0, double omega, double mu,
                         double omega_ex, double gamma_ex, int index_power) {
    if (!(omega > 0.0)) throw DomainError("drive_params: omega must be positive");
    DriveParams d;
    d.I0 = I0;
    d.omega = omega;
    d.mu = mu;
    d.omega_ex = omega_ex;
    d.gamma_ex = gamma_ex;
    d.E0 = field_amplitude(I0, env.n, index_power);
    // E0 chi / (2 hbar) as an energy: E0 chi / 2.
    d.Omega_pl = d.E0 * plasmon.chi * units::debye / 2.0 / units::meV;
    d.Omega_ex = d.E0 * mu * units::debye / 2.0 / units::meV;
    return d;
}

}  // namespace fanosense::materials
