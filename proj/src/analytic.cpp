#include "fanosense/analytic.hpp"

#include <cmath>
#include <limits>

#include "fanosense/errors.hpp"

namespace fanosense::analytic {

namespace {

constexpr complex I{0.0, 1.0};
constexpr double kDarkFloor = 1e-300;

// Flux numerator Omega_pl^2 + 2 Omega_pl g Re<sigma> + g^2 <sigma^dag sigma>.
double flux_moment(double omega_pl, double g, complex sigma, double population) {
    return omega_pl * omega_pl + 2.0 * omega_pl * g * sigma.real() + g * g * population;
}

// Numerator of <(a^dag)^k a^k> up to the Lorentzian denominator^k:
// Omega^2k + 2k Omega^(2k-1) g Re<sigma> + k^2 Omega^(2k-2) g^2 <sigma^dag sigma>.
double moment_numerator(int k, double omega_pl, double g, complex sigma, double population) {
    const double top = std::pow(omega_pl, 2 * k - 2);
    return top * (omega_pl * omega_pl + 2.0 * k * omega_pl * g * sigma.real() + k * k * g * g * population);
}

}  // namespace

double saturation_parameter(complex Omega, double Gamma, double Delta, SaturationForm form) {
    if (!(Gamma > 0.0)) throw DomainError("saturation_parameter: Gamma must be positive");
    const double k = form == SaturationForm::bloch ? 4.0 : 2.0;
    const double rabi = std::abs(Omega / Gamma);
    const double detuning = Delta / Gamma;
    return k * rabi * rabi / (1.0 + k * detuning * detuning);
}

ModifiedEmitter modified_emitter(const materials::DerivedPlasmon& plasmon, const materials::DriveParams& drive,
                                 SaturationForm form) {
    if (!(plasmon.gamma_pl > 0.0)) throw DomainError("modified_emitter: gamma_pl must be positive");
    const double dpl = drive.delta_pl(plasmon);
    const double lorentz = dpl * dpl + plasmon.gamma_pl * plasmon.gamma_pl / 4.0;
    ModifiedEmitter em;
    em.F = plasmon.g * plasmon.g / lorentz;
    em.Gamma = drive.gamma_ex_meV() + em.F * plasmon.gamma_pl;
    em.Delta = drive.delta_ex() - em.F * dpl;
    em.Omega = drive.Omega_ex * (1.0 + I * plasmon.g * plasmon.chi / (drive.mu * (I * dpl + plasmon.gamma_pl / 2.0)));
    if (em.Gamma > 0.0) em.P_sat = saturation_parameter(em.Omega, em.Gamma, em.Delta, form);
    return em;
}

QdState qd_steady_state(const ModifiedEmitter& em, SaturationForm form) {
    if (!(em.Gamma > 0.0)) throw DomainError("qd_steady_state: Gamma must be positive");
    QdState s;
    s.P_sat = saturation_parameter(em.Omega, em.Gamma, em.Delta, form);
    s.population = std::isinf(s.P_sat) ? 0.5 : s.P_sat / (1.0 + 2.0 * s.P_sat);
    s.sigma = I * em.Omega * (1.0 - 2.0 * s.population) / (I * em.Delta + em.Gamma / 2.0);
    return s;
}

PlasmonState plasmon_steady_state(const materials::DriveParams& drive, const materials::DerivedPlasmon& plasmon,
                                  complex sigma, double population) {
    if (!(plasmon.gamma_pl > 0.0)) throw DomainError("plasmon_steady_state: gamma_pl must be positive");
    const double dpl = drive.delta_pl(plasmon);
    const double lorentz = dpl * dpl + plasmon.gamma_pl * plasmon.gamma_pl / 4.0;
    const double g = plasmon.g;
    PlasmonState s;
    s.a = I * (drive.Omega_pl + g * sigma) / (I * dpl + plasmon.gamma_pl / 2.0);
    s.a2 = s.a * s.a;
    s.a3 = s.a2 * s.a;
    s.a4 = s.a3 * s.a;
    s.n_photon = flux_moment(drive.Omega_pl, g, sigma, population) / lorentz;
    s.nn2 = moment_numerator(2, drive.Omega_pl, g, sigma, population) / std::pow(lorentz, 2);
    s.nn3 = moment_numerator(3, drive.Omega_pl, g, sigma, population) / std::pow(lorentz, 3);
    s.nn4 = moment_numerator(4, drive.Omega_pl, g, sigma, population) / std::pow(lorentz, 4);
    return s;
}

ZeroDelay correlations_zero_delay(const materials::DriveParams& drive, double g, complex sigma, double population) {
    const double base = flux_moment(drive.Omega_pl, g, sigma, population);
    if (!(std::abs(base) > kDarkFloor)) throw DegenerateFluxError("correlations_zero_delay: zero flux (dark point)");
    ZeroDelay z;
    z.g2 = moment_numerator(2, drive.Omega_pl, g, sigma, population) / std::pow(base, 2);
    z.g3 = moment_numerator(3, drive.Omega_pl, g, sigma, population) / std::pow(base, 3);
    z.g4 = moment_numerator(4, drive.Omega_pl, g, sigma, population) / std::pow(base, 4);
    return z;
}

SteadyState solve(const materials::DerivedPlasmon& plasmon, const materials::DriveParams& drive, SaturationForm form) {
    const auto em = modified_emitter(plasmon, drive, form);
    const auto qd = qd_steady_state(em, form);
    const auto pl = plasmon_steady_state(drive, plasmon, qd.sigma, qd.population);

    SteadyState s;
    s.sigma = qd.sigma;
    s.population = qd.population;
    s.a = pl.a;
    s.a2 = pl.a2;
    s.a3 = pl.a3;
    s.a4 = pl.a4;
    s.n_photon = pl.n_photon;
    s.nn2 = pl.nn2;
    s.nn3 = pl.nn3;
    s.nn4 = pl.nn4;
    try {
        const auto z = correlations_zero_delay(drive, plasmon.g, qd.sigma, qd.population);
        s.g2_0 = z.g2;
        s.g3_0 = z.g3;
        s.g4_0 = z.g4;
    } catch (const DegenerateFluxError&) {
        s.dark = true;
        s.g2_0 = s.g3_0 = s.g4_0 = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

}  // namespace fanosense::analytic
