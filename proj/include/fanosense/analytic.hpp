#pragma once

#include <complex>

#include "fanosense/materials.hpp"
#include "fanosense/model.hpp"

namespace fanosense::analytic {

using complex = std::complex<double>;

// QD dressed by the plasmon. Energies in meV.
struct ModifiedEmitter {
    double F = 0.0;       // plasmon-induced term
    double Gamma = 0.0;   // enhanced decay
    double Delta = 0.0;   // shifted exciton detuning
    complex Omega;        // modified Rabi frequency
    double P_sat = 0.0;   // saturation parameter
};

struct QdState {
    complex sigma;
    double population = 0.0;
    double P_sat = 0.0;
};

struct PlasmonState {
    complex a;
    complex a2, a3, a4;
    double n_photon = 0.0;
    double nn2 = 0.0, nn3 = 0.0, nn4 = 0.0;  // <(a^dag)^k a^k>
};

struct ZeroDelay {
    double g2 = 1.0, g3 = 1.0, g4 = 1.0;
};

struct SteadyState {
    complex sigma;
    double population = 0.0;
    complex a;
    complex a2, a3, a4;
    double n_photon = 0.0;
    double nn2 = 0.0, nn3 = 0.0, nn4 = 0.0;
    double g2_0 = 1.0, g3_0 = 1.0, g4_0 = 1.0;
    // Set when the flux denominator underflows; g values are then undefined (NaN).
    bool dark = false;

    double sigma_z() const { return 2.0 * population - 1.0; }
};

ModifiedEmitter modified_emitter(const materials::DerivedPlasmon& plasmon, const materials::DriveParams& drive,
                                 SaturationForm form = SaturationForm::bloch);

double saturation_parameter(complex Omega, double Gamma, double Delta, SaturationForm form = SaturationForm::bloch);

QdState qd_steady_state(const ModifiedEmitter& em, SaturationForm form = SaturationForm::bloch);

PlasmonState plasmon_steady_state(const materials::DriveParams& drive, const materials::DerivedPlasmon& plasmon,
                                  complex sigma, double population);

// Throws DegenerateFluxError at exact dark points.
ZeroDelay correlations_zero_delay(const materials::DriveParams& drive, double g, complex sigma, double population);

SteadyState solve(const materials::DerivedPlasmon& plasmon, const materials::DriveParams& drive,
                  SaturationForm form = SaturationForm::bloch);

inline SteadyState solve(const OperatingPoint& op, SaturationForm form = SaturationForm::bloch) {
    return solve(op.plasmon, op.drive, form);
}

}  // namespace fanosense::analytic
