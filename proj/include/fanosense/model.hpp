#pragma once

#include <optional>

#include "fanosense/materials.hpp"
#include "fanosense/photodetection.hpp"

namespace fanosense {

// bloch: P = 4|Omega/Gamma|^2 / (1 + 4 (Delta/Gamma)^2), the two-level Bloch steady state.
// printed: P = 2|Omega/Gamma|^2 / (1 + 2 (Delta/Gamma)^2).
enum class SaturationForm { bloch, printed };

// Scattering operator: sqrt(gamma_r) a, or with the QD term sqrt(gamma_ex) sigma added.
enum class Emission { plasmon, full };

struct Conventions {
    materials::Wavenumber wavenumber = materials::Wavenumber::cyclic;
    int field_index_power = 2;
    SaturationForm saturation = SaturationForm::bloch;
    Emission emission = Emission::plasmon;
};

struct QuantumDot {
    double mu = 72.0;                         // Debye
    std::optional<double> omega_ex;           // meV
    std::optional<double> lambda_ex = 577.0;  // nm, wins over omega_ex when both are set
    double gamma_ex = 118.0;                  // neV

    double exciton_energy() const;
};

struct ModelConfig {
    materials::DrudeMetal metal;
    std::optional<double> lspr_target;  // nm; recalibrates omega_p at environment.n
    materials::Environment environment;
    materials::Geometry geometry;
    QuantumDot qd;
    double I0 = 33.6;  // W/cm^2
    photodetection::Detector detector;
    Conventions conventions;

    void validate() const;
    // Metal after the optional LSPR calibration.
    materials::DrudeMetal effective_metal() const;
};

struct OperatingPoint {
    materials::DerivedPlasmon plasmon;
    materials::DriveParams drive;
};

materials::DerivedPlasmon derived_plasmon(const ModelConfig& cfg, std::optional<double> n = std::nullopt);

// Everything needed at one drive wavelength (nm) and background index n.
OperatingPoint operating_point(const ModelConfig& cfg, double lambda, std::optional<double> n = std::nullopt);

}  // namespace fanosense
