#include "fanosense/model.hpp"

#include <cmath>

#include "fanosense/errors.hpp"
#include "fanosense/units.hpp"

namespace fanosense {

double QuantumDot::exciton_energy() const {
    if (lambda_ex) return units::energy_meV(*lambda_ex);
    if (omega_ex) return *omega_ex;
    throw ConfigError("qd.omega_ex", "exciton energy or wavelength required");
}

void ModelConfig::validate() const {
    metal.validate();
    environment.validate();
    geometry.validate();
    detector.validate();
    if (environment.t / geometry.r <= 100.0)
        throw ConfigError("environment.t", "substrate must be thick compared to the particle (t/r > 100)");
    if (!(qd.mu > 0.0) || !std::isfinite(qd.mu)) throw ConfigError("qd.mu", "must be > 0");
    if (!(qd.gamma_ex >= 0.0) || !std::isfinite(qd.gamma_ex)) throw ConfigError("qd.gamma_ex", "must be >= 0");
    if (qd.lambda_ex && !(*qd.lambda_ex > 0.0)) throw ConfigError("qd.lambda_ex", "must be > 0");
    if (qd.omega_ex && !(*qd.omega_ex > 0.0)) throw ConfigError("qd.omega_ex", "must be > 0");
    if (!qd.lambda_ex && !qd.omega_ex) throw ConfigError("qd.omega_ex", "exciton energy or wavelength required");
    if (!(I0 >= 0.0) || !std::isfinite(I0)) throw ConfigError("drive.I0", "must be >= 0");
    if (lspr_target && !(*lspr_target > 0.0)) throw ConfigError("metal.lspr_target", "must be > 0");
    if (conventions.field_index_power < 0 || conventions.field_index_power > 3)
        throw ConfigError("conventions.field_index_power", "must be in 0..3");
}

materials::DrudeMetal ModelConfig::effective_metal() const {
    auto m = metal;
    if (lspr_target) m.omega_p = materials::calibrate_plasma_energy(metal, environment, geometry, *lspr_target);
    return m;
}

materials::DerivedPlasmon derived_plasmon(const ModelConfig& cfg, std::optional<double> n) {
    auto env = cfg.environment;
    if (n) env.n = *n;
    return materials::derive_plasmon(cfg.effective_metal(), env, cfg.geometry, cfg.qd.mu, cfg.conventions.wavenumber);
}

OperatingPoint operating_point(const ModelConfig& cfg, double lambda, std::optional<double> n) {
    if (!(lambda > 0.0)) throw DomainError("operating_point: wavelength must be positive");
    auto env = cfg.environment;
    if (n) env.n = *n;
    OperatingPoint op;
    op.plasmon = materials::derive_plasmon(cfg.effective_metal(), env, cfg.geometry, cfg.qd.mu,
                                           cfg.conventions.wavenumber);
    op.drive = materials::drive_params(op.plasmon, env, cfg.I0, units::energy_meV(lambda), cfg.qd.mu,
                                       cfg.qd.exciton_energy(), cfg.qd.gamma_ex, cfg.conventions.field_index_power);
    return op;
}

}  // namespace fanosense
