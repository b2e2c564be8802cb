#include "fanosense/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fanosense/analytic.hpp"
#include "fanosense/errors.hpp"
#include "fanosense/lindblad.hpp"
#include "fanosense/photodetection.hpp"
#include "fanosense/units.hpp"

namespace fanosense::validation {

namespace {

using lindblad::Matrix;

Check bound(std::string name, double measured, double tolerance, std::string detail = {}) {
    const bool ok = std::isfinite(measured) && measured <= tolerance;
    return {std::move(name), measured, tolerance, ok, std::move(detail)};
}

std::string at(double lambda) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "lambda=%.4f nm", lambda);
    return buf;
}

}  // namespace

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double coherent_state_fidelity(const ModelConfig& cfg, double lambda, int fock_dim) {
    auto op = operating_point(cfg, lambda);
    op.plasmon.g = 0.0;
    op.drive.Omega_ex = 0.0;
    const lindblad::HilbertSpace space{fock_dim};
    // The dot is decoupled here; any decay pins its state without touching the plasmon marginal.
    const lindblad::Liouvillian L(lindblad::build_hamiltonian(op.drive, op.plasmon, space),
                                  {op.plasmon.gamma_pl, std::max(op.drive.gamma_ex_meV(), op.plasmon.gamma_pl)}, space);
    const Matrix rho = lindblad::steady_state(L);

    // H = Delta a^dag a - Omega (a + a^dag) with damping gamma_pl gives alpha = i Omega / (i Delta + gamma/2).
    const std::complex<double> i{0.0, 1.0};
    const auto alpha = i * op.drive.Omega_pl / (i * op.drive.delta_pl(op.plasmon) + op.plasmon.gamma_pl / 2.0);
    Eigen::VectorXcd psi(fock_dim);
    std::complex<double> term = std::exp(-std::norm(alpha) / 2.0);
    for (int k = 0; k < fock_dim; ++k) {
        psi(k) = term;
        term *= alpha / std::sqrt(static_cast<double>(k + 1));
    }
    Matrix rho_pl = Matrix::Zero(fock_dim, fock_dim);
    for (int m = 0; m < fock_dim; ++m)
        for (int n = 0; n < fock_dim; ++n) rho_pl(m, n) = rho(2 * m, 2 * n) + rho(2 * m + 1, 2 * n + 1);
    return (psi.adjoint() * rho_pl * psi).value().real();
}

Report run(const ModelConfig& cfg, const Options& options) {
    Report report;
    auto& checks = report.checks;
    const lindblad::HilbertSpace space{options.solver.fock_dim};

    report.lambda_pl = derived_plasmon(cfg).lambda_pl;
    const auto fano = sensing::fano_features(cfg);
    report.lambda_dip = fano.dip;
    report.lambda_peak = fano.peak;
    const std::vector<double> probes{report.lambda_pl, report.lambda_dip, report.lambda_peak};

    double trace = 0.0, herm = 0.0, neg = 0.0, residual = 0.0, generator = 0.0;
    double tail = 0.0;
    std::vector<std::pair<Matrix, lindblad::Liouvillian>> states;
    for (const double lambda : probes) {
        const auto op = operating_point(cfg, lambda);
        const lindblad::Liouvillian L(lindblad::build_hamiltonian(op.drive, op.plasmon, space),
                                      {op.plasmon.gamma_pl, op.drive.gamma_ex_meV()}, space);
        lindblad::SteadyStateDiagnostics d;
        const Matrix rho = lindblad::steady_state(L, &d, std::numeric_limits<double>::infinity());
        trace = std::max(trace, d.trace_error);
        herm = std::max(herm, d.hermiticity_error);
        neg = std::max(neg, -d.min_eigenvalue);
        residual = std::max(residual, d.residual);
        tail = std::max(tail, d.top_fock_population);
        const Eigen::RowVectorXcd left = lindblad::vec(lindblad::identity(space)).transpose();
        generator = std::max(generator, (left * L.matrix()).norm() / L.matrix().norm());
        states.emplace_back(rho, L);
    }
    checks.push_back(bound("steady_state.trace", trace, 1e-12));
    checks.push_back(bound("steady_state.hermiticity", herm, 1e-12));
    checks.push_back(bound("steady_state.positivity", neg, 1e-10, "max negative eigenvalue"));
    checks.push_back(bound("steady_state.residual", residual, options.solver.residual_tol));
    checks.push_back(bound("liouvillian.trace_preservation", generator, 1e-12));
    checks.push_back(bound("fock.top_population", tail, 1e-6));

    checks.push_back(bound("coherent_state.infidelity",
                           1.0 - coherent_state_fidelity(cfg, report.lambda_pl, options.solver.fock_dim), 1e-6,
                           at(report.lambda_pl)));

    // Cross-engine agreement on an even grid from the LSPR to the Fano peak.
    const int n = std::max(2, options.grid_points);
    std::vector<double> grid(n);
    for (int k = 0; k < n; ++k)
        grid[k] = report.lambda_pl + (report.lambda_peak - report.lambda_pl) * k / (n - 1);
    std::vector<sensing::PointResult> ana(n), num(n);
    sensing::parallel_for(static_cast<std::size_t>(n), options.jobs, [&](std::size_t k) {
        ana[k] = sensing::evaluate_point(cfg, grid[k], cfg.environment.n, sensing::Engine::analytic, options.solver);
        num[k] = sensing::evaluate_point(cfg, grid[k], cfg.environment.n, sensing::Engine::lindblad, options.solver);
    });
    double dn = 0.0, dg = 0.0;
    double worst_n = grid[0], worst_g = grid[0];
    std::string failures;
    for (int k = 0; k < n; ++k) {
        if (!ana[k].ok() || !num[k].ok()) {
            failures += at(grid[k]) + ": " + (ana[k].ok() ? num[k].error : ana[k].error) + "; ";
            dn = dg = std::numeric_limits<double>::infinity();
            continue;
        }
        const double en = std::abs(ana[k].n_photon - num[k].n_photon) / std::abs(num[k].n_photon);
        const double eg = std::abs(ana[k].g2 - num[k].g2) / std::abs(num[k].g2);
        if (en > dn) dn = en, worst_n = grid[k];
        if (eg > dg) dg = eg, worst_g = grid[k];
    }
    checks.push_back(bound("engines.n_photon", dn, 0.01, failures.empty() ? "worst at " + at(worst_n) : failures));
    checks.push_back(bound("engines.g2", dg, 0.03, failures.empty() ? "worst at " + at(worst_g) : failures));

    // Truncation convergence at the LSPR and at the Fano peak.
    for (const double lambda : {report.lambda_pl, report.lambda_peak}) {
        double worst = 0.0;
        std::string detail = at(lambda);
        try {
            const auto conv = lindblad::convergence_check(cfg, lambda, options.convergence_dims, options.convergence_tol);
            for (const auto& e : conv.entries) worst = std::max({worst, e.rel_change_n, e.rel_change_g2});
            if (!std::isfinite(worst)) worst = std::numeric_limits<double>::infinity();
        } catch (const NumericalError& e) {
            worst = std::numeric_limits<double>::infinity();
            detail += std::string(": ") + e.what();
        }
        checks.push_back(bound(lambda == report.lambda_pl ? "fock.convergence_lspr" : "fock.convergence_fano", worst,
                               options.convergence_tol, detail));
    }

    // Poissonian light has shot-noise fluctuations exactly.
    {
        const auto& lspr = num.front();
        double err = std::numeric_limits<double>::infinity();
        if (lspr.ok()) {
            const double m = lspr.stats.m_mean;
            err = std::abs(photodetection::noise_m(m, 1.0) - std::sqrt(m)) / std::sqrt(m);
        }
        checks.push_back(bound("shot_noise.identity", err, 1e-15, at(report.lambda_pl)));
        double dev = std::numeric_limits<double>::infinity();
        if (lspr.ok()) dev = std::abs(lspr.stats.delta_m / std::sqrt(lspr.stats.m_mean) - 1.0);
        checks.push_back(bound("shot_noise.lspr", dev, 1e-3, at(report.lambda_pl)));
    }

    // Correlations decay to 1 at long delay.
    {
        double worst = 0.0;
        for (std::size_t k = 0; k < states.size(); ++k) {
            const auto op = operating_point(cfg, probes[k]);
            const Matrix b = lindblad::emission_operator(op.plasmon, op.drive, space, cfg.conventions.emission);
            const std::vector<double> tau{options.long_delay};
            try {
                const auto g = lindblad::correlation_tau(states[k].second, states[k].first, 2, tau, b);
                worst = std::max(worst, std::abs(g[0] - 1.0));
            } catch (const NumericalError&) {
                worst = std::numeric_limits<double>::infinity();
            }
        }
        checks.push_back(bound("g2_tau.long_delay", worst, 0.02, "tau=" + std::to_string(static_cast<int>(options.long_delay)) + " ps"));
    }
    return report;
}

}  // namespace fanosense::validation
