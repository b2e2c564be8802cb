#include <doctest.h>

#include <cmath>

#include "fanosense/analytic.hpp"
#include "fanosense/errors.hpp"
#include "fanosense/lindblad.hpp"
#include "fanosense/sensing.hpp"
#include "fanosense/units.hpp"

using namespace fanosense;

TEST_CASE("uncoupled dot reproduces the two-level Bloch population") {
    ModelConfig cfg;
    auto op = operating_point(cfg, 577.0005);
    op.plasmon.g = 0.0;
    op.drive.gamma_ex = 2e5;  // neV
    op.drive.Omega_ex = 0.15;
    const auto s = analytic::solve(op);
    const double G = op.drive.gamma_ex_meV(), D = op.drive.delta_ex(), W = op.drive.Omega_ex;
    CHECK(s.population == doctest::Approx(W * W / (D * D + G * G / 4.0 + 2.0 * W * W)).epsilon(1e-13));

    // Same point from the master equation.
    op.drive.Omega_pl = 0.0;
    const auto p = lindblad::solve_point(op, lindblad::HilbertSpace{3});
    CHECK(p.population == doctest::Approx(s.population).epsilon(1e-9));
}

TEST_CASE("printed saturation form") {
    const double P = analytic::saturation_parameter({0.3, 0.0}, 2.0, 0.5, SaturationForm::printed);
    CHECK(P == doctest::Approx(2.0 * 0.0225 / (1.0 + 2.0 * 0.0625)).epsilon(1e-15));
    const double B = analytic::saturation_parameter({0.3, 0.0}, 2.0, 0.5, SaturationForm::bloch);
    CHECK(B == doctest::Approx(4.0 * 0.0225 / (1.0 + 4.0 * 0.0625)).epsilon(1e-15));
}

TEST_CASE("bare plasmon is coherent") {
    ModelConfig cfg;
    auto op = operating_point(cfg, 540.0);
    const auto z = analytic::correlations_zero_delay(op.drive, 0.0, {0.3, 0.1}, 0.2);
    CHECK(z.g2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(z.g3 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(z.g4 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("antibunching at the Fano peak with ordered higher orders") {
    const auto s = analytic::solve(operating_point(ModelConfig{}, 577.038));
    CHECK(s.g2_0 == doctest::Approx(0.1658).epsilon(2e-3));
    CHECK(s.g4_0 < s.g3_0);
    CHECK(s.g3_0 < s.g2_0);
    CHECK(s.g2_0 < 1.0);
}

TEST_CASE("g2 stays Poissonian across the plasmon window") {
    const ModelConfig cfg;
    for (double lambda = 520.0; lambda <= 555.0; lambda += 0.5)
        CHECK(std::abs(analytic::solve(operating_point(cfg, lambda)).g2_0 - 1.0) < 1e-3);
}

TEST_CASE("zero drive is a dark point") {
    ModelConfig cfg;
    cfg.I0 = 0.0;
    const auto s = analytic::solve(operating_point(cfg, 577.038));
    CHECK(s.dark);
    CHECK(std::isnan(s.g2_0));
    CHECK(s.n_photon == 0.0);
    const auto r = sensing::evaluate_point(cfg, 577.038, 1.333, sensing::Engine::analytic);
    CHECK(r.ok());
    CHECK(r.dark);
}

TEST_CASE("analytic and master-equation engines agree in the weak-drive regime") {
    const ModelConfig cfg;
    for (double lambda : {535.186, 560.0, 576.9, 577.0, 577.03, 577.038, 577.05}) {
        const auto a = sensing::evaluate_point(cfg, lambda, 1.333, sensing::Engine::analytic);
        const auto l = sensing::evaluate_point(cfg, lambda, 1.333, sensing::Engine::lindblad);
        CAPTURE(lambda);
        CHECK(std::abs(a.n_photon - l.n_photon) / l.n_photon < 0.01);
        CHECK(std::abs(a.g2 - l.g2) / l.g2 < 0.03);
    }
}

TEST_CASE("flux numerator reduces to the bare drive when g vanishes") {
    ModelConfig cfg;
    auto op = operating_point(cfg, 550.0);
    op.plasmon.g = 0.0;
    const auto s = analytic::solve(op);
    const double dpl = op.drive.delta_pl(op.plasmon);
    const double n = op.drive.Omega_pl * op.drive.Omega_pl / (dpl * dpl + op.plasmon.gamma_pl * op.plasmon.gamma_pl / 4.0);
    CHECK(s.n_photon == doctest::Approx(n).epsilon(1e-14));
    CHECK(std::norm(s.a) == doctest::Approx(n).epsilon(1e-14));
}
