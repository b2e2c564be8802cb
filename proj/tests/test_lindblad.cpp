#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "fanosense/errors.hpp"
#include "fanosense/lindblad.hpp"
#include "fanosense/validation.hpp"

using namespace fanosense;
using namespace fanosense::lindblad;

namespace {

Liouvillian make(const ModelConfig& cfg, double lambda, int fock) {
    const auto op = operating_point(cfg, lambda);
    const HilbertSpace space{fock};
    return Liouvillian(build_hamiltonian(op.drive, op.plasmon, space), {op.plasmon.gamma_pl, op.drive.gamma_ex_meV()},
                       space);
}

}  // namespace

TEST_CASE("operator algebra on the truncated space") {
    const HilbertSpace s{6};
    const Matrix a = annihilation(s), sm = sigma_minus(s);
    CHECK((a * sm - sm * a).norm() == 0.0);
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    // [a, a^dag] = 1 except on the top Fock level.
    CHECK((comm + 6.0 * top_fock_projector(s) - identity(s)).norm() < 1e-12);
    CHECK((sigma_z(s) * sigma_z(s) - identity(s)).norm() < 1e-14);
}

TEST_CASE("vec(A X B) = kron(B^T, A) vec(X)") {
    std::mt19937 rng(7);
    std::normal_distribution<double> N;
    auto rnd = [&](int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = {N(rng), N(rng)};
        return m;
    };
    const Matrix A = rnd(4), X = rnd(4), B = rnd(4);
    CHECK((vec(A * X * B) - kron(B.transpose(), A) * vec(X)).norm() < 1e-12);
    CHECK((unvec(vec(X), 4) - X).norm() == 0.0);
}

TEST_CASE("generator is trace preserving and its spectrum is stable") {
    for (int fock : {2, 3}) {
        const auto L = make(ModelConfig{}, 577.038, fock);
        const Eigen::RowVectorXcd left = vec(identity(L.space())).transpose();
        CHECK((left * L.matrix()).norm() < 1e-12);
        Eigen::ComplexEigenSolver<Matrix> es(L.matrix());
        int zeros = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            CHECK(es.eigenvalues()(i).real() < 1e-10);
            if (std::abs(es.eigenvalues()(i)) < 1e-9) ++zeros;
        }
        CHECK(zeros == 1);
    }
}

TEST_CASE("steady state is a fixed point of the propagator") {
    const auto L = make(ModelConfig{}, 577.038, 5);
    SteadyStateDiagnostics d;
    const Matrix rho = steady_state(L, &d);
    CHECK(d.residual < 1e-12);
    CHECK((propagate(L, rho, 37.0) - rho).norm() < 1e-10);
}

TEST_CASE("semigroup property of the propagator") {
    const auto L = make(ModelConfig{}, 577.02, 4);
    Matrix x = Matrix::Zero(L.dim(), L.dim());
    x(0, 0) = 0.6;
    x(3, 3) = 0.4;
    x(0, 3) = x(3, 0) = 0.2;
    const Matrix once = propagate(L, x, 3.7);
    const Matrix twice = propagate(L, propagate(L, x, 1.2), 2.5);
    CHECK((once - twice).norm() / once.norm() < 1e-8);
    CHECK(once.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent-state oracle without coupling") {
    for (double lambda : {520.0, 535.186, 577.038})
        CHECK(1.0 - validation::coherent_state_fidelity(ModelConfig{}, lambda, 10) < 1e-6);
    ModelConfig strong;
    strong.I0 = 3360.0;
    CHECK(1.0 - validation::coherent_state_fidelity(strong, 535.186, 12) < 1e-6);
}

TEST_CASE("zero-delay regression matches the steady-state moments") {
    const ModelConfig cfg;
    const auto op = operating_point(cfg, 577.038);
    const HilbertSpace space{10};
    const Liouvillian L(build_hamiltonian(op.drive, op.plasmon, space), {op.plasmon.gamma_pl, op.drive.gamma_ex_meV()},
                        space);
    const Matrix rho = steady_state(L);
    const Matrix b = emission_operator(op.plasmon, op.drive, space, Emission::plasmon);
    const auto p = solve_point(op, space);
    const std::vector<double> tau{0.0, 5.0, 200.0};
    const std::vector<int> orders{2, 3, 4};
    const auto all = correlation_tau(L, rho, std::span<const int>(orders), tau, b);
    const auto& g2 = all[0];
    const auto& g3 = all[1];
    const auto& g4 = all[2];
    CHECK(g2[0] == doctest::Approx(p.g2).epsilon(1e-10));
    CHECK(g3[0] == doctest::Approx(p.g3).epsilon(1e-10));
    CHECK(g4[0] == doctest::Approx(p.g4).epsilon(1e-10));
    CHECK(std::abs(g2[2] - 1.0) < 1e-6);
    // Uniform and non-uniform grids give the same values.
    const std::vector<double> uniform{0.0, 2.5, 5.0};
    CHECK(correlation_tau(L, rho, 2, uniform, b)[2] == doctest::Approx(g2[1]).epsilon(1e-10));
    CHECK(correlation_tau(L, rho, 3, std::vector<double>{0.0, 5.0}, b)[1] == doctest::Approx(g3[1]).epsilon(1e-12));
}

TEST_CASE("full emission operator adds the dot channel") {
    const ModelConfig cfg;
    const auto op = operating_point(cfg, 577.038);
    const HilbertSpace space{6};
    const Matrix b0 = emission_operator(op.plasmon, op.drive, space, Emission::plasmon);
    const Matrix b1 = emission_operator(op.plasmon, op.drive, space, Emission::full);
    CHECK((b1 - b0).norm() > 0.0);
    CHECK(solve_point(op, space, Emission::full).flux > 0.0);
}

TEST_CASE("degenerate inputs") {
    const HilbertSpace s{3};
    const Matrix h = Matrix::Zero(s.dim(), s.dim());
    // No dissipation and no drive: every diagonal state is stationary.
    CHECK_THROWS_AS(steady_state(Liouvillian(h, {0.0, 0.0}, s)), DegenerateSteadyStateError);
    CHECK_THROWS_AS(Liouvillian(h, {-1.0, 0.0}, s), DomainError);
    CHECK_THROWS_AS(HilbertSpace{1}.validate(), ConfigError);
    // Dark steady state: no flux to normalize by.
    const Liouvillian L(h, {1.0, 1.0}, s);
    const Matrix rho = steady_state(L);
    const std::vector<double> tau{0.0};
    CHECK_THROWS_AS(correlation_tau(L, rho, 2, tau, annihilation(s)), DegenerateFluxError);
}

TEST_CASE("Fock convergence at the defaults and its failure under a strong drive") {
    const std::vector<int> dims{8, 10, 12};
    CHECK(convergence_check(ModelConfig{}, 577.038, dims).converged);
    ModelConfig hot;
    hot.I0 = 3360.0;
    const std::vector<int> small{2, 3, 5};
    CHECK_FALSE(convergence_check(hot, 535.186, small).converged);
}
