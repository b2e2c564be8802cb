#include "fanosense/lindblad.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "fanosense/errors.hpp"
#include "fanosense/units.hpp"

namespace fanosense::lindblad {

namespace {

constexpr complex I{0.0, 1.0};

Matrix fock_lowering(int n) {
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

Matrix qd_lowering() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0;  // |0><1|
    return s;
}

Matrix matrix_power(const Matrix& m, int k) {
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

bool is_uniform(std::span<const double> grid) {
    if (grid.size() < 3) return true;
    const double step = grid[1] - grid[0];
    for (std::size_t i = 2; i < grid.size(); ++i)
        if (std::abs((grid[i] - grid[i - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step))) return false;
    return true;
}

}  // namespace

void HilbertSpace::validate() const {
    if (fock_dim < 2) throw ConfigError("solver.fock_dim", "must be >= 2");
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Eigen::Index dim) { return Eigen::Map<const Matrix>(v.data(), dim, dim); }

Matrix identity(const HilbertSpace& space) { return Matrix::Identity(space.dim(), space.dim()); }

Matrix annihilation(const HilbertSpace& space) {
    return kron(fock_lowering(space.fock_dim), Matrix::Identity(2, 2));
}

Matrix creation(const HilbertSpace& space) { return annihilation(space).adjoint(); }

Matrix sigma_minus(const HilbertSpace& space) {
    return kron(Matrix::Identity(space.fock_dim, space.fock_dim), qd_lowering());
}

Matrix sigma_plus(const HilbertSpace& space) { return sigma_minus(space).adjoint(); }

Matrix sigma_z(const HilbertSpace& space) {
    const Matrix sp = sigma_plus(space);
    const Matrix sm = sigma_minus(space);
    return sp * sm - sm * sp;
}

Matrix top_fock_projector(const HilbertSpace& space) {
    Matrix p = Matrix::Zero(space.fock_dim, space.fock_dim);
    p(space.fock_dim - 1, space.fock_dim - 1) = 1.0;
    return kron(p, Matrix::Identity(2, 2));
}

Matrix build_hamiltonian(const materials::DriveParams& drive, const materials::DerivedPlasmon& plasmon,
                         const HilbertSpace& space) {
    space.validate();
    const Matrix a = annihilation(space);
    const Matrix ad = a.adjoint();
    const Matrix s = sigma_minus(space);
    const Matrix sd = s.adjoint();
    const double g = plasmon.g;
    Matrix h = drive.delta_pl(plasmon) * (ad * a) + drive.delta_ex() * (sd * s);
    h -= g * (s * ad + sd * a);
    h -= drive.Omega_ex * (s + sd);
    h -= drive.Omega_pl * (a + ad);
    return h;
}

Liouvillian::Liouvillian(const Matrix& hamiltonian, Rates rates, const HilbertSpace& space) : space_(space) {
    space.validate();
    if (rates.gamma_pl < 0.0 || rates.gamma_ex < 0.0) throw DomainError("Liouvillian: negative decay rate");
    const Eigen::Index d = space.dim();
    if (hamiltonian.rows() != d || hamiltonian.cols() != d) throw DomainError("Liouvillian: Hamiltonian dimension mismatch");
    const Matrix id = Matrix::Identity(d, d);

    matrix_ = -I * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));

    auto dissipate = [&](const Matrix& c, double rate) {
        if (rate == 0.0) return;
        const Matrix cdc = c.adjoint() * c;
        matrix_ += rate * kron(c.conjugate(), c);
        matrix_ -= 0.5 * rate * (kron(id, cdc) + kron(cdc.transpose(), id));
    };
    dissipate(annihilation(space), rates.gamma_pl);
    dissipate(sigma_minus(space), rates.gamma_ex);
}

Matrix Liouvillian::apply(const Matrix& rho) const { return unvec(matrix_ * vec(rho), dim()); }

Matrix steady_state(const Liouvillian& L, SteadyStateDiagnostics* diagnostics, double residual_tol) {
    const Eigen::Index d = L.dim();
    Matrix bordered = L.matrix();
    bordered.row(0).setZero();
    for (Eigen::Index i = 0; i < d; ++i) bordered(0, i + i * d) = 1.0;
    Vector rhs = Vector::Zero(d * d);
    rhs(0) = 1.0;

    Eigen::PartialPivLU<Matrix> lu(bordered);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double rcond = pivots.maxCoeff() > 0.0 ? std::min(lu.rcond(), pivots.minCoeff() / pivots.maxCoeff()) : 0.0;
    if (!(rcond > 1e-14)) throw DegenerateSteadyStateError("steady_state: kernel is not one-dimensional (rcond " + std::to_string(rcond) + ")");
    Matrix rho = unvec(lu.solve(rhs), d);
    if (!rho.allFinite()) throw DegenerateSteadyStateError("steady_state: non-finite solution");
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    const double residual = (L.matrix() * vec(rho)).norm();
    if (diagnostics) {
        diagnostics->residual = residual;
        diagnostics->rcond = rcond;
        diagnostics->top_fock_population = expectation(top_fock_projector(L.space()), rho).real();
        Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
        diagnostics->min_eigenvalue = eig.eigenvalues().minCoeff();
        diagnostics->trace_error = std::abs(rho.trace() - 1.0);
        diagnostics->hermiticity_error = (rho - rho.adjoint()).norm();
    }
    if (!(residual < residual_tol))
        throw NumericalError("steady_state: residual " + std::to_string(residual) + " above tolerance");
    return rho;
}

complex expectation(const Matrix& op, const Matrix& rho) {
    if (op.rows() != rho.rows() || op.cols() != rho.cols()) throw DomainError("expectation: dimension mismatch");
    return (op * rho).trace();
}

Matrix propagate(const Liouvillian& L, const Matrix& x, double tau) {
    if (tau < 0.0) throw DomainError("propagate: tau must be >= 0");
    if (tau == 0.0) return x;
    const Matrix step = (L.matrix() * (tau * units::meV_per_ps)).exp();
    return unvec(step * vec(x), L.dim());
}

Matrix emission_operator(const materials::DerivedPlasmon& plasmon, const materials::DriveParams& drive,
                         const HilbertSpace& space, Emission emission) {
    Matrix b = std::sqrt(plasmon.gamma_r * units::meV_per_ps) * annihilation(space);
    if (emission == Emission::full) b += std::sqrt(drive.gamma_ex_meV() * units::meV_per_ps) * sigma_minus(space);
    return b;
}

std::vector<std::vector<double>> correlation_tau(const Liouvillian& L, const Matrix& rho_ss, std::span<const int> orders,
                                                 std::span<const double> tau_grid, const Matrix& b) {
    for (const int order : orders)
        if (order < 2 || order > 4) throw DomainError("correlation_tau: order must be 2, 3 or 4");
    const Matrix bd = b.adjoint();
    const double flux = expectation(bd * b, rho_ss).real();
    if (!(flux > 1e-300)) throw DegenerateFluxError("correlation_tau: zero flux");
    for (std::size_t i = 1; i < tau_grid.size(); ++i)
        if (!(tau_grid[i] > tau_grid[i - 1])) throw DomainError("correlation_tau: tau grid must be increasing");
    if (!tau_grid.empty() && tau_grid.front() < 0.0) throw DomainError("correlation_tau: tau must be >= 0");

    // Tr(B X) as a linear functional on vec(X), one row per order.
    Matrix functionals(static_cast<Eigen::Index>(orders.size()), L.dim() * L.dim());
    std::vector<double> norms;
    for (std::size_t k = 0; k < orders.size(); ++k) {
        const Matrix observable = matrix_power(bd, orders[k] - 1) * matrix_power(b, orders[k] - 1);
        functionals.row(static_cast<Eigen::Index>(k)) = vec(observable.transpose()).transpose();
        norms.push_back(std::pow(flux, orders[k]));
    }
    std::vector<std::vector<double>> out(orders.size());
    for (auto& o : out) o.reserve(tau_grid.size());
    if (tau_grid.empty()) return out;

    auto record = [&](const Vector& x) {
        const Vector values = functionals * x;
        for (std::size_t k = 0; k < orders.size(); ++k)
            out[k].push_back(values(static_cast<Eigen::Index>(k)).real() / norms[k]);
    };
    const Matrix& lm = L.matrix();
    Vector x = vec(b * rho_ss * bd);
    if (tau_grid.front() > 0.0) x = (lm * (tau_grid.front() * units::meV_per_ps)).exp() * x;
    record(x);

    Matrix step;
    const bool uniform = is_uniform(tau_grid);
    if (uniform && tau_grid.size() > 1) step = (lm * ((tau_grid[1] - tau_grid[0]) * units::meV_per_ps)).exp();
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        if (uniform)
            x = step * x;
        else
            x = (lm * ((tau_grid[i] - tau_grid[i - 1]) * units::meV_per_ps)).exp() * x;
        record(x);
    }
    return out;
}

std::vector<double> correlation_tau(const Liouvillian& L, const Matrix& rho_ss, int order,
                                    std::span<const double> tau_grid, const Matrix& b) {
    const int orders[] = {order};
    return std::move(correlation_tau(L, rho_ss, orders, tau_grid, b).front());
}

NumericPoint solve_point(const OperatingPoint& op, const HilbertSpace& space, Emission emission, double residual_tol) {
    const Matrix h = build_hamiltonian(op.drive, op.plasmon, space);
    const Liouvillian L(h, {op.plasmon.gamma_pl, op.drive.gamma_ex_meV()}, space);
    NumericPoint p;
    const Matrix rho = steady_state(L, &p.diagnostics, residual_tol);

    const Matrix a = annihilation(space);
    const Matrix s = sigma_minus(space);
    p.n_photon = expectation(a.adjoint() * a, rho).real();
    p.sigma = expectation(s, rho);
    p.population = expectation(s.adjoint() * s, rho).real();

    const Matrix b = emission_operator(op.plasmon, op.drive, space, emission);
    const Matrix bd = b.adjoint();
    p.flux = expectation(bd * b, rho).real();
    const Matrix b2 = b * b;
    const Matrix bd2 = bd * bd;
    p.nn2 = expectation(bd2 * b2, rho).real();
    if (p.flux > 1e-300) {
        const double nn3 = expectation(bd2 * bd * b2 * b, rho).real();
        const double nn4 = expectation(bd2 * bd2 * b2 * b2, rho).real();
        p.g2 = p.nn2 / std::pow(p.flux, 2);
        p.g3 = nn3 / std::pow(p.flux, 3);
        p.g4 = nn4 / std::pow(p.flux, 4);
    } else {
        p.g2 = p.g3 = p.g4 = std::numeric_limits<double>::quiet_NaN();
    }
    return p;
}

ConvergenceReport convergence_check(const ModelConfig& cfg, double lambda, std::span<const int> fock_dims,
                                    double threshold) {
    if (fock_dims.size() < 2) throw ConfigError("fock", "convergence check needs at least two Fock dimensions");
    ConvergenceReport report;
    report.threshold = threshold;
    const auto op = operating_point(cfg, lambda);
    for (const int n : fock_dims) {
        const auto p = solve_point(op, HilbertSpace{n}, cfg.conventions.emission);
        ConvergenceEntry e;
        e.fock_dim = n;
        e.n_photon = p.n_photon;
        e.g2 = p.g2;
        e.top_fock_population = p.diagnostics.top_fock_population;
        if (!report.entries.empty()) {
            const auto& prev = report.entries.back();
            e.rel_change_n = std::abs(e.n_photon - prev.n_photon) / std::abs(e.n_photon);
            e.rel_change_g2 = std::abs(e.g2 - prev.g2) / std::abs(e.g2);
            if (!(e.rel_change_n <= threshold && e.rel_change_g2 <= threshold)) report.converged = false;
        }
        report.entries.push_back(e);
    }
    return report;
}

}  // namespace fanosense::lindblad
