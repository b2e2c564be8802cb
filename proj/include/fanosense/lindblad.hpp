#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fanosense/materials.hpp"
#include "fanosense/model.hpp"

namespace fanosense::lindblad {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Plasmon Fock states 0..fock_dim-1 times the QD two-level system.
// Basis index = photon_number * 2 + qd_level.
struct HilbertSpace {
    int fock_dim = 10;

    int qd_dim() const { return 2; }
    int dim() const { return 2 * fock_dim; }
    void validate() const;
};

Matrix identity(const HilbertSpace& space);
Matrix annihilation(const HilbertSpace& space);
Matrix creation(const HilbertSpace& space);
Matrix sigma_minus(const HilbertSpace& space);
Matrix sigma_plus(const HilbertSpace& space);
Matrix sigma_z(const HilbertSpace& space);
// Projector on the highest retained Fock level.
Matrix top_fock_projector(const HilbertSpace& space);

Matrix kron(const Matrix& a, const Matrix& b);

// Column-stacking vectorization.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index dim);

// Rotating-frame Hamiltonian in meV (hbar = 1).
Matrix build_hamiltonian(const materials::DriveParams& drive, const materials::DerivedPlasmon& plasmon,
                         const HilbertSpace& space);

struct Rates {
    double gamma_pl = 0.0;  // meV
    double gamma_ex = 0.0;  // meV
};

// d vec(rho)/dt = L vec(rho), time measured in hbar/meV.
class Liouvillian {
public:
    Liouvillian(const Matrix& hamiltonian, Rates rates, const HilbertSpace& space);

    const Matrix& matrix() const { return matrix_; }
    const HilbertSpace& space() const { return space_; }
    Eigen::Index dim() const { return space_.dim(); }
    Matrix apply(const Matrix& rho) const;

private:
    HilbertSpace space_;
    Matrix matrix_;
};

struct SteadyStateDiagnostics {
    double residual = 0.0;
    double rcond = 0.0;
    double top_fock_population = 0.0;
    double min_eigenvalue = 0.0;
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
};

// Throws DegenerateSteadyStateError if the kernel is not one-dimensional, NumericalError if the
// residual exceeds residual_tol.
Matrix steady_state(const Liouvillian& L, SteadyStateDiagnostics* diagnostics = nullptr,
                    double residual_tol = 1e-10);

complex expectation(const Matrix& op, const Matrix& rho);

// exp(L tau) applied to X, tau in ps.
Matrix propagate(const Liouvillian& L, const Matrix& x, double tau);

// Emission operator b in sqrt(1/ps) units.
Matrix emission_operator(const materials::DerivedPlasmon& plasmon, const materials::DriveParams& drive,
                         const HilbertSpace& space, Emission emission);

// Normalized g^(order)(tau) on tau_grid (ps, ascending, starting at any tau >= 0).
std::vector<double> correlation_tau(const Liouvillian& L, const Matrix& rho_ss, int order,
                                    std::span<const double> tau_grid, const Matrix& b);

// Several orders sharing one propagation; result indexed like orders.
std::vector<std::vector<double>> correlation_tau(const Liouvillian& L, const Matrix& rho_ss, std::span<const int> orders,
                                                 std::span<const double> tau_grid, const Matrix& b);

struct NumericPoint {
    double n_photon = 0.0;
    double flux = 0.0;  // <b^dag b>, 1/ps
    double nn2 = 0.0;   // <(b^dag)^2 b^2>, 1/ps^2
    double g2 = 1.0, g3 = 1.0, g4 = 1.0;
    complex sigma;
    double population = 0.0;
    SteadyStateDiagnostics diagnostics;
};

NumericPoint solve_point(const OperatingPoint& op, const HilbertSpace& space, Emission emission = Emission::plasmon,
                         double residual_tol = 1e-10);

struct ConvergenceEntry {
    int fock_dim = 0;
    double n_photon = 0.0;
    double g2 = 0.0;
    double top_fock_population = 0.0;
    double rel_change_n = 0.0;   // against the previous entry
    double rel_change_g2 = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceEntry> entries;
    double threshold = 1e-4;
    bool converged = true;
};

ConvergenceReport convergence_check(const ModelConfig& cfg, double lambda, std::span<const int> fock_dims,
                                    double threshold = 1e-4);

}  // namespace fanosense::lindblad
