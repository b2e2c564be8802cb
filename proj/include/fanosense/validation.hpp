#pragma once

#include <string>
#include <vector>

#include "fanosense/model.hpp"
#include "fanosense/sensing.hpp"

namespace fanosense::validation {

// pass means measured <= tolerance (all checks are phrased as an error to be bounded).
struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct Options {
    sensing::SolverOptions solver;
    std::vector<int> convergence_dims{8, 10, 12};
    double convergence_tol = 1e-4;
    int grid_points = 21;
    double long_delay = 1000.0;  // ps, stands in for tau -> infinity
    int jobs = 0;
};

struct Report {
    std::vector<Check> checks;
    double lambda_pl = 0.0;
    double lambda_dip = 0.0;
    double lambda_peak = 0.0;

    bool passed() const;
};

Report run(const ModelConfig& cfg, const Options& options);

// <alpha| rho_plasmon |alpha> for the coherent state the bare driven plasmon relaxes to.
double coherent_state_fidelity(const ModelConfig& cfg, double lambda, int fock_dim);

}  // namespace fanosense::validation
