#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fanosense/model.hpp"
#include "fanosense/photodetection.hpp"

namespace fanosense::sensing {

enum class Engine { analytic, lindblad };
enum class Region { plasmon, fano };

struct SolverOptions {
    int fock_dim = 10;
    double residual_tol = 1e-10;
};

// One (lambda, n) evaluation. Failures are recorded in error and leave the numbers NaN.
struct PointResult {
    double lambda = 0.0;
    double n = 0.0;
    double n_photon = 0.0;
    double flux = 0.0;  // 1/ps
    double g2 = 1.0, g3 = 1.0, g4 = 1.0;
    photodetection::CountStats stats;
    double population = 0.0;
    double top_fock_population = 0.0;  // lindblad only
    bool dark = false;
    std::string error;

    bool ok() const { return error.empty(); }
};

PointResult evaluate_point(const ModelConfig& cfg, double lambda, double n, Engine engine,
                           const SolverOptions& solver = {});

// Inclusive arithmetic grid lo, lo+step, ..., hi (hi included when it falls on the grid).
std::vector<double> make_grid(double lo, double hi, double step);

struct Window {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    std::vector<double> grid() const { return make_grid(lo, hi, step); }
};

struct SweepGrid {
    std::vector<double> lambda_grid;
    std::vector<double> n_grid;
    Region region = Region::plasmon;

    void validate() const;
};

// Results ordered n-major: index = i_n * lambda_grid.size() + i_lambda. Independent of jobs.
std::vector<PointResult> sweep(const ModelConfig& cfg, const SweepGrid& grid, Engine engine,
                               const SolverOptions& solver = {}, int jobs = 0);

// Runs fn(i) for i in [0, count) on up to jobs threads (0 = hardware concurrency).
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

// midpoint: central difference at the middle sample. edge: one-sided second-order stencil at the first sample.
enum class Anchor { midpoint, edge };

struct Sensitivity {
    double value = 0.0;       // |d signal / dn|
    double derivative = 0.0;  // signed
    double richardson = 0.0;  // extrapolated |d signal / dn|, NaN if the grid is too short
    double linearity = 0.0;   // max |residual| / range of a least-squares line
    double at_n = 0.0;
};

Sensitivity sensitivity(std::span<const double> n, std::span<const double> signal, Anchor anchor = Anchor::midpoint);

// Max |residual| of the least-squares line divided by the signal range. Needs >= 4 points.
double linearity_report(std::span<const double> n, std::span<const double> signal);

struct SpecialPoints {
    double left = 0.0;
    double extremum = 0.0;
    double right = 0.0;
};

// Inflections nearest to the second-derivative minimum, refined by linear interpolation.
SpecialPoints special_points(std::span<const double> lambda, std::span<const double> spectrum);

struct Resolution {
    double value = 0.0;
    bool infinite = false;
};

Resolution resolution(double S, double sigma);

struct PointSensing {
    std::string label;  // PL, PM, PR, FL, FM, FR
    double lambda = 0.0;
    double m_mean = 0.0;
    double g2 = 0.0;
    double sigma_m = 0.0;
    double sigma_g2 = 0.0;
    Sensitivity S_I;
    Sensitivity S_II;
    Sensitivity S_I_mid;
    Sensitivity S_II_mid;
    Resolution dn_I;
    Resolution dn_II;
    double linearity_m = 0.0;
    double linearity_g2 = 0.0;
    bool g2_sensing = false;  // antibunched point, g2 columns meaningful
};

struct SpectrumRow {
    Region region = Region::plasmon;
    double lambda = 0.0;
    double m_mean = 0.0;
    double g2 = 0.0;
    double S_I = 0.0;
    double S_II = 0.0;
    double sigma_m = 0.0;
    double sigma_g2 = 0.0;
    Resolution dn_I;
    Resolution dn_II;
    bool g2_sensing = false;
    std::string error;
};

struct Enhancement {
    std::array<std::optional<double>, 3> sensitivity;  // L, M, R
    std::array<std::optional<double>, 3> resolution;
};

struct EnhancementInputs {
    std::array<std::optional<double>, 3> S_plasmon, S_fano, dn_plasmon, dn_fano;
};

Enhancement enhancement(const EnhancementInputs& in);

struct SenseOptions {
    std::optional<Window> plasmon = Window{520.0, 555.0, 0.01};
    std::optional<Window> fano = Window{577.02, 577.06, 1e-4};
    Window n{1.3330, 1.3334, 1e-4};
    Anchor anchor = Anchor::edge;
    Engine engine = Engine::analytic;
    SolverOptions solver;
    int jobs = 0;
};

struct SensingReport {
    std::vector<SpectrumRow> rows;
    std::vector<PointSensing> points;
    Enhancement enhancement;
    std::vector<std::string> warnings;  // missing special points and similar
    double anchor_n = 0.0;
    std::vector<double> n_grid;
    bool partial = false;

    const PointSensing* point(const std::string& label) const;
};

SensingReport build_report(const ModelConfig& cfg, const SenseOptions& options);

struct FanoFeatures {
    double dip = 0.0;   // nm
    double peak = 0.0;  // nm
    double flux_dip = 0.0;
    double flux_peak = 0.0;
};

// Minimum and maximum of the analytic flux within lambda_ex +- half_width, refined by a parabola.
FanoFeatures fano_features(const ModelConfig& cfg, double half_width = 0.5, double step = 1e-4);

// Wavelength minimizing dn_I-I over antibunched Fano rows, if any.
std::optional<double> best_g2_wavelength(const SensingReport& report);

}  // namespace fanosense::sensing
