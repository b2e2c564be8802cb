#include "fanosense/sensing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "fanosense/analytic.hpp"
#include "fanosense/errors.hpp"
#include "fanosense/lindblad.hpp"
#include "fanosense/units.hpp"

namespace fanosense::sensing {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void poison(PointResult& r) {
    r.n_photon = r.flux = r.g2 = r.g3 = r.g4 = kNaN;
    r.stats = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
}

const char* label_for(Region region, int i) {
    static const char* plasmon[] = {"PL", "PM", "PR"};
    static const char* fano[] = {"FL", "FM", "FR"};
    return region == Region::plasmon ? plasmon[i] : fano[i];
}

}  // namespace

PointResult evaluate_point(const ModelConfig& cfg, double lambda, double n, Engine engine, const SolverOptions& solver) {
    PointResult r;
    r.lambda = lambda;
    r.n = n;
    try {
        const auto op = operating_point(cfg, lambda, n);
        double nn2 = 0.0;
        if (engine == Engine::analytic) {
            const auto s = analytic::solve(op, cfg.conventions.saturation);
            const double rate = op.plasmon.gamma_r * units::meV_per_ps;
            r.n_photon = s.n_photon;
            r.flux = rate * s.n_photon;
            nn2 = rate * rate * s.nn2;
            r.g2 = s.g2_0;
            r.g3 = s.g3_0;
            r.g4 = s.g4_0;
            r.population = s.population;
            r.dark = s.dark;
        } else {
            const auto p = lindblad::solve_point(op, lindblad::HilbertSpace{solver.fock_dim}, cfg.conventions.emission,
                                                 solver.residual_tol);
            r.n_photon = p.n_photon;
            r.flux = p.flux;
            nn2 = p.nn2;
            r.g2 = p.g2;
            r.g3 = p.g3;
            r.g4 = p.g4;
            r.population = p.population;
            r.top_fock_population = p.diagnostics.top_fock_population;
            r.dark = !(p.flux > 1e-300);
        }
        if (r.dark) {
            r.stats = {photodetection::mean_photocount(std::max(r.flux, 0.0), cfg.detector), kNaN, kNaN, kNaN, kNaN,
                       kNaN, kNaN};
        } else {
            r.stats = photodetection::count_stats(r.flux, nn2, r.g2, r.g3, r.g4, cfg.detector);
        }
    } catch (const NumericalError& e) {
        poison(r);
        r.error = e.what();
    }
    return r;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0))
        throw ConfigError("window", "grid needs finite bounds and a positive step");
    if (hi < lo) throw ConfigError("window", "empty window (max < min)");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + static_cast<double>(i) * step;
    return g;
}

void SweepGrid::validate() const {
    if (lambda_grid.empty() || n_grid.empty()) throw ConfigError("window", "empty sweep grid");
    auto increasing = [](const std::vector<double>& v) {
        return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(b > a); }) == v.end();
    };
    if (!increasing(lambda_grid)) throw ConfigError("window", "wavelength grid must be strictly increasing");
    if (!increasing(n_grid)) throw ConfigError("n_range", "index grid must be strictly increasing");
    if (region == Region::fano)
        for (std::size_t i = 1; i < lambda_grid.size(); ++i)
            if (lambda_grid[i] - lambda_grid[i - 1] > 2e-4 + 1e-12)
                throw ConfigError("window", "Fano window step must be <= 2e-4 nm");
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
}

std::vector<PointResult> sweep(const ModelConfig& cfg, const SweepGrid& grid, Engine engine,
                               const SolverOptions& solver, int jobs) {
    grid.validate();
    const std::size_t nl = grid.lambda_grid.size();
    std::vector<PointResult> out(nl * grid.n_grid.size());
    parallel_for(out.size(), jobs, [&](std::size_t i) {
        out[i] = evaluate_point(cfg, grid.lambda_grid[i % nl], grid.n_grid[i / nl], engine, solver);
    });
    return out;
}

double linearity_report(std::span<const double> n, std::span<const double> signal) {
    if (n.size() != signal.size()) throw DomainError("linearity_report: size mismatch");
    if (n.size() < 4) throw DomainError("linearity_report: needs at least 4 points");
    const double k = static_cast<double>(n.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        sx += n[i];
        sy += signal[i];
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        sxx += (n[i] - mx) * (n[i] - mx);
        sxy += (n[i] - mx) * (signal[i] - my);
    }
    const double slope = sxy / sxx;
    double worst = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i)
        worst = std::max(worst, std::abs(signal[i] - (my + slope * (n[i] - mx))));
    const auto [lo, hi] = std::minmax_element(signal.begin(), signal.end());
    const double range = *hi - *lo;
    return range > 0.0 ? worst / range : 0.0;
}

Sensitivity sensitivity(std::span<const double> n, std::span<const double> signal, Anchor anchor) {
    if (n.size() != signal.size()) throw DomainError("sensitivity: size mismatch");
    if (n.size() < 3) throw DomainError("sensitivity: needs at least 3 points");
    Sensitivity s;
    s.richardson = kNaN;
    const std::size_t size = n.size();
    if (anchor == Anchor::edge) {
        const double h = (n[2] - n[0]) / 2.0;
        s.at_n = n[0];
        s.derivative = (-3.0 * signal[0] + 4.0 * signal[1] - signal[2]) / (2.0 * h);
        if (size >= 5) {
            const double coarse = (-3.0 * signal[0] + 4.0 * signal[2] - signal[4]) / (4.0 * h);
            s.richardson = std::abs((4.0 * s.derivative - coarse) / 3.0);
        }
    } else {
        const std::size_t m = size / 2;
        s.at_n = n[m];
        s.derivative = (signal[m + 1] - signal[m - 1]) / (n[m + 1] - n[m - 1]);
        if (m >= 2 && m + 2 < size) {
            const double coarse = (signal[m + 2] - signal[m - 2]) / (n[m + 2] - n[m - 2]);
            s.richardson = std::abs((4.0 * s.derivative - coarse) / 3.0);
        }
    }
    s.value = std::abs(s.derivative);
    s.linearity = size >= 4 ? linearity_report(n, signal) : 0.0;
    return s;
}

SpecialPoints special_points(std::span<const double> lambda, std::span<const double> spectrum) {
    if (lambda.size() != spectrum.size()) throw DomainError("special_points: size mismatch");
    const std::size_t size = lambda.size();
    if (size < 5) throw DomainError("special_points: needs at least 5 samples");
    // d2[i] is the second derivative at sample i, defined for interior samples.
    std::vector<double> d2(size, kNaN);
    for (std::size_t i = 1; i + 1 < size; ++i) {
        const double hl = lambda[i] - lambda[i - 1];
        const double hr = lambda[i + 1] - lambda[i];
        d2[i] = 2.0 * ((spectrum[i + 1] - spectrum[i]) / hr - (spectrum[i] - spectrum[i - 1]) / hl) / (hl + hr);
    }
    std::size_t im = 1;
    for (std::size_t i = 2; i + 1 < size; ++i)
        if (d2[i] < d2[im]) im = i;

    auto crossing = [&](std::size_t k) {
        return lambda[k] - d2[k] * (lambda[k + 1] - lambda[k]) / (d2[k + 1] - d2[k]);
    };
    auto sign_change = [&](std::size_t k) { return (d2[k] < 0.0) != (d2[k + 1] < 0.0); };

    SpecialPoints sp;
    sp.extremum = lambda[im];
    bool left = false, right = false;
    for (std::size_t k = im; k-- > 1;)
        if (sign_change(k)) {
            sp.left = crossing(k);
            left = true;
            break;
        }
    for (std::size_t k = im; k + 2 < size; ++k)
        if (sign_change(k)) {
            sp.right = crossing(k);
            right = true;
            break;
        }
    if (!left || !right) throw NumericalError("special_points: no inflection in window");
    return sp;
}

Resolution resolution(double S, double sigma) {
    if (S == 0.0) return {std::numeric_limits<double>::infinity(), true};
    return {sigma / S, false};
}

Enhancement enhancement(const EnhancementInputs& in) {
    Enhancement e;
    for (int i = 0; i < 3; ++i) {
        if (in.S_plasmon[i] && in.S_fano[i] && *in.S_plasmon[i] != 0.0) e.sensitivity[i] = *in.S_fano[i] / *in.S_plasmon[i];
        if (in.dn_plasmon[i] && in.dn_fano[i] && *in.dn_fano[i] != 0.0) e.resolution[i] = *in.dn_plasmon[i] / *in.dn_fano[i];
    }
    return e;
}

const PointSensing* SensingReport::point(const std::string& label) const {
    for (const auto& p : points)
        if (p.label == label) return &p;
    return nullptr;
}

namespace {

PointSensing sense_point(const ModelConfig& cfg, const std::string& label, double lambda,
                         const std::vector<double>& n_grid, std::size_t anchor_index, const SenseOptions& options) {
    std::vector<double> m(n_grid.size()), g2(n_grid.size());
    PointResult at_anchor;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const auto r = evaluate_point(cfg, lambda, n_grid[i], options.engine, options.solver);
        if (!r.ok()) throw NumericalError(label + " at " + std::to_string(lambda) + " nm, n = " + std::to_string(n_grid[i]) + ": " + r.error);
        m[i] = r.stats.m_mean;
        g2[i] = r.g2;
        if (i == anchor_index) at_anchor = r;
    }
    PointSensing p;
    p.label = label;
    p.lambda = lambda;
    p.m_mean = at_anchor.stats.m_mean;
    p.g2 = at_anchor.g2;
    p.sigma_m = at_anchor.stats.sigma_m;
    p.sigma_g2 = at_anchor.stats.sigma_g2;
    p.S_I = sensitivity(n_grid, m, options.anchor);
    p.S_II = sensitivity(n_grid, g2, options.anchor);
    p.S_I_mid = sensitivity(n_grid, m, Anchor::midpoint);
    p.S_II_mid = sensitivity(n_grid, g2, Anchor::midpoint);
    p.dn_I = resolution(p.S_I.value, p.sigma_m);
    p.g2_sensing = p.g2 < 1.0;
    p.dn_II = p.g2_sensing ? resolution(p.S_II.value, p.sigma_g2) : Resolution{kNaN, false};
    if (n_grid.size() >= 4) {
        p.linearity_m = linearity_report(n_grid, m);
        p.linearity_g2 = linearity_report(n_grid, g2);
    }
    return p;
}

}  // namespace

SensingReport build_report(const ModelConfig& cfg, const SenseOptions& options) {
    SensingReport report;
    report.n_grid = options.n.grid();
    if (report.n_grid.size() < 3) throw ConfigError("n_range", "needs at least 3 refractive indices");
    const std::size_t anchor_index = options.anchor == Anchor::edge ? 0 : report.n_grid.size() / 2;
    report.anchor_n = report.n_grid[anchor_index];

    EnhancementInputs enh;
    const std::pair<Region, const std::optional<Window>*> windows[] = {{Region::plasmon, &options.plasmon},
                                                                        {Region::fano, &options.fano}};
    for (const auto& [region, window] : windows) {
        if (!*window) continue;
        SweepGrid grid{(*window)->grid(), report.n_grid, region};
        const auto results = sweep(cfg, grid, options.engine, options.solver, options.jobs);
        const std::size_t nl = grid.lambda_grid.size();

        std::vector<double> spectrum(nl);
        std::vector<double> m(report.n_grid.size()), g2(report.n_grid.size());
        for (std::size_t il = 0; il < nl; ++il) {
            SpectrumRow row;
            row.region = region;
            row.lambda = grid.lambda_grid[il];
            for (std::size_t in = 0; in < report.n_grid.size(); ++in) {
                const auto& r = results[in * nl + il];
                if (!r.ok() && row.error.empty()) row.error = r.error;
                m[in] = r.stats.m_mean;
                g2[in] = r.g2;
            }
            const auto& anchor = results[anchor_index * nl + il];
            row.m_mean = anchor.stats.m_mean;
            row.g2 = anchor.g2;
            row.sigma_m = anchor.stats.sigma_m;
            row.sigma_g2 = anchor.stats.sigma_g2;
            spectrum[il] = row.m_mean;
            if (row.error.empty()) {
                row.S_I = sensitivity(report.n_grid, m, options.anchor).value;
                row.S_II = sensitivity(report.n_grid, g2, options.anchor).value;
                row.dn_I = resolution(row.S_I, row.sigma_m);
                row.g2_sensing = region == Region::fano && row.g2 < 1.0;
                row.dn_II = row.g2_sensing ? resolution(row.S_II, row.sigma_g2) : Resolution{kNaN, false};
            } else {
                row.S_I = row.S_II = kNaN;
                row.dn_I = row.dn_II = {kNaN, false};
            }
            report.rows.push_back(row);
        }

        try {
            const auto sp = special_points(grid.lambda_grid, spectrum);
            const double where[] = {sp.left, sp.extremum, sp.right};
            for (int i = 0; i < 3; ++i) {
                auto p = sense_point(cfg, label_for(region, i), where[i], report.n_grid, anchor_index, options);
                if (region == Region::plasmon) {
                    enh.S_plasmon[i] = p.S_I.value;
                    enh.dn_plasmon[i] = p.dn_I.value;
                } else {
                    enh.S_fano[i] = p.S_I.value;
                    enh.dn_fano[i] = p.dn_I.value;
                }
                report.points.push_back(std::move(p));
            }
        } catch (const NumericalError& e) {
            report.partial = true;
            report.warnings.push_back(std::string(region == Region::plasmon ? "plasmon" : "fano") + " window: " + e.what());
        }
    }
    report.enhancement = enhancement(enh);
    if (!options.plasmon || !options.fano) report.partial = true;
    return report;
}

std::optional<double> best_g2_wavelength(const SensingReport& report) {
    std::optional<double> best;
    double best_dn = std::numeric_limits<double>::infinity();
    for (const auto& row : report.rows) {
        if (row.region != Region::fano || !row.g2_sensing || row.dn_II.infinite || !std::isfinite(row.dn_II.value)) continue;
        if (row.dn_II.value < best_dn) {
            best_dn = row.dn_II.value;
            best = row.lambda;
        }
    }
    return best;
}

}  // namespace fanosense::sensing

namespace fanosense::sensing {

FanoFeatures fano_features(const ModelConfig& cfg, double half_width, double step) {
    const double center = units::wavelength_nm(cfg.qd.exciton_energy());
    const auto grid = make_grid(center - half_width, center + half_width, step);
    std::vector<double> flux(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto op = operating_point(cfg, grid[i]);
        flux[i] = analytic::solve(op, cfg.conventions.saturation).n_photon * op.plasmon.gamma_r * units::meV_per_ps;
    }
    auto refine = [&](std::size_t i) {
        if (i == 0 || i + 1 == grid.size()) return grid[i];
        const double a = flux[i - 1], b = flux[i], c = flux[i + 1];
        const double den = a - 2.0 * b + c;
        return den == 0.0 ? grid[i] : grid[i] + 0.5 * step * (a - c) / den;
    };
    const auto lo = static_cast<std::size_t>(std::min_element(flux.begin(), flux.end()) - flux.begin());
    const auto hi = static_cast<std::size_t>(std::max_element(flux.begin(), flux.end()) - flux.begin());
    return {refine(lo), refine(hi), flux[lo], flux[hi]};
}

}  // namespace fanosense::sensing
