#include "fanosense/photodetection.hpp"

#include <cmath>
#include <string>

#include "fanosense/errors.hpp"

namespace fanosense::photodetection {

void Detector::validate() const {
    if (!(xi > 0.0 && xi <= 1.0)) throw ConfigError("detector.xi", "must be in (0, 1]");
    if (!(T_int > 0.0) || !std::isfinite(T_int)) throw ConfigError("detector.T_int", "must be > 0");
    if (!(duty > 0.0 && duty <= 1.0)) throw ConfigError("detector.duty", "must be in (0, 1]");
}

double mean_photocount(double flux, const Detector& det) {
    if (!(flux >= 0.0)) throw DomainError("mean_photocount: negative flux");
    return det.xi * det.T_int * flux;
}

double second_factorial_moment(double nn2, const Detector& det) {
    if (!(nn2 >= 0.0)) throw DomainError("second_factorial_moment: negative moment");
    const double scale = det.xi * det.T_int;
    return scale * scale * nn2;
}

double noise_m(double m_mean, double g2) {
    const double radicand = 1.0 + (g2 - 1.0) * m_mean;
    if (m_mean < 0.0 || radicand < 0.0) throw DomainError("noise_m: negative radicand");
    return std::sqrt(m_mean) * std::sqrt(radicand);
}

double noise_m2(double m_mean, double g2, double g3, double g4, double xi) {
    if (!(m_mean > 0.0)) throw DomainError("noise_m2: mean count must be positive");
    const double q = xi / m_mean;
    const double radicand = g4 - g2 * g2 + 4.0 * g3 * q + 2.0 * g2 * q * q;
    if (radicand < 0.0)
        throw DomainError("noise_m2: negative radicand " + std::to_string(radicand) + " (g2=" + std::to_string(g2)
                          + ", g3=" + std::to_string(g3) + ", g4=" + std::to_string(g4) + ")");
    return m_mean * m_mean * std::sqrt(radicand);
}

double noise_g2(double g2, double m_mean, double delta_m, double delta_m2) {
    if (!(m_mean > 0.0)) throw DegenerateFluxError("noise_g2: zero mean count");
    if (!(delta_m > 0.0)) throw DegenerateFluxError("noise_g2: zero count noise");
    const double ratio = delta_m2 / (2.0 * g2 * m_mean * delta_m);
    return 2.0 * g2 * delta_m / m_mean * std::sqrt(1.0 + ratio * ratio);
}

double time_average(double delta, const Detector& det, double duration) {
    return delta / std::sqrt(det.measurements_per_second() * duration);
}

CountStats count_stats(double flux, double nn2, double g2, double g3, double g4, const Detector& det,
                       double duration) {
    CountStats s;
    s.m_mean = mean_photocount(flux, det);
    s.m2 = second_factorial_moment(nn2, det);
    s.delta_m = noise_m(s.m_mean, g2);
    s.delta_m2 = noise_m2(s.m_mean, g2, g3, g4, det.xi);
    s.delta_g2 = noise_g2(g2, s.m_mean, s.delta_m, s.delta_m2);
    s.sigma_m = time_average(s.delta_m, det, duration);
    s.sigma_g2 = time_average(s.delta_g2, det, duration);
    return s;
}

}  // namespace fanosense::photodetection
