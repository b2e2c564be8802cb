#pragma once

namespace fanosense::photodetection {

// T_int in ps. duty scales the number of usable windows per second.
struct Detector {
    double xi = 0.7;
    double T_int = 3.0;
    double duty = 1.0;

    double measurements_per_second() const { return duty / (T_int * 1e-12); }
    void validate() const;
};

struct CountStats {
    double m_mean = 0.0;
    double m2 = 0.0;
    double delta_m = 0.0;
    double delta_m2 = 0.0;
    double delta_g2 = 0.0;
    double sigma_m = 0.0;
    double sigma_g2 = 0.0;
};

// flux is <b^dag b> in 1/ps.
double mean_photocount(double flux, const Detector& det);
// nn2 is <(b^dag)^2 b^2> in 1/ps^2.
double second_factorial_moment(double nn2, const Detector& det);

double noise_m(double m_mean, double g2);
double noise_m2(double m_mean, double g2, double g3, double g4, double xi);
double noise_g2(double g2, double m_mean, double delta_m, double delta_m2);

// Noise after averaging every window in duration seconds.
double time_average(double delta, const Detector& det, double duration = 1.0);

CountStats count_stats(double flux, double nn2, double g2, double g3, double g4, const Detector& det,
                       double duration = 1.0);

}  // namespace fanosense::photodetection
