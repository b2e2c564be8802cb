#include <doctest.h>

#include <cmath>

#include "fanosense/errors.hpp"
#include "fanosense/photodetection.hpp"

using namespace fanosense;
using namespace fanosense::photodetection;

TEST_CASE("mean count and factorial moment scale with xi and xi^2") {
    Detector a, b;
    b.xi = 0.35;
    const double flux = 0.04, nn2 = 1.7e-3;
    CHECK(mean_photocount(flux, a) == doctest::Approx(0.7 * 3.0 * 0.04).epsilon(1e-15));
    CHECK(mean_photocount(flux, a) / mean_photocount(flux, b) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(second_factorial_moment(nn2, a) / second_factorial_moment(nn2, b) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("shot-noise identity is exact for Poissonian light") {
    for (double m : {1e-8, 1.2e-4, 0.3, 7.0, 1e3}) CHECK(noise_m(m, 1.0) == std::sqrt(m));
}

TEST_CASE("count noise against the variance formula") {
    const double m = 0.02, g2 = 0.4;
    // Var = <m> + g2 <m>^2 - <m>^2
    CHECK(noise_m(m, g2) == doctest::Approx(std::sqrt(m + g2 * m * m - m * m)).epsilon(1e-14));
    CHECK_THROWS_AS(noise_m(5.0, 0.1), DomainError);
}

TEST_CASE("coherent light: second-moment noise") {
    // For Poissonian counts Var(m^2 - m) = 4 m^3 + 2 m^2.
    const double xi = 0.7;
    for (double m : {1e-4, 0.05, 2.0}) {
        const double d = noise_m2(m, 1.0, 1.0, 1.0, xi);
        const double q = xi / m;
        CHECK(d == doctest::Approx(m * m * std::sqrt(4.0 * q + 2.0 * q * q)).epsilon(1e-14));
    }
}

TEST_CASE("g2 noise reduces to the propagated form") {
    const double g2 = 0.17, m = 1.2e-4;
    const double dm = noise_m(m, g2);
    const double dm2 = noise_m2(m, g2, 0.016, 0.0013, 0.7);
    const double expect = std::sqrt(std::pow(dm2 / (m * m), 2) + std::pow(2.0 * g2 * dm / m, 2));
    CHECK(noise_g2(g2, m, dm, dm2) == doctest::Approx(expect).epsilon(1e-13));
    CHECK_THROWS_AS(noise_g2(g2, 0.0, dm, dm2), DegenerateFluxError);
}

TEST_CASE("time averaging over one second of windows") {
    Detector det;
    CHECK(det.measurements_per_second() == doctest::Approx(1.0 / 3e-12).epsilon(1e-15));
    CHECK(time_average(1.0, det) == doctest::Approx(std::sqrt(3e-12)).epsilon(1e-14));
    CHECK(time_average(1.0, det, 4.0) == doctest::Approx(std::sqrt(3e-12) / 2.0).epsilon(1e-14));
    det.duty = 0.25;
    CHECK(time_average(1.0, det) == doctest::Approx(2.0 * std::sqrt(3e-12)).epsilon(1e-14));
}

TEST_CASE("detector validation paths") {
    Detector d;
    d.xi = 1.5;
    try {
        d.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "detector.xi");
    }
}
