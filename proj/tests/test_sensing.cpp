#include <doctest.h>

#include <cmath>
#include <vector>

#include "fanosense/errors.hpp"
#include "fanosense/sensing.hpp"

using namespace fanosense;
using namespace fanosense::sensing;

TEST_CASE("grids include the upper bound and reject empty windows") {
    const auto g = make_grid(1.3330, 1.3334, 1e-4);
    REQUIRE(g.size() == 5);
    CHECK(g.back() == doctest::Approx(1.3334).epsilon(1e-14));
    CHECK(make_grid(2.0, 2.0, 0.1).size() == 1);
    CHECK_THROWS_AS(make_grid(3.0, 2.0, 0.1), ConfigError);
    CHECK_THROWS_AS(make_grid(2.0, 3.0, 0.0), ConfigError);
}

TEST_CASE("Fano sweeps need a fine wavelength step") {
    SweepGrid g{make_grid(577.02, 577.06, 1e-3), {1.333}, Region::fano};
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g.region = Region::plasmon;
    CHECK_NOTHROW(g.validate());
}

TEST_CASE("one-sided stencil is exact on quadratics") {
    const std::vector<double> n{1.0, 1.1, 1.2, 1.3, 1.4};
    std::vector<double> y;
    for (double x : n) y.push_back(3.0 * x * x - 2.0 * x + 0.5);
    const auto edge = sensitivity(n, y, Anchor::edge);
    CHECK(edge.derivative == doctest::Approx(6.0 * 1.0 - 2.0).epsilon(1e-12));
    CHECK(edge.at_n == 1.0);
    CHECK(edge.richardson == doctest::Approx(4.0).epsilon(1e-10));
    const auto mid = sensitivity(n, y, Anchor::midpoint);
    CHECK(mid.derivative == doctest::Approx(6.0 * 1.2 - 2.0).epsilon(1e-12));
    CHECK(mid.at_n == 1.2);
}

TEST_CASE("sensitivity sign is dropped, derivative keeps it") {
    const std::vector<double> n{0.0, 1.0, 2.0};
    const std::vector<double> y{5.0, 3.0, 1.0};
    const auto s = sensitivity(n, y, Anchor::edge);
    CHECK(s.derivative == doctest::Approx(-2.0));
    CHECK(s.value == doctest::Approx(2.0));
    CHECK(std::isnan(s.richardson));
}

TEST_CASE("linearity of an exact line is zero and grows with curvature") {
    const std::vector<double> n{0, 1, 2, 3, 4};
    const std::vector<double> line{1, 3, 5, 7, 9};
    const std::vector<double> bent{0, 1, 4, 9, 16};
    CHECK(linearity_report(n, line) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(linearity_report(n, bent) > 0.05);
    CHECK_THROWS_AS(linearity_report(std::vector<double>{0, 1, 2}, std::vector<double>{0, 1, 2}), DomainError);
}

TEST_CASE("special points of a Lorentzian") {
    // Inflections of 1/(1 + x^2) sit at +-1/sqrt(3).
    std::vector<double> x, y;
    for (double v = -3.0; v <= 3.0 + 1e-12; v += 1e-3) {
        x.push_back(v);
        y.push_back(1.0 / (1.0 + v * v));
    }
    const auto sp = special_points(x, y);
    CHECK(sp.extremum == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sp.left == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-5));
    CHECK(sp.right == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-5));

    std::vector<double> xs, ys;
    for (double v = 0.0; v <= 0.3; v += 1e-2) {
        xs.push_back(v);
        ys.push_back(1.0 / (1.0 + v * v));
    }
    CHECK_THROWS_AS(special_points(xs, ys), NumericalError);
}

TEST_CASE("resolution with zero sensitivity is flagged infinite") {
    CHECK(resolution(0.0, 1e-8).infinite);
    const auto r = resolution(2e-4, 2e-8);
    CHECK_FALSE(r.infinite);
    CHECK(r.value == doctest::Approx(1e-4));
}

TEST_CASE("enhancement factors need both regions") {
    EnhancementInputs in;
    in.S_plasmon = {2.0, 4.0, std::nullopt};
    in.S_fano = {1.0, 4.4, 3.0};
    in.dn_plasmon = {1.0, 2.0, 3.0};
    in.dn_fano = {2.0, 1.0, 3.0};
    const auto e = enhancement(in);
    CHECK(*e.sensitivity[0] == doctest::Approx(0.5));
    CHECK(*e.sensitivity[1] == doctest::Approx(1.1));
    CHECK_FALSE(e.sensitivity[2]);
    CHECK(*e.resolution[1] == doctest::Approx(2.0));
}

TEST_CASE("sweep output is independent of the worker count") {
    const ModelConfig cfg;
    const SweepGrid g{make_grid(577.03, 577.04, 1e-3), make_grid(1.333, 1.3332, 1e-4), Region::plasmon};
    const auto one = sweep(cfg, g, Engine::lindblad, {}, 1);
    const auto many = sweep(cfg, g, Engine::lindblad, {}, 4);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].lambda == many[i].lambda);
        CHECK(one[i].n == many[i].n);
        CHECK(one[i].flux == many[i].flux);
        CHECK(one[i].g2 == many[i].g2);
    }
    CHECK(one[1].lambda == doctest::Approx(577.031));
    CHECK(one[g.lambda_grid.size()].n == doctest::Approx(1.3331));
}

TEST_CASE("failed points carry the error and NaN values") {
    ModelConfig cfg;
    cfg.metal.omega_p = 100.0;
    const auto r = evaluate_point(cfg, 550.0, 1.333, Engine::analytic);
    CHECK_FALSE(r.ok());
    CHECK(std::isnan(r.flux));
}

TEST_CASE("report on the default grids") {
    SenseOptions opt;
    const auto rep = build_report(ModelConfig{}, opt);
    CHECK_FALSE(rep.partial);
    REQUIRE(rep.points.size() == 6);
    for (const char* label : {"PL", "PM", "PR", "FL", "FM", "FR"}) REQUIRE(rep.point(label) != nullptr);
    CHECK(rep.point("PL")->lambda < rep.point("PM")->lambda);
    CHECK(rep.point("PM")->lambda < rep.point("PR")->lambda);
    CHECK(rep.point("FL")->g2_sensing);
    CHECK_FALSE(rep.point("PM")->g2_sensing);
    CHECK(rep.enhancement.sensitivity[1].has_value());
    const auto best = best_g2_wavelength(rep);
    REQUIRE(best);
    CHECK(std::abs(*best - rep.point("FL")->lambda) < 0.005);
}

TEST_CASE("plasmon-only report has no Fano points and no enhancements") {
    SenseOptions opt;
    opt.fano.reset();
    const auto rep = build_report(ModelConfig{}, opt);
    CHECK(rep.partial);
    CHECK(rep.point("FL") == nullptr);
    CHECK(rep.point("PM") != nullptr);
    for (const auto& e : rep.enhancement.sensitivity) CHECK_FALSE(e);
}

TEST_CASE("missing special points flag a partial report") {
    SenseOptions opt;
    opt.plasmon = Window{520.0, 525.0, 0.01};
    opt.fano.reset();
    const auto rep = build_report(ModelConfig{}, opt);
    CHECK(rep.partial);
    CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("Fano features sit near the exciton line") {
    const auto f = fano_features(ModelConfig{});
    CHECK(f.dip < f.peak);
    CHECK(f.flux_dip < f.flux_peak);
    CHECK(std::abs(f.peak - 577.038) < 0.005);
}
