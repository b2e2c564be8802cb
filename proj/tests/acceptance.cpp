// Acceptance suite: one [PASS]/[FAIL] line per criterion, measured values indented below.
// Usage: acceptance [k]   (k = 1..8, all when omitted). Exit status is nonzero if any selected criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "fanosense/analytic.hpp"
#include "fanosense/io.hpp"
#include "fanosense/lindblad.hpp"
#include "fanosense/photodetection.hpp"
#include "fanosense/sensing.hpp"
#include "fanosense/units.hpp"
#include "fanosense/validation.hpp"
#include "properties.hpp"

using namespace fanosense;
using io::format_double;

namespace {

struct Line {
    std::string what;
    double measured;
    std::string target;
    bool pass;
};

struct Criterion {
    std::string title;
    std::vector<Line> lines;

    void within(const std::string& what, double measured, double want, double tol) {
        lines.push_back({what, measured, format_double(want) + " +- " + format_double(tol),
                         std::isfinite(measured) && std::abs(measured - want) <= tol});
    }
    void relative(const std::string& what, double measured, double want, double frac) {
        lines.push_back({what, measured, format_double(want) + " +- " + format_double(100 * frac) + "%",
                         std::isfinite(measured) && std::abs(measured - want) <= frac * std::abs(want)});
    }
    void below(const std::string& what, double measured, double limit) {
        lines.push_back({what, measured, "< " + format_double(limit), std::isfinite(measured) && measured < limit});
    }
    void holds(const std::string& what, bool ok, const std::string& note = "") {
        lines.push_back({what, ok ? 1.0 : 0.0, note.empty() ? "true" : note, ok});
    }
    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return !lines.empty();
    }
};

const ModelConfig kDefault{};

double analytic_flux(double lambda) {
    const auto op = operating_point(kDefault, lambda);
    return analytic::solve(op).n_photon * op.plasmon.gamma_r * units::meV_per_ps;
}

Criterion c1() {
    Criterion c{"derived parameters", {}};
    const auto p = derived_plasmon(kDefault);
    c.within("lambda_pl [nm]", p.lambda_pl, 535.5, 1.0);
    c.within("g [meV]", p.g, 4.8, 0.3);
    c.within("gamma_pl [meV]", p.gamma_pl, 72.0, 2.0);
    c.within("1/gamma_r [ps]", units::lifetime_ps(p.gamma_r), 4.29, 0.2);
    c.within("1/gamma_pl [fs]", units::lifetime_ps(p.gamma_pl) * 1e3, 5.75, 0.2);
    c.within("chi/mu", p.chi / kDefault.qd.mu, 64.0, 3.0);
    return c;
}

Criterion c2() {
    Criterion c{"spectrum structure", {}};
    const auto f = sensing::fano_features(kDefault);
    c.within("Fano dip [nm]", f.dip, 576.9, 0.5);
    c.within("Fano peak [nm]", f.peak, 577.038, 0.005);
    const double lambda_pl = derived_plasmon(kDefault).lambda_pl;
    c.within("flux(LSPR)/flux(Fano peak)", analytic_flux(lambda_pl) / analytic_flux(f.peak), 1.0, 0.15);
    return c;
}

Criterion c3() {
    Criterion c{"correlations", {}};
    const auto f = sensing::fano_features(kDefault);
    const auto s = analytic::solve(operating_point(kDefault, f.peak));
    c.within("analytic g2(0) at Fano peak", s.g2_0, 0.17, 0.03);
    c.holds("g4(0) < g3(0) < g2(0) < 1 at Fano peak", s.g4_0 < s.g3_0 && s.g3_0 < s.g2_0 && s.g2_0 < 1.0,
            format_double(s.g4_0) + " < " + format_double(s.g3_0) + " < " + format_double(s.g2_0));
    double worst = 0.0;
    for (const double lambda : sensing::make_grid(520.0, 555.0, 0.01))
        worst = std::max(worst, std::abs(analytic::solve(operating_point(kDefault, lambda)).g2_0 - 1.0));
    c.within("max |g2(0) - 1| over 520-555 nm", worst, 0.0, 1e-3);

    const lindblad::HilbertSpace space{10};
    const double lambda_pl = derived_plasmon(kDefault).lambda_pl;
    const std::pair<const char*, double> regions[] = {{"LSPR", lambda_pl}, {"Fano dip", f.dip}, {"Fano peak", f.peak}};
    for (const auto& [name, lambda] : regions) {
        const auto op = operating_point(kDefault, lambda);
        const lindblad::Liouvillian L(lindblad::build_hamiltonian(op.drive, op.plasmon, space),
                                      {op.plasmon.gamma_pl, op.drive.gamma_ex_meV()}, space);
        const auto rho = lindblad::steady_state(L);
        const auto b = lindblad::emission_operator(op.plasmon, op.drive, space, Emission::plasmon);
        const std::vector<double> tau{1000.0};
        c.within(std::string("Lindblad g2(tau = 1000 ps) at ") + name, lindblad::correlation_tau(L, rho, 2, tau, b)[0], 1.0,
                 0.02);
    }
    return c;
}

Criterion c4() {
    Criterion c{"cross-engine equivalence", {}};
    const double lambda_pl = derived_plasmon(kDefault).lambda_pl;
    const double peak = sensing::fano_features(kDefault).peak;
    double dn = 0.0, dg = 0.0, conv = 0.0;
    std::vector<double> grid(21);
    for (int k = 0; k < 21; ++k) grid[k] = lambda_pl + (peak - lambda_pl) * k / 20.0;
    std::vector<double> en(21), eg(21), ec(21);
    sensing::parallel_for(21, 0, [&](std::size_t k) {
        const auto a = sensing::evaluate_point(kDefault, grid[k], kDefault.environment.n, sensing::Engine::analytic);
        const auto l = sensing::evaluate_point(kDefault, grid[k], kDefault.environment.n, sensing::Engine::lindblad);
        en[k] = std::abs(a.n_photon - l.n_photon) / l.n_photon;
        eg[k] = std::abs(a.g2 - l.g2) / l.g2;
        const std::vector<int> dims{8, 10, 12};
        const auto r = lindblad::convergence_check(kDefault, grid[k], dims);
        for (const auto& e : r.entries) ec[k] = std::max({ec[k], e.rel_change_n, e.rel_change_g2});
    });
    for (int k = 0; k < 21; ++k) {
        dn = std::max(dn, en[k]);
        dg = std::max(dg, eg[k]);
        conv = std::max(conv, ec[k]);
    }
    c.below("max rel |<a^dag a>| analytic vs N=10", dn, 0.01);
    c.below("max rel |g2(0)| analytic vs N=10", dg, 0.03);
    c.below("max rel change N = 8 -> 10 -> 12", conv, 1e-4);
    return c;
}

Criterion c5() {
    Criterion c{"photocounts", {}};
    const double lambda_pl = derived_plasmon(kDefault).lambda_pl;
    const auto r = sensing::evaluate_point(kDefault, lambda_pl, kDefault.environment.n, sensing::Engine::analytic);
    c.relative("<m>(LSPR)", r.stats.m_mean, 12.42e-5, 0.10);
    c.relative("sigma_m(LSPR, 1 s)", r.stats.sigma_m, 1.93e-8, 0.10);
    const double m = r.stats.m_mean;
    c.holds("Delta m == sqrt(<m>) at g2 = 1", photodetection::noise_m(m, 1.0) == std::sqrt(m),
            "exact equality at m = " + format_double(m));
    return c;
}

Criterion c6() {
    Criterion c{"Table 2 reproduction", {}};
    const auto rep = sensing::build_report(kDefault, sensing::SenseOptions{});
    struct Row {
        const char* label;
        double lambda, tol_lambda, S_I, dn_I, S_II, dn_II;
    };
    const Row rows[] = {
        {"PL", 530.770, 0.05, 5.87e-4, 3.90e-5, NAN, NAN},     {"PM", 535.500, 0.05, 3.93e-4, 6.90e-5, NAN, NAN},
        {"PR", 540.270, 0.05, 11.37e-4, 2.10e-5, NAN, NAN},    {"FL", 577.031, 0.002, 4.04e-4, 4.60e-5, 3.85, 1.3e-3},
        {"FM", 577.038, 0.002, 4.15e-4, 5.50e-5, 1.05, 2.8e-3}, {"FR", 577.045, 0.002, 12.17e-4, 2.10e-5, 0.50, 7.6e-3},
    };
    for (const auto& row : rows) {
        const auto* p = rep.point(row.label);
        const std::string l = row.label;
        if (!p) {
            c.holds(l + " located", false, "special point missing");
            continue;
        }
        c.within(l + " lambda [nm]", p->lambda, row.lambda, row.tol_lambda);
        c.relative("S_I @" + l, p->S_I.value, row.S_I, 0.15);
        c.relative("dn_I @" + l, p->dn_I.value, row.dn_I, 0.20);
        if (std::isfinite(row.S_II)) {
            c.relative("S_I-I @" + l, p->S_II.value, row.S_II, 0.15);
            c.relative("dn_I-I @" + l, p->dn_II.value, row.dn_II, 0.25);
        }
    }
    const auto& e = rep.enhancement;
    c.within("E_SM", e.sensitivity[1].value_or(NAN), 1.06, 0.1);
    c.within("E_dnM", e.resolution[1].value_or(NAN), 1.25, 0.15);
    return c;
}

Criterion c7() {
    Criterion c{"property suites", {}};
    const auto w = props::cptp_over_fuzz_set();
    c.below("fuzz set (20): max |Tr rho - 1|", w.trace, 1e-12);
    c.below("fuzz set (20): max ||rho - rho^dag||", w.hermiticity, 1e-12);
    c.below("fuzz set (20): max negative eigenvalue", w.negativity, 1e-10);
    c.below("fuzz set (20): max ||L rho||", w.residual, 1e-10);
    double fidelity = 1.0;
    for (double lambda : {520.0, derived_plasmon(kDefault).lambda_pl, 577.038})
        fidelity = std::min(fidelity, validation::coherent_state_fidelity(kDefault, lambda, 10));
    c.below("coherent-state infidelity at g = Omega_ex = 0", 1.0 - fidelity, 1e-6);
    c.below("scaling laws r^3, r^3/2, d^-3, xi^2 (max rel)", props::scaling_law_worst(), 1e-12);
    c.below("semigroup exp(L(t1+t2)) vs exp(L t2)exp(L t1)", props::semigroup_worst(), 1e-8);
    std::string detail;
    const bool same = props::byte_identical_reruns(&detail);
    c.holds("byte-identical reruns", same, detail);
    return c;
}

Criterion c8() {
    Criterion c{"linearity over n = 1.3330-1.3334", {}};
    const auto rep = sensing::build_report(kDefault, sensing::SenseOptions{});
    for (const char* label : {"PL", "PM", "PR", "FL", "FM", "FR"}) {
        const auto* p = rep.point(label);
        if (!p) {
            c.holds(std::string(label) + " located", false, "special point missing");
            continue;
        }
        c.below(std::string("<m> nonlinearity / range @") + label, p->linearity_m, 0.02);
        c.below(std::string("g2(0) nonlinearity / range @") + label, p->linearity_g2, 0.02);
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Criterion()>> all{c1, c2, c3, c4, c5, c6, c7, c8};
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > 8) {
            std::fprintf(stderr, "usage: acceptance [1-8]\n");
            return 2;
        }
    }
    bool ok = true;
    for (int k = 1; k <= 8; ++k) {
        if (only && k != only) continue;
        Criterion c;
        try {
            c = all[k - 1]();
        } catch (const std::exception& e) {
            c.title = "aborted";
            c.holds("no exception", false, e.what());
        }
        ok = ok && c.pass();
        std::printf("[%s] criterion %d: %s\n", c.pass() ? "PASS" : "FAIL", k, c.title.c_str());
        for (const auto& l : c.lines)
            std::printf("    %-4s %-48s measured %-24s target %s\n", l.pass ? "ok" : "MISS", l.what.c_str(),
                        format_double(l.measured).c_str(), l.target.c_str());
    }
    return ok ? 0 : 1;
}
