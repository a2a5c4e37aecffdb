#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "parityscope/dispersive.hpp"
#include "parityscope/errors.hpp"
#include "parityscope/scenario.hpp"
#include "parityscope/units.hpp"

using namespace pscope;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Config;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("transmon levels follow the Duffing approximation") {
    const TransmonLevels lv = transmon_levels({15.0, 0.3});
    CHECK(lv.frequency == doctest::Approx(5.7).epsilon(1e-14));
    CHECK(lv.anharmonicity == -0.3);
    CHECK(kind_of([] { transmon_levels({-1.0, 0.3}); }) == ErrorKind::Config);
}

TEST_CASE("transmon shifts match second-order sums") {
    const TransmonLevels lv{5.0, -0.3};
    const QubitCavityCoupling c{0.05, 0.07, 1.0, -1.2};
    const DispersiveModel m = transmon_dispersive(lv, c);
    // χ_i = g²/Δ − g²/(Δ+δ), written as the two virtual transitions
    const double chi1 = c.g1 * c.g1 / c.detuning1 - c.g1 * c.g1 / (c.detuning1 + lv.anharmonicity);
    const double chi2 = c.g2 * c.g2 / c.detuning2 - c.g2 * c.g2 / (c.detuning2 + lv.anharmonicity);
    CHECK(rel(m.chi1, chi1) < 1e-14);
    CHECK(rel(m.chi2, chi2) < 1e-14);
    CHECK(m.provenance == Provenance::Transmon);

    SUBCASE("identical branches give a perfect square") {
        const DispersiveModel s = transmon_dispersive(lv, {0.05, 0.05, 1.0, 1.0});
        CHECK(s.switch_coupling == doctest::Approx(s.chi1).epsilon(1e-14));
        CHECK(std::abs(s.parity_discriminant()) <= 1e-15 * s.chi1 * s.chi1);
    }
    SUBCASE("uncoupled resonator") {
        const DispersiveModel s = transmon_dispersive(lv, {0.05, 0.0, 1.0, 1.0});
        CHECK(s.chi2 == 0.0);
        CHECK(s.switch_coupling == 0.0);
    }
    SUBCASE("two-level limit converges at first order in 1/delta") {
        double previous = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double delta = -30.0 * std::pow(10.0, k);
            const DispersiveModel s = transmon_dispersive(TransmonLevels{5.0, delta}, c);
            const double err = std::abs(s.chi1 - c.g1 * c.g1 / c.detuning1);
            if (k > 0) CHECK(previous / err == doctest::Approx(10.0).epsilon(0.15));
            previous = err;
        }
    }
    SUBCASE("detuning on the anharmonic pole") {
        CHECK(kind_of([&] { transmon_dispersive(lv, {0.05, 0.05, 0.3, 1.0}); }) == ErrorKind::DegenerateDenominator);
    }
    SUBCASE("large ratios carry warnings") {
        CHECK(transmon_dispersive(lv, {0.5, 0.05, 1.0, 1.0}).warnings.size() >= 1);
        CHECK(m.warnings.empty());
    }
}

TEST_CASE("transmon switch never leaves room for the parity condition") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int unsatisfiable = 0, checked = 0;
    for (int k = 0; k < 2000; ++k) {
        const double ec = 0.2 + 0.2 * u(rng);
        const TransmonLevels lv = transmon_levels({ec * (30.0 + 70.0 * u(rng)), ec});
        const double sign1 = u(rng) < 0.5 ? -1.0 : 1.0, sign2 = u(rng) < 0.5 ? -1.0 : 1.0;
        // both Δ_i and Δ_i + δ share a sign
        const double d1 = sign1 > 0 ? ec + 0.5 + 2.0 * u(rng) : -(0.5 + 2.0 * u(rng));
        const double d2 = sign2 > 0 ? ec + 0.5 + 2.0 * u(rng) : -(0.5 + 2.0 * u(rng));
        const double g1 = 0.08 * u(rng) * std::min(std::abs(d1), std::abs(d1 - ec));
        const double g2 = 0.08 * u(rng) * std::min(std::abs(d2), std::abs(d2 - ec));
        const DispersiveModel m = transmon_dispersive(lv, {g1, g2, d1, d2});
        ++checked;
        CHECK(m.switch_coupling * m.switch_coupling >= m.chi1 * m.chi2);
        try {
            parity_detunings(m, 1.0, 1.0);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParityConditionUnsatisfiable) ++unsatisfiable;
        }
    }
    CHECK(unsatisfiable == checked);
}

TEST_CASE("mixing angle and dressed frequencies") {
    TcqSpec spec;
    spec.omega_plus = 5.2;
    spec.omega_minus = 4.9;
    spec.coupling = 0.15;

    SUBCASE("linear limit matches the 2x2 eigenproblem") {
        Eigen::Matrix2d h;
        h << spec.omega_plus, spec.coupling, spec.coupling, spec.omega_minus;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
        const DressedTcq d = tcq_mixing(spec);
        const double hi = std::max(d.omega_plus, d.omega_minus), lo = std::min(d.omega_plus, d.omega_minus);
        CHECK(std::abs(hi - es.eigenvalues()(1)) < 1e-13);
        CHECK(std::abs(lo - es.eigenvalues()(0)) < 1e-13);
        CHECK(d.delta_plus == 0.0);
        CHECK(d.delta_cross == 0.0);
    }
    SUBCASE("resonance gives a quarter turn") {
        spec.omega_plus = spec.omega_minus = 5.0;
        spec.delta_plus = spec.delta_minus = -0.3;
        spec.coupling = -0.4;
        CHECK(tcq_mixing(spec).mixing_angle == std::numbers::pi / 4.0);
        spec.coupling = 0.4;
        const DressedTcq d = tcq_mixing(spec);
        CHECK(d.mixing_angle == -std::numbers::pi / 4.0);
        CHECK(d.delta_cross == doctest::Approx(-0.3).epsilon(1e-14));
        CHECK(d.delta_plus == doctest::Approx(-0.15).epsilon(1e-14));
    }
    SUBCASE("no coupling leaves the modes alone") {
        spec.coupling = 0.0;
        spec.delta_plus = -0.2;
        spec.delta_minus = -0.25;
        const DressedTcq d = tcq_mixing(spec);
        CHECK(d.omega_plus == doctest::Approx(spec.omega_plus).epsilon(1e-15));
        CHECK(d.omega_minus == doctest::Approx(spec.omega_minus).epsilon(1e-15));
        CHECK(d.delta_cross == 0.0);
        CHECK(d.delta_plus == doctest::Approx(-0.2));
        CHECK(d.delta_minus == doctest::Approx(-0.25));
    }
    SUBCASE("rotation preserves coupling norms") {
        spec.g_plus = {0.05, -0.03};
        spec.g_minus = {0.02, 0.07};
        const DressedTcq d = effective_couplings(spec, tcq_mixing(spec));
        for (int i = 0; i < 2; ++i) {
            const double before = spec.g_plus[i] * spec.g_plus[i] + spec.g_minus[i] * spec.g_minus[i];
            const double after = d.g_plus[i] * d.g_plus[i] + d.g_minus[i] * d.g_minus[i];
            CHECK(rel(after, before) < 1e-12);
        }
    }
}

TEST_CASE("sign-flip couplings cancel the switch exactly") {
    const DressedTcq base = design_dressed_tcq(units::mhz_to_angular(6000), units::mhz_to_angular(-400),
                                               units::mhz_to_angular(-300));
    const ResonatorPair res{units::mhz_to_angular(7500), units::mhz_to_angular(7490)};
    for (auto branch : {TransitionBranch::Resonator1Minus, TransitionBranch::Resonator2Minus}) {
        const DressedTcq d = with_sign_flip_couplings(base, {units::mhz_to_angular(100), units::mhz_to_angular(80)}, branch);
        const DispersiveModel m = tcq_dispersive(tcq_state_shifts(d, res));
        CHECK(m.switch_coupling == 0.0);
        CHECK(m.static_coupling == 0.0);
        CHECK(m.chi1 < 0.0);
        CHECK(m.chi2 < 0.0);
        CHECK(m.parity_discriminant() > 0.0);
    }
    CHECK(sign_flip_couplings(1.0, 2.0, TransitionBranch::Resonator1Minus) == std::array<double, 4>{1.0, 1.0, 2.0, -2.0});
    CHECK(sign_flip_couplings(1.0, 2.0, TransitionBranch::Resonator2Minus) == std::array<double, 4>{1.0, -1.0, 2.0, 2.0});
}

TEST_CASE("coupling inversion round-trips the target shifts") {
    const double kappa = units::mhz_to_angular(5);
    const ResonatorPair res{units::mhz_to_angular(7500), units::mhz_to_angular(7491)};
    const DressedTcq base = design_dressed_tcq(units::mhz_to_angular(5600), units::mhz_to_angular(-400),
                                               units::mhz_to_angular(-300));
    for (auto branch : {TransitionBranch::Resonator1Minus, TransitionBranch::Resonator2Minus}) {
        const BareCouplings g = solve_couplings_for_chi(-0.5 * kappa, -0.3 * kappa, base, res, branch);
        const DispersiveModel m = tcq_dispersive(tcq_state_shifts(with_sign_flip_couplings(base, g, branch), res));
        CHECK(rel(m.chi1, -0.5 * kappa) < 1e-12);
        CHECK(rel(m.chi2, -0.3 * kappa) < 1e-12);
    }
    CHECK(kind_of([&] { solve_couplings_for_chi(0.5 * kappa, -0.5 * kappa, base, res); }) ==
          ErrorKind::NegativeDiscriminant);
}

TEST_CASE("parity detunings") {
    SUBCASE("equal shifts") {
        const ParityDetunings d = parity_detunings(manual_model(0.4, 0.4), 1.0, 1.0);
        CHECK(d.upper[0] == doctest::Approx(std::sqrt(3.0) * 0.4).epsilon(1e-14));
        CHECK(d.upper[1] == doctest::Approx(-std::sqrt(3.0) * 0.4).epsilon(1e-14));
        CHECK(d.lower[0] == doctest::Approx(-d.upper[0]));
        CHECK_FALSE(d.degenerate);
    }
    SUBCASE("product and ratio identities") {
        const DispersiveModel m = manual_model(-0.7, -0.3, 0.2);
        const ParityDetunings d = parity_detunings(m, 2.0, 0.5);
        CHECK(d.upper[0] * d.upper[1] == doctest::Approx(-3.0 * m.parity_discriminant()).epsilon(1e-13));
        CHECK(d.upper[0] / d.upper[1] == doctest::Approx(-2.0 / 0.5).epsilon(1e-13));
    }
    SUBCASE("boundary and obstruction") {
        CHECK(parity_detunings(manual_model(0.5, 0.5, 0.5), 1.0, 1.0).degenerate);
        CHECK(kind_of([] { parity_detunings(manual_model(0.5, 0.5, 0.6), 1.0, 1.0); }) ==
              ErrorKind::ParityConditionUnsatisfiable);
    }
}

TEST_CASE("Purcell lifetime") {
    const double kappa = units::mhz_to_angular(5);
    const PurcellTime t = purcell_time(kappa, units::mhz_to_angular(106.6), units::mhz_to_angular(6000),
                                       units::mhz_to_angular(7500));
    CHECK(t.times_kappa == doctest::Approx(100.1).epsilon(0.02));
    CHECK(t.seconds * kappa == doctest::Approx(t.times_kappa));
    CHECK(purcell_time(kappa, 0.0, 1.0, 2.0).unlimited());
    CHECK(kind_of([&] { purcell_time(kappa, 1.0, 2.0, 2.0); }) == ErrorKind::DegenerateDenominator);
}

TEST_CASE("shipped scenarios reproduce the published coupling and Purcell tables") {
    const double g_published[3][2] = {{106.6, 76.4}, {132.5, 113.3}, {158.4, 150.0}};
    const double tp_symmetric[3] = {100.1, 103.7, 106.2};
    const double tp_asymmetric[3] = {166.8, 172.8, 177.0};

    const DerivedScenario sym = derive(load_preset("paper-sec5-symmetric"));
    REQUIRE(sym.devices.size() == 3);
    CHECK(sym.matched);
    CHECK(units::angular_to_mhz(sym.resonators.omega2 - sym.resonators.omega1) ==
          doctest::Approx(2.0 * std::sqrt(3.0) * -2.5).epsilon(1e-12));
    for (int k = 0; k < 3; ++k) {
        const DerivedDevice& d = sym.devices[k];
        REQUIRE(d.couplings);
        CHECK(rel(units::angular_to_mhz(d.couplings->g1), g_published[k][0]) < 0.02);
        CHECK(rel(units::angular_to_mhz(d.couplings->g2), g_published[k][1]) < 0.02);
        REQUIRE(d.purcell);
        CHECK(rel(d.purcell->times_kappa, tp_symmetric[k]) < 0.02);
        CHECK(d.model.switch_coupling == 0.0);
    }
    const DerivedScenario asym = derive(load_preset("paper-sec5-asymmetric"));
    for (int k = 0; k < 3; ++k) CHECK(rel(asym.devices[k].purcell->times_kappa, tp_asymmetric[k]) < 0.02);
}
