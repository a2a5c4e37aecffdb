#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "parityscope/cavity.hpp"
#include "parityscope/errors.hpp"

using namespace pscope;

namespace {

MeasurementSetup symmetric_setup(double chi = 0.5, int branch = 1) {
    MeasurementSetup s;
    s.model = manual_model(chi, chi);
    s.pulse = {0.5, 4.0, 1.0, 16.0};
    return with_parity_detunings(s, branch);
}

// α(t) for a drive switched on at t = 0: (I − e^{−Mt}) α_ss via the eigenbasis of M.
Eigen::Vector2cd step_response(const MeasurementSetup& s, int h, double t) {
    const Eigen::Matrix2cd m = drift_matrix(s, h);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m);
    const Eigen::Matrix2cd v = es.eigenvectors();
    Eigen::Vector2cd decay;
    for (int k = 0; k < 2; ++k) decay(k) = std::exp(-es.eigenvalues()(k) * t);
    const Eigen::Matrix2cd propagator = v * decay.asDiagonal() * v.inverse();
    const Eigen::Vector2cd b = -complex(0.0, 1.0) * s.pulse.amplitude *
                               Eigen::Vector2cd(std::sqrt(s.kappa1), std::sqrt(s.kappa2));
    const Eigen::Vector2cd ss = m.fullPivLu().solve(b);
    return (Eigen::Matrix2cd::Identity() - propagator) * ss;
}

} // namespace

TEST_CASE("drive envelope") {
    const DrivePulse p{0.5, 4.0, 1.0, 16.0};
    CHECK(drive_envelope(0.5, p) == 0.0);
    CHECK(drive_envelope(3.0, p) == doctest::Approx(0.25));
    CHECK(drive_envelope(10.0, p) == 0.5);
    CHECK(drive_envelope(20.0, p) == 0.0);
    for (double joint : {1.0, 5.0, 16.0, 20.0}) {
        const double e = 1e-7;
        CHECK(std::abs(drive_envelope(joint + e, p) - drive_envelope(joint - e, p)) < 1e-6);
        const double left = (drive_envelope(joint - e, p) - drive_envelope(joint - 2 * e, p)) / e;
        const double right = (drive_envelope(joint + 2 * e, p) - drive_envelope(joint + e, p)) / e;
        CHECK(std::abs(left - right) < 1e-5);
    }
    CHECK_THROWS_AS((DrivePulse{0.5, 4.0, 14.0, 16.0}.validate()), Error);
    CHECK_THROWS_AS(hamming_sign(4), Error);
    CHECK(hamming_sign(0) == 3);
    CHECK(hamming_sign(3) == -3);
}

TEST_CASE("no drive leaves the cavities empty") {
    MeasurementSetup s = symmetric_setup();
    s.pulse.amplitude = 0.0;
    for (const Trajectory& t : evolve_all(s, 28.0, 1e-3, {10})) {
        for (std::size_t k = 0; k < t.size(); ++k) {
            CHECK(t.a1[k] == complex(0.0));
            CHECK(t.a2[k] == complex(0.0));
            CHECK(t.out[k] == complex(0.0));
        }
    }
}

TEST_CASE("RK4 matches the matrix-exponential step response") {
    MeasurementSetup s;
    s.kappa1 = 1.0;
    s.kappa2 = 0.6;
    s.detuning1 = 0.3;
    s.detuning2 = -0.8;
    s.model = manual_model(0.4, 0.25, 0.1);
    s.pulse = {0.7, 0.0, 0.0, 100.0};
    for (int h = 0; h < 4; ++h) {
        const Trajectory t = evolve(s, h, 8.0, 1e-3, {100});
        for (std::size_t k = 0; k < t.size(); ++k) {
            const Eigen::Vector2cd exact = step_response(s, h, t.time[k]);
            CHECK(std::abs(t.a1[k] - exact(0)) < 1e-10);
            CHECK(std::abs(t.a2[k] - exact(1)) < 1e-10);
        }
    }
}

TEST_CASE("RK4 is fourth order") {
    MeasurementSetup s = symmetric_setup(0.4);
    EvolveOptions o{1, false, false};
    const double t_final = 24.0;
    const complex ref = evolve(s, 1, t_final, 0.1 / 32, o).a1.back();
    std::vector<double> steps = {0.2, 0.1, 0.05}, logs_dt, logs_err;
    for (double dt : steps) {
        logs_dt.push_back(std::log(dt));
        logs_err.push_back(std::log(std::abs(evolve(s, 1, t_final, dt, o).a1.back() - ref)));
    }
    const double p1 = (logs_err[1] - logs_err[0]) / (logs_dt[1] - logs_dt[0]);
    const double p2 = (logs_err[2] - logs_err[1]) / (logs_dt[2] - logs_dt[1]);
    CHECK(p1 == doctest::Approx(4.0).epsilon(0.075));
    CHECK(p2 == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("long-time state relaxes to the steady state") {
    MeasurementSetup s = symmetric_setup(0.5);
    s.pulse = {0.5, 4.0, 1.0, 100.0};
    for (int h = 0; h < 4; ++h) {
        const Trajectory t = evolve(s, h, 90.0, 1e-3, {1000});
        const Eigen::Vector2cd ss = steady_state(s, h);
        CHECK(std::abs(t.a1.back() - ss(0)) < 1e-8 * ss.norm());
        CHECK(std::abs(t.a2.back() - ss(1)) < 1e-8 * ss.norm());
        const complex out = s.pulse.amplitude - complex(0.0, 1.0) * (ss(0) + ss(1));
        CHECK(std::abs(t.out.back() - out) < 1e-8);
        CHECK(std::abs(out - reflection(s, h) * s.pulse.amplitude) < 1e-12);
    }
}

TEST_CASE("reflection is unimodular and collapses onto parity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        MeasurementSetup s;
        s.kappa1 = 0.2 + std::abs(u(rng)) * 2.0;
        s.kappa2 = 0.2 + std::abs(u(rng)) * 2.0;
        s.detuning1 = 2.0 * u(rng);
        s.detuning2 = 2.0 * u(rng);
        s.model = manual_model(u(rng), u(rng), 0.5 * u(rng));
        for (int h = 0; h < 4; ++h) {
            const complex r = reflection(s, h);
            CHECK(std::abs(std::abs(r) - 1.0) < 1e-12);
            // 1 − kᵀ M⁻¹ k from the linear response
            const Eigen::Vector2cd kv(std::sqrt(s.kappa1), std::sqrt(s.kappa2));
            const complex direct = 1.0 - kv.dot(drift_matrix(s, h).fullPivLu().solve(kv));
            CHECK(std::abs(r - direct) < 1e-10);
        }
        if (s.model.parity_discriminant() > 1e-3) {
            for (int branch : {1, -1}) {
                const MeasurementSetup p = with_parity_detunings(s, branch);
                std::array<complex, 4> r{};
                for (int h = 0; h < 4; ++h) r[h] = reflection(p, h);
                CHECK(std::abs(r[0] - r[2]) < 1e-12);
                CHECK(std::abs(r[1] - r[3]) < 1e-12);
                CHECK(std::abs(r[0] - r[1]) > 1e-6);
            }
        }
    }
}

TEST_CASE("evolve guards") {
    MeasurementSetup s = symmetric_setup();
    CHECK_THROWS_AS(evolve(s, 0, 1.00005, 1e-3), Error);
    CHECK_THROWS_AS(evolve(s, 0, 1.0, 1e-3, {3}), Error);
    try {
        evolve(s, 0, 10.0, 0.05);
        FAIL("expected StepTooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StepTooLarge);
    }
    s.kappa2 = 0.0;
    CHECK_THROWS_AS(evolve(s, 0, 1.0, 1e-3), Error);
    CHECK(default_step(symmetric_setup()) == 1e-3);
}

TEST_CASE("parallel and sequential trajectories agree bitwise") {
    const MeasurementSetup s = symmetric_setup(0.7, -1);
    const auto all = evolve_all(s, 28.0, 1e-3, {10});
    for (int h = 0; h < 4; ++h) {
        const Trajectory one = evolve(s, h, 28.0, 1e-3, {10});
        REQUIRE(one.size() == 2801);
        CHECK(one.a1 == all[h].a1);
        CHECK(one.out == all[h].out);
    }
}
