#include "parityscope/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parityscope/errors.hpp"

namespace pscope {

namespace {

using Eigen::Matrix2cd;
using Eigen::Vector2cd;

constexpr complex I{0.0, 1.0};

Eigen::Vector2d port_vector(const MeasurementSetup& s) { return {std::sqrt(s.kappa1), std::sqrt(s.kappa2)}; }

double fastest_rate(const MeasurementSetup& s) {
    double rate = std::max(s.kappa1, s.kappa2);
    for (int h = 0; h < 4; ++h) {
        auto m = cavity_hamiltonian(s, h);
        rate = std::max({rate, std::abs(m(0, 0)) + std::abs(m(0, 1)), std::abs(m(1, 1)) + std::abs(m(1, 0))});
    }
    return rate;
}

// Plain RK4 over n steps, recording every stride-th state.
Trajectory integrate(const MeasurementSetup& s, int hamming, long steps, double dt, int stride) {
    const Matrix2cd m = drift_matrix(s, hamming);
    const Vector2cd drive = -I * port_vector(s).cast<complex>();
    auto rhs = [&](double t, const Vector2cd& a) -> Vector2cd {
        return -(m * a) + drive * drive_envelope(t, s.pulse);
    };
    Trajectory traj;
    traj.hamming = hamming;
    const std::size_t points = static_cast<std::size_t>(steps / stride) + 1;
    traj.time.reserve(points);
    traj.a1.reserve(points);
    traj.a2.reserve(points);
    Vector2cd a = Vector2cd::Zero();
    traj.time.push_back(0.0);
    traj.a1.push_back(a(0));
    traj.a2.push_back(a(1));
    for (long k = 0; k < steps; ++k) {
        const double t = k * dt;
        const Vector2cd k1 = rhs(t, a);
        const Vector2cd k2 = rhs(t + dt / 2.0, a + dt / 2.0 * k1);
        const Vector2cd k3 = rhs(t + dt / 2.0, a + dt / 2.0 * k2);
        const Vector2cd k4 = rhs(t + dt, a + dt * k3);
        a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((k + 1) % stride == 0) {
            traj.time.push_back((k + 1) * dt);
            traj.a1.push_back(a(0));
            traj.a2.push_back(a(1));
        }
    }
    traj.out = output_field(traj, s);
    return traj;
}

} // namespace

void DrivePulse::validate() const {
    if (t_on < 0.0 || ramp < 0.0 || t_on + ramp > t_off)
        throw Error(ErrorKind::Config, "pulse needs 0 <= t_on and t_on + sigma <= t_off");
    if (!std::isfinite(amplitude)) throw Error(ErrorKind::Config, "pulse amplitude must be finite");
}

double drive_envelope(double t, const DrivePulse& p) {
    if (t < p.t_on || t >= p.t_off + p.ramp) return 0.0;
    if (t < p.t_on + p.ramp) return p.amplitude / 2.0 * (1.0 - std::cos(std::numbers::pi / p.ramp * (t - p.t_on)));
    if (t < p.t_off) return p.amplitude;
    return p.amplitude / 2.0 * (1.0 + std::cos(std::numbers::pi / p.ramp * (t - p.t_off)));
}

int hamming_sign(int hamming) {
    if (hamming < 0 || hamming > 3) throw Error(ErrorKind::Config, "Hamming weight must be 0..3");
    return 3 - 2 * hamming;
}

void MeasurementSetup::validate() const {
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw Error(ErrorKind::Config, "kappa_1 and kappa_2 must be positive");
    pulse.validate();
}

MeasurementSetup with_parity_detunings(MeasurementSetup setup, int sign) {
    const auto d = parity_detunings(setup.model, setup.kappa1, setup.kappa2).branch(sign);
    setup.detuning1 = d[0];
    setup.detuning2 = d[1];
    return setup;
}

Eigen::Matrix2d cavity_hamiltonian(const MeasurementSetup& s, int hamming, double drive_offset) {
    const double sign = hamming_sign(hamming);
    Eigen::Matrix2d h;
    h << s.detuning1 + drive_offset + s.model.chi1 * sign, s.model.switch_coupling * sign,
        s.model.switch_coupling * sign, s.detuning2 + drive_offset + s.model.chi2 * sign;
    return h;
}

Eigen::Matrix2cd drift_matrix(const MeasurementSetup& s, int hamming, double drive_offset) {
    const Eigen::Vector2d k = port_vector(s);
    return I * cavity_hamiltonian(s, hamming, drive_offset).cast<complex>() +
           (0.5 * k * k.transpose()).cast<complex>();
}

double default_step(const MeasurementSetup& setup) { return 1e-3 / std::max(setup.kappa1, setup.kappa2); }

Trajectory evolve(const MeasurementSetup& setup, int hamming, double t_final, double dt, const EvolveOptions& options) {
    setup.validate();
    hamming_sign(hamming);
    if (!(dt > 0.0) || !(t_final >= 0.0) || options.stride < 1)
        throw Error(ErrorKind::Config, "evolve needs dt > 0, t_final >= 0 and stride >= 1");
    const long steps = std::lround(t_final / dt);
    if (std::abs(steps * dt - t_final) > 1e-9 * std::max(t_final, dt))
        throw Error(ErrorKind::Config, "t_final must be an integer number of steps");
    if (steps % options.stride != 0) throw Error(ErrorKind::Config, "step count must be a multiple of the stride");
    if (options.check_step && dt * fastest_rate(setup) > 0.01 * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "dt = " << dt << " exceeds 0.01 / " << fastest_rate(setup);
        throw Error(ErrorKind::StepTooLarge, msg.str());
    }
    Trajectory traj = integrate(setup, hamming, steps, dt, options.stride);
    if (options.probe) {
        const Trajectory fine = integrate(setup, hamming, 2 * steps, dt / 2.0, 2 * options.stride);
        double scale = 0.0, diff = 0.0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            scale = std::max({scale, std::abs(traj.a1[k]), std::abs(traj.a2[k])});
            diff = std::max({diff, std::abs(traj.a1[k] - fine.a1[k]), std::abs(traj.a2[k] - fine.a2[k])});
        }
        if (diff > 1e-8 * scale) {
            std::ostringstream msg;
            msg << "half-step probe changed amplitudes by " << diff / scale << " relative";
            throw Error(ErrorKind::StepTooLarge, msg.str());
        }
    }
    return traj;
}

std::array<Trajectory, 4> evolve_all(const MeasurementSetup& setup, double t_final, double dt,
                                     const EvolveOptions& options) {
    std::array<Trajectory, 4> out;
    std::array<std::exception_ptr, 4> errors{};
#pragma omp parallel for
    for (int h = 0; h < 4; ++h) {
        try {
            out[h] = evolve(setup, h, t_final, dt, options);
        } catch (...) {
            errors[h] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<complex> output_field(const Trajectory& traj, const MeasurementSetup& s) {
    const double k1 = std::sqrt(s.kappa1), k2 = std::sqrt(s.kappa2);
    std::vector<complex> out(traj.size());
    for (std::size_t n = 0; n < traj.size(); ++n)
        out[n] = drive_envelope(traj.time[n], s.pulse) - I * (k1 * traj.a1[n] + k2 * traj.a2[n]);
    return out;
}

Eigen::Vector2cd steady_state(const MeasurementSetup& s, int hamming, double drive_offset) {
    s.validate();
    const Matrix2cd m = drift_matrix(s, hamming, drive_offset);
    const double scale = m.cwiseAbs().maxCoeff();
    if (std::abs(m.determinant()) <= 1e-14 * scale * scale)
        throw Error(ErrorKind::SingularResponseMatrix, "response matrix is singular");
    const Vector2cd rhs = -I * s.pulse.amplitude * port_vector(s).cast<complex>();
    return m.partialPivLu().solve(rhs);
}

complex reflection(const MeasurementSetup& s, int hamming, double drive_offset) {
    s.validate();
    const Eigen::Matrix2d h = cavity_hamiltonian(s, hamming, drive_offset);
    const double n = s.kappa1 * h(1, 1) + s.kappa2 * h(0, 0) - 2.0 * std::sqrt(s.kappa1 * s.kappa2) * h(0, 1);
    const double y = h.determinant();
    const complex den{n, 2.0 * y};
    const double natural = s.kappa1 + s.kappa2 + h.cwiseAbs().maxCoeff();
    if (std::abs(den) < 1e-15 * natural * natural)
        throw Error(ErrorKind::DegenerateResponse, "reflection denominator vanishes");
    return 1.0 - 2.0 * n / den;
}

} // namespace pscope
