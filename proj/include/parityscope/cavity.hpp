#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "parityscope/dispersive.hpp"

namespace pscope {

using complex = std::complex<double>;

/// Cosine-ramped square pulse: rises over [t_on, t_on+σ], falls over [t_off, t_off+σ].
struct DrivePulse {
    double amplitude = 0.0; // ε_ss
    double ramp = 4.0;      // σ
    double t_on = 1.0;
    double t_off = 16.0;

    void validate() const;
    double end() const { return t_off + ramp; }
};

double drive_envelope(double t, const DrivePulse& pulse);

/// Number of excited qubits, 0..3; enters the dynamics as s = 3 − 2h.
int hamming_sign(int hamming);

struct MeasurementSetup {
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double detuning1 = 0.0; // Δ_d1, drive frame
    double detuning2 = 0.0;
    DispersiveModel model;
    DrivePulse pulse;

    void validate() const;
};

/// Applies the branch `sign` of the parity-condition detunings to `setup`.
MeasurementSetup with_parity_detunings(MeasurementSetup setup, int sign);

/// Qubit-conditioned cavity Hamiltonian in the drive frame.
Eigen::Matrix2d cavity_hamiltonian(const MeasurementSetup& setup, int hamming, double drive_offset = 0.0);

/// M with dα/dt = −M α − i k β_in(t).
Eigen::Matrix2cd drift_matrix(const MeasurementSetup& setup, int hamming, double drive_offset = 0.0);

struct Trajectory {
    int hamming = 0;
    std::vector<double> time;
    std::vector<complex> a1;
    std::vector<complex> a2;
    std::vector<complex> out;

    std::size_t size() const { return time.size(); }
    double spacing() const { return time.size() > 1 ? time[1] - time[0] : 0.0; }
};

struct EvolveOptions {
    int stride = 1;          // record every stride-th step
    bool check_step = true;  // enforce dt ≤ 0.01/rate
    bool probe = true;       // half-step convergence probe
};

/// 1e−3 of the fastest decay time.
double default_step(const MeasurementSetup& setup);

Trajectory evolve(const MeasurementSetup& setup, int hamming, double t_final, double dt,
                  const EvolveOptions& options = {});

/// All four Hamming weights, evaluated in parallel.
std::array<Trajectory, 4> evolve_all(const MeasurementSetup& setup, double t_final, double dt,
                                     const EvolveOptions& options = {});

std::vector<complex> output_field(const Trajectory& traj, const MeasurementSetup& setup);

Eigen::Vector2cd steady_state(const MeasurementSetup& setup, int hamming, double drive_offset = 0.0);

complex reflection(const MeasurementSetup& setup, int hamming, double drive_offset = 0.0);

} // namespace pscope
