#pragma once

#include <array>
#include <complex>
#include <vector>

#include "parityscope/cavity.hpp"

namespace pscope {

/// Noise variance of the integrated signal: τ, or τ² for the alternative reading.
enum class NoiseConvention { VarianceTau, VarianceTauSquared };

struct SignalModel {
    double tau = 0.0;
    double phase = 0.0;
    std::array<double, 4> means{};
    NoiseConvention noise = NoiseConvention::VarianceTau;

    double variance() const { return noise == NoiseConvention::VarianceTau ? tau : tau * tau; }
};

/// ∫_0^τ β_out dt on the trajectory grid.
complex integrated_field(const Trajectory& traj, double tau);

/// I_h(τ) = ∫_0^τ (β_out e^{−iφ} + c.c.) dt.
double integrated_signal(const Trajectory& traj, double phase, double tau);

SignalModel signal_model(const std::array<complex, 4>& fields, double tau, double phase,
                         NoiseConvention noise = NoiseConvention::VarianceTau);

double conditional_density(double signal, const SignalModel& model, int hamming);

struct Posterior {
    std::array<double, 4> hamming{};
    double even = 0.0;
    double odd = 0.0;
};

/// Uniform priors over the four Hamming weights.
Posterior posteriors(double signal, const SignalModel& model);

/// Information (bits) about h_w and parity carried by a single outcome.
struct PointInformation {
    double hamming = 0.0;
    double parity = 0.0;
};

PointInformation pointwise_information(double signal, const SignalModel& model);

struct QuadratureOptions {
    int points = 4001;
    double padding = 8.0; // in standard deviations
    bool check = true;    // repeat with doubled points
};

struct InfoGains {
    double hamming_bits = 0.0;
    double parity_bits = 0.0;
    double missing_parity_bits = 1.0;
    double missing_hamming_bits = 2.0;
    double delta_bits = 0.0;
    double normalization = 1.0;
    std::array<double, 4> mean_posterior{0.25, 0.25, 0.25, 0.25};
};

InfoGains info_gains(const SignalModel& model, const QuadratureOptions& options = {});

struct PhaseOptimum {
    double phase = 0.0;
    InfoGains gains;
};

/// Maximizes the parity information over φ ∈ [0, π).
PhaseOptimum optimal_phase(const std::array<complex, 4>& fields, double tau,
                           NoiseConvention noise = NoiseConvention::VarianceTau,
                           const QuadratureOptions& options = {});

struct RateSeries {
    std::vector<double> tau;
    std::vector<double> info_hamming;
    std::vector<double> info_parity;
    std::vector<double> gamma_hamming;
    std::vector<double> gamma_parity;
};

/// Finite-difference rates of information series on a uniform τ grid.
RateSeries measurement_rates(std::vector<double> tau, std::vector<double> info_hamming,
                             std::vector<double> info_parity);

/// Information series at `points` equally spaced times in [0, τ_max] for a fixed quadrature.
RateSeries rate_series(const std::array<Trajectory, 4>& trajectories, double phase, double tau_max, int points = 57,
                       NoiseConvention noise = NoiseConvention::VarianceTau);

} // namespace pscope
