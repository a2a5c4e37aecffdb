#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "parityscope/dispersive.hpp"

namespace pscope {

// ---- charge basis

struct ChargeBasisConfig {
    double charging_plus = 1.0;
    double charging_minus = 1.0;
    double josephson_plus = 50.0;
    double josephson_minus = 50.0;
    double interaction = 0.0; // E_I
    double offset_plus = 0.0;
    double offset_minus = 0.0;
    int n_max = 20;
    int n_max_ceiling = 48;
};

/// Dense Hamiltonian on |n+, n-⟩ with n± ∈ [−n_max, n_max], index (n+ + n_max)(2n_max+1) + n- + n_max.
Eigen::MatrixXd charge_hamiltonian(const ChargeBasisConfig& cfg, int n_max);

/// Lowest `levels` eigenvalues at a fixed cutoff.
Eigen::VectorXd charge_spectrum_at(const ChargeBasisConfig& cfg, int n_max, int levels);

/// Smallest cutoff ≥ cfg.n_max whose spectrum moves < 1e−8·E_C under n_max → n_max + 4.
int converged_charge_cutoff(const ChargeBasisConfig& cfg, int levels);

/// Lowest eigenvalues with the adaptive cutoff check.
Eigen::VectorXd tcq_charge_spectrum(const ChargeBasisConfig& cfg, int levels);

Eigen::VectorXd transmon_charge_spectrum(double charging, double josephson, double offset, int n_max, int levels);

/// Max minus min of each level over a grid×grid sweep of (n_g+, n_g−) ∈ [0,1]².
std::vector<double> charge_dispersion(const ChargeBasisConfig& cfg, int levels, int grid);
std::vector<double> charge_dispersion_serial(const ChargeBasisConfig& cfg, int levels, int grid);

// ---- coupled Duffing oscillators

/// Basis |n+, n-⟩ with index n+·levels + n-.
Eigen::MatrixXd duffing_tcq_hamiltonian(const TcqSpec& spec, int levels);

struct DressedParameters {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double delta_cross = 0.0;

    std::array<double, 5> as_array() const { return {omega_plus, omega_minus, delta_plus, delta_minus, delta_cross}; }
};

struct DressedCheck {
    DressedParameters exact;
    DressedParameters perturbative;
    std::array<double, 5> abs_error{};
    std::array<double, 5> scaled_error{}; // abs_error / |ω̃+ − ω̃−|
    double gap = 0.0;
    double min_overlap = 1.0;

    double max_scaled_error() const;
};

DressedCheck dressed_tcq_check(const TcqSpec& spec, int levels = 7);

// ---- qubit plus two cavities

/// Qubit part of a ladder; the interaction is Σ_i (R_i ⊗ a_i + h.c.).
struct QubitBlock {
    Eigen::MatrixXd hamiltonian;
    std::array<Eigen::MatrixXd, 2> raising;
    Eigen::VectorXd ground;
    Eigen::VectorXd excited;
};

struct LadderConfig {
    std::function<QubitBlock(int)> qubit;
    int qubit_levels = 3;
    int photon_cutoff = 2;
    double omega1 = 0.0;
    double omega2 = 0.0;
    bool convergence_probe = true;
};

LadderConfig transmon_ladder(const TransmonLevels& levels, double g1, double g2, const ResonatorPair& res);
LadderConfig dressed_tcq_ladder(const DressedTcq& dressed, const ResonatorPair& res);
LadderConfig duffing_tcq_ladder(const TcqSpec& spec, const ResonatorPair& res, int levels = 3);

Eigen::MatrixXd ladder_hamiltonian(const LadderConfig& cfg, int qubit_levels, int photon_cutoff);

struct ChiOracleResult {
    std::array<double, 2> chi{};
    std::array<double, 2> resonator{}; // mean single-photon frequencies
    double qubit_frequency = 0.0;
    double min_overlap = 1.0;
};

ChiOracleResult chi_oracle(const LadderConfig& cfg);

struct SwitchSplitting {
    double ground = 0.0;  // half of the minimal avoided-crossing gap
    double excited = 0.0;
    double state_dependent = 0.0;
    double omega2_ground = 0.0;
    double omega2_excited = 0.0;
};

/// Scans ω2 over ω1 ± half_width for the minimal single-photon splitting of each qubit state.
SwitchSplitting switch_splitting(const LadderConfig& cfg, double half_width);

} // namespace pscope
