#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace pscope {

// Energies and frequencies are angular frequencies in a common unit.

struct TransmonSpec {
    double josephson_energy = 0.0;
    double charging_energy = 0.0;

    void validate() const;
    bool charge_insensitive() const { return josephson_energy / charging_energy >= 20.0; }
};

struct TransmonLevels {
    double frequency = 0.0;
    double anharmonicity = 0.0;
};

/// Detunings are qubit minus resonator: Δ_i = Ω_e − ω_i.
struct QubitCavityCoupling {
    double g1 = 0.0;
    double g2 = 0.0;
    double detuning1 = 0.0;
    double detuning2 = 0.0;
};

enum class Provenance { Transmon, Tcq, Manual };

/// H = Ω̄/2 σz + Σ (ω̄_i + χ_i σz) a_i†a_i + (χ̄12 + χ12 σz)(a1†a2 + h.c.)
struct DispersiveModel {
    double qubit_frequency = 0.0;
    double resonator1 = 0.0;
    double resonator2 = 0.0;
    double chi1 = 0.0;
    double chi2 = 0.0;
    double static_coupling = 0.0; // χ̄12
    double switch_coupling = 0.0; // χ12
    Provenance provenance = Provenance::Manual;
    std::vector<std::string> warnings;

    /// χ1 χ2 − χ12², positive when the parity condition has real solutions.
    double parity_discriminant() const { return chi1 * chi2 - switch_coupling * switch_coupling; }
};

DispersiveModel manual_model(double chi1, double chi2, double chi12 = 0.0);

TransmonLevels transmon_levels(const TransmonSpec& spec);

DispersiveModel transmon_dispersive(const TransmonLevels& levels, const QubitCavityCoupling& coupling);
DispersiveModel transmon_dispersive(const TransmonSpec& spec, const QubitCavityCoupling& coupling);

// ---- tunable coupling qubit

struct TcqSpec {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double coupling = 0.0; // J
    std::array<double, 2> g_plus{};  // g_{i+}
    std::array<double, 2> g_minus{}; // g_{i-}
};

enum class CouplingConvention { Unitary, Printed };
enum class AnharmonicityConvention { Unitary, Printed };

struct DressedTcq {
    double mixing_angle = 0.0; // λ
    double zeta = 0.0;
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double delta_cross = 0.0;
    std::array<double, 2> g_plus{};
    std::array<double, 2> g_minus{};
    std::vector<std::string> warnings;
};

struct ResonatorPair {
    double omega1 = 0.0;
    double omega2 = 0.0;

    double operator[](int i) const { return i == 0 ? omega1 : omega2; }
};

DressedTcq tcq_mixing(const TcqSpec& spec,
                      AnharmonicityConvention convention = AnharmonicityConvention::Unitary);

DressedTcq effective_couplings(const TcqSpec& spec, DressedTcq dressed,
                               CouplingConvention convention = CouplingConvention::Unitary);

/// Dressed device at resonance (λ = π/4) with all dressed anharmonicities equal.
DressedTcq design_dressed_tcq(double omega_minus, double coupling, double anharmonicity);

struct StateResolvedShifts {
    std::array<double, 2> chi_excited{}; // χ_{i,0+1-}
    std::array<double, 2> chi_ground{};  // χ_{i,0+0-}
    double switch_excited = 0.0;         // χ_{12,0+1-}
    double switch_ground = 0.0;          // χ_{12,0+0-}
    double qubit_frequency = 0.0;        // ω̃- plus Lamb shifts
    ResonatorPair resonators{};
};

StateResolvedShifts tcq_state_shifts(const DressedTcq& dressed, const ResonatorPair& resonators);

DispersiveModel tcq_dispersive(const StateResolvedShifts& shifts);

/// Which resonator drives the "−" transition; the other drives "+".
enum class TransitionBranch { Resonator1Minus, Resonator2Minus };

/// Bare couplings (g_{1+}, g_{1-}, g_{2+}, g_{2-}) that cancel the switch at λ = π/4.
std::array<double, 4> sign_flip_couplings(double g1, double g2, TransitionBranch branch);

struct BareCouplings {
    double g1 = 0.0;
    double g2 = 0.0;
};

BareCouplings solve_couplings_for_chi(double chi1, double chi2, const DressedTcq& dressed,
                                      const ResonatorPair& resonators,
                                      TransitionBranch branch = TransitionBranch::Resonator1Minus);

/// Copies `dressed` with sign-flip couplings rotated into the dressed frame.
DressedTcq with_sign_flip_couplings(const DressedTcq& dressed, const BareCouplings& g,
                                    TransitionBranch branch);

// ---- parity condition and Purcell decay

struct ParityDetunings {
    std::array<double, 2> upper{}; // (+√3…, −√3…)
    std::array<double, 2> lower{};
    bool degenerate = false;

    const std::array<double, 2>& branch(int sign) const { return sign >= 0 ? upper : lower; }
};

ParityDetunings parity_detunings(const DispersiveModel& model, double kappa1, double kappa2);

struct PurcellTime {
    double seconds = std::numeric_limits<double>::infinity();
    double times_kappa = std::numeric_limits<double>::infinity();

    bool unlimited() const { return seconds == std::numeric_limits<double>::infinity(); }
};

/// κ in s⁻¹ and angular frequencies in rad/s.
PurcellTime purcell_time(double kappa, double g, double omega_minus, double omega_resonator);

} // namespace pscope
