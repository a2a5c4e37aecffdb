#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parityscope/cavity.hpp"
#include "parityscope/dispersive.hpp"
#include "parityscope/readout.hpp"

namespace pscope {

// Frequencies in the document are ordinary MHz; the parsed structures hold rad/s.

enum class DeviceKind { Transmon, Tcq, TcqDesign, Manual };

struct DeviceConfig {
    std::string label;
    DeviceKind kind = DeviceKind::Manual;
    TransmonSpec transmon;
    double g1 = 0.0;
    double g2 = 0.0;
    TcqSpec tcq;
    CouplingConvention coupling_convention = CouplingConvention::Unitary;
    AnharmonicityConvention anharmonicity_convention = AnharmonicityConvention::Unitary;
    double design_omega_minus = 0.0;
    double design_coupling = 0.0;
    double design_anharmonicity = 0.0;
    std::array<double, 3> chi_over_kappa{}; // manual: χ1, χ2, χ12
};

struct BusConfig {
    double omega1 = 0.0;
    std::optional<double> omega2; // empty means auto-parity
    double kappa1 = 0.0;          // rad/s
    double kappa2 = 0.0;
    int parity_branch = -1;
};

struct TargetConfig {
    bool present = false;
    double chi1_over_kappa = 0.0;
    double chi2_over_kappa = 0.0;
    TransitionBranch branch = TransitionBranch::Resonator1Minus;
};

struct CutConfig {
    std::string name;
    std::optional<double> chi2; // empty for the diagonal
    double lo = 0.1;
    double hi = 1.2;
    int points = 61;
};

struct GridConfig {
    double lo1 = 0.05, hi1 = 1.5;
    int n1 = 61;
    double lo2 = 0.05, hi2 = 1.5;
    int n2 = 61;
};

/// Times in units of 1/κ1.
struct AnalysisConfig {
    double tau = 28.0;
    double dt = 1e-3;
    int stride = 10;
    int rate_points = 57;
    NoiseConvention noise = NoiseConvention::VarianceTau;
    std::optional<GridConfig> grid;
    std::vector<CutConfig> cuts;
    std::vector<std::array<double, 2>> points;
};

struct ValidationConfig {
    double ej_over_ec = 50.0;
    double ei_over_ec = -0.5;
    int charge_grid = 21;
    int charge_n_max = 10;
    double contrast_ej_over_ec = 1.0;
    double g_over_delta = 0.05;
};

struct ScenarioConfig {
    std::string name;
    std::string description;
    std::vector<DeviceConfig> devices;
    BusConfig bus;
    TargetConfig targets;
    std::optional<DrivePulse> pulse; // κ1 units
    AnalysisConfig analysis;
    ValidationConfig validation;
};

ScenarioConfig parse_scenario(const std::string& text, const std::string& source = "<config>");
ScenarioConfig load_scenario_file(const std::filesystem::path& path);
ScenarioConfig load_preset(const std::string& name);

/// (name, description) of every shipped preset.
std::vector<std::pair<std::string, std::string>> preset_list();
const std::string& preset_text(const std::string& name);

struct DerivedDevice {
    std::string label;
    DispersiveModel model;
    std::optional<BareCouplings> couplings;
    std::optional<DressedTcq> dressed;
    std::optional<PurcellTime> purcell;
};

struct DerivedScenario {
    std::vector<DerivedDevice> devices;
    ResonatorPair resonators;
    bool matched = true;
    double mismatch = 0.0;
};

DerivedScenario derive(const ScenarioConfig& config);

/// Measurement setup in κ1 units for the first device, with the configured parity branch.
MeasurementSetup dynamics_setup(const ScenarioConfig& config, const DerivedScenario& derived);

} // namespace pscope
