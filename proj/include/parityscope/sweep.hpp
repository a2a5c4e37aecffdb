#pragma once

#include <array>
#include <vector>

#include "parityscope/readout.hpp"

namespace pscope {

/// Fixed pulse and integration settings for χ sweeps, in units where κ1 = κ2 = 1.
struct SweepSettings {
    DrivePulse pulse{0.5, 4.0, 1.0, 16.0};
    double tau = 28.0;
    double dt = 1e-3;
    int stride = 10;
    int parity_branch = 1;
    NoiseConvention noise = NoiseConvention::VarianceTau;
    QuadratureOptions quadrature{};
};

struct SweepPoint {
    double chi1 = 0.0; // in units of κ
    double chi2 = 0.0;
    InfoGains gains;
    double phase = 0.0;
};

using ChiPair = std::array<double, 2>;

/// Parity-detuned dynamics, optimal quadrature and information at one (χ1, χ2), χ12 = 0.
SweepPoint sweep_point(double chi1, double chi2, const SweepSettings& settings);

/// Parallel over points; results in input order.
std::vector<SweepPoint> chi_sweep(const std::vector<ChiPair>& points, const SweepSettings& settings);
std::vector<SweepPoint> chi_sweep_serial(const std::vector<ChiPair>& points, const SweepSettings& settings);

std::vector<double> linspace(double lo, double hi, int n);
std::vector<ChiPair> chi_grid(const std::vector<double>& chi1, const std::vector<double>& chi2);
std::vector<ChiPair> diagonal_cut(const std::vector<double>& chi);
std::vector<ChiPair> fixed_chi2_cut(double chi2, const std::vector<double>& chi1);

/// Point with the least missing parity information.
const SweepPoint& argmin_missing(const std::vector<SweepPoint>& table);

} // namespace pscope
