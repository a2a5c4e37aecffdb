#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pscope {

/// Transmon capacitively coupled to an open transmission line (SI units).
struct LinePlacement {
    double length = 0.0;                 // L
    double position = 0.0;               // x_J
    double coupling_capacitance = 0.0;   // C_c
    double total_capacitance = 0.0;      // C_Σ
    double capacitance_per_length = 0.0; // c
    double inductance_per_length = 0.0;  // l
    int mode = 1;                        // n
    int cutoff = 1;                      // n_c
    double zero_point_factor = 1.0;      // optional (E_J/32E_C)^{1/4}

    void validate() const;
};

/// cos(π t) with exact zeros at half-integers.
double cos_pi(double t);

double line_mode_frequency(const LinePlacement& p, int n);

/// Mode-projected coupling capacitances C_0..C_{n_c}.
std::vector<double> mode_capacitances(const LinePlacement& p);

/// Signed qubit-mode coupling g_n(x_J) in rad/s.
double coupling_at_position(const LinePlacement& p);

/// Modes 0..n_c with diagonal Lc and the junction node last.
Eigen::MatrixXd capacitance_matrix(std::span<const double> mode_caps, double line_cap, double total_cap);

struct CapacitanceInverse {
    Eigen::MatrixXd exact;
    Eigen::MatrixXd approximate;
    double deviation = 0.0;        // max-norm of exact − approximate
    double scaled_deviation = 0.0; // same, in units where the decoupled inverse is the identity
};

CapacitanceInverse capacitance_inverse(std::span<const double> mode_caps, double line_cap, double total_cap);

} // namespace pscope
