#include "parityscope/circuit.hpp"

#include <cmath>
#include <numbers>

#include "parityscope/errors.hpp"
#include "parityscope/units.hpp"

namespace pscope {

void LinePlacement::validate() const {
    if (!(length > 0.0) || !(capacitance_per_length > 0.0) || !(inductance_per_length > 0.0) ||
        !(total_capacitance > 0.0) || coupling_capacitance < 0.0)
        throw Error(ErrorKind::Config, "line placement needs positive length, capacitances and inductance");
    if (position < 0.0 || position > length) throw Error(ErrorKind::Config, "x_J must lie on the line");
    if (mode < 1 || mode > cutoff) throw Error(ErrorKind::Config, "mode index must satisfy 1 <= n <= n_c");
    if (coupling_capacitance >= capacitance_per_length * length)
        throw Error(ErrorKind::Config, "weak coupling requires C_c < c L");
}

double cos_pi(double t) {
    double r = std::fmod(std::abs(t), 2.0);
    if (r == 0.5 || r == 1.5) return 0.0;
    return std::cos(std::numbers::pi * r);
}

double line_mode_frequency(const LinePlacement& p, int n) {
    return n * std::numbers::pi / (p.length * std::sqrt(p.inductance_per_length * p.capacitance_per_length));
}

std::vector<double> mode_capacitances(const LinePlacement& p) {
    p.validate();
    std::vector<double> caps(p.cutoff + 1);
    caps[0] = p.coupling_capacitance;
    for (int n = 1; n <= p.cutoff; ++n)
        caps[n] = p.coupling_capacitance * std::numbers::sqrt2 * cos_pi(n * p.position / p.length);
    return caps;
}

double coupling_at_position(const LinePlacement& p) {
    p.validate();
    const double line_cap = p.capacitance_per_length * p.length;
    const double v_rms = std::sqrt(units::hbar * line_mode_frequency(p, p.mode) / (2.0 * line_cap));
    return 2.0 * units::elementary_charge / units::hbar * (p.coupling_capacitance / p.total_capacitance) * v_rms *
           std::numbers::sqrt2 * cos_pi(p.mode * p.position / p.length) * p.zero_point_factor;
}

Eigen::MatrixXd capacitance_matrix(std::span<const double> caps, double line_cap, double total_cap) {
    const auto n = static_cast<Eigen::Index>(caps.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (Eigen::Index k = 0; k < n; ++k) {
        c(k, k) = line_cap;
        c(k, n) = c(n, k) = -caps[k];
    }
    c(n, n) = total_cap;
    return c;
}

CapacitanceInverse capacitance_inverse(std::span<const double> caps, double line_cap, double total_cap) {
    if (!(line_cap > 0.0) || !(total_cap > 0.0))
        throw Error(ErrorKind::SingularCapacitanceMatrix, "line and total capacitance must be positive");
    const auto n = static_cast<Eigen::Index>(caps.size());
    double sum_sq = 0.0;
    for (double ck : caps) sum_sq += ck * ck;
    const double sigma = line_cap * total_cap - sum_sq;
    if (!(sigma > 0.0))
        throw Error(ErrorKind::SingularCapacitanceMatrix, "Sigma = Lc C_Sigma - sum C_n^2 is not positive");

    CapacitanceInverse out;
    out.exact = Eigen::MatrixXd::Zero(n + 1, n + 1);
    out.approximate = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l)
            out.exact(k, l) = ((k == l ? 1.0 : 0.0) + caps[k] * caps[l] / sigma) / line_cap;
        out.exact(k, n) = out.exact(n, k) = caps[k] / sigma;
        out.approximate(k, k) = 1.0 / line_cap;
        out.approximate(k, n) = out.approximate(n, k) = caps[k] / (line_cap * total_cap);
    }
    out.exact(n, n) = line_cap / sigma;
    out.approximate(n, n) = 1.0 / total_cap;

    Eigen::MatrixXd diff = out.exact - out.approximate;
    out.deviation = diff.cwiseAbs().maxCoeff();
    Eigen::VectorXd scale = Eigen::VectorXd::Constant(n + 1, std::sqrt(line_cap));
    scale(n) = std::sqrt(total_cap);
    out.scaled_deviation = (scale.asDiagonal() * diff * scale.asDiagonal()).cwiseAbs().maxCoeff();
    return out;
}

} // namespace pscope
