#include "parityscope/dispersive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parityscope/errors.hpp"

namespace pscope {

namespace {

constexpr double kValidityRatio = 0.3;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

void check_denominator(double value, double tolerance, const char* what) {
    if (std::abs(value) <= tolerance || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << what << " = " << value << " is at a resonance";
        throw Error(ErrorKind::DegenerateDenominator, msg.str());
    }
}

void check_ratio(std::vector<std::string>& warnings, double ratio, const std::string& label) {
    if (std::abs(ratio) >= kValidityRatio) {
        std::ostringstream msg;
        msg << "dispersive ratio " << label << " = " << std::abs(ratio) << " >= " << kValidityRatio;
        warnings.push_back(msg.str());
    }
}

// cos and sin with exact values at the resonant angle
std::pair<double, double> rotation(double angle) {
    if (std::abs(angle) == kQuarterPi) return {std::numbers::sqrt2 / 2.0, std::copysign(std::numbers::sqrt2 / 2.0, angle)};
    return {std::cos(angle), std::sin(angle)};
}

std::pair<double, double> double_angle(double angle) {
    if (std::abs(angle) == kQuarterPi) return {0.0, std::copysign(1.0, angle)};
    return {std::cos(2.0 * angle), std::sin(2.0 * angle)};
}

void rotate_couplings(DressedTcq& dressed, const std::array<double, 2>& g_plus,
                      const std::array<double, 2>& g_minus, CouplingConvention convention) {
    auto [c, s] = rotation(dressed.mixing_angle);
    for (int i = 0; i < 2; ++i) {
        dressed.g_plus[i] = g_plus[i] * c - g_minus[i] * s;
        dressed.g_minus[i] = convention == CouplingConvention::Unitary ? g_plus[i] * s + g_minus[i] * c
                                                                       : g_plus[i] * c + g_minus[i] * s;
    }
}

// g²/D with a zero numerator short-circuiting the denominator check
double shift(double numerator, double denominator, double tolerance, const char* what) {
    if (numerator == 0.0) return 0.0;
    check_denominator(denominator, tolerance, what);
    return numerator / denominator;
}

double pair_shift(double numerator, double d1, double d2, double tolerance, const char* what) {
    if (numerator == 0.0) return 0.0;
    check_denominator(d1, tolerance, what);
    check_denominator(d2, tolerance, what);
    return numerator / 2.0 * (1.0 / d1 + 1.0 / d2);
}

} // namespace

void TransmonSpec::validate() const {
    if (!(josephson_energy > 0.0) || !(charging_energy > 0.0))
        throw Error(ErrorKind::Config, "transmon energies must be positive");
}

DispersiveModel manual_model(double chi1, double chi2, double chi12) {
    DispersiveModel model;
    model.chi1 = chi1;
    model.chi2 = chi2;
    model.switch_coupling = chi12;
    model.provenance = Provenance::Manual;
    return model;
}

TransmonLevels transmon_levels(const TransmonSpec& spec) {
    spec.validate();
    return {std::sqrt(8.0 * spec.charging_energy * spec.josephson_energy) - spec.charging_energy,
            -spec.charging_energy};
}

DispersiveModel transmon_dispersive(const TransmonLevels& levels, const QubitCavityCoupling& c) {
    const double delta = levels.anharmonicity;
    const double tol = 1e-9 * std::abs(delta);
    check_denominator(c.detuning1, tol, "Delta_1");
    check_denominator(c.detuning2, tol, "Delta_2");
    check_denominator(c.detuning1 + delta, tol, "Delta_1 + delta");
    check_denominator(c.detuning2 + delta, tol, "Delta_2 + delta");

    DispersiveModel m;
    m.provenance = Provenance::Transmon;
    check_ratio(m.warnings, c.g1 / c.detuning1, "g1/Delta1");
    check_ratio(m.warnings, c.g2 / c.detuning2, "g2/Delta2");
    check_ratio(m.warnings, std::numbers::sqrt2 * c.g1 / (c.detuning1 + delta), "sqrt2 g1/(Delta1+delta)");
    check_ratio(m.warnings, std::numbers::sqrt2 * c.g2 / (c.detuning2 + delta), "sqrt2 g2/(Delta2+delta)");

    const double g1s = c.g1 * c.g1;
    const double g2s = c.g2 * c.g2;
    m.chi1 = g1s / c.detuning1 - g1s / (c.detuning1 + delta);
    m.chi2 = g2s / c.detuning2 - g2s / (c.detuning2 + delta);
    if (c.g1 != 0.0 && c.g2 != 0.0)
        m.switch_coupling = 0.5 * (c.g2 / c.g1 * m.chi1 + c.g1 / c.g2 * m.chi2);
    m.static_coupling = -(c.g1 * c.g2 / 2.0) * (1.0 / (c.detuning1 + delta) + 1.0 / (c.detuning2 + delta));
    m.qubit_frequency = levels.frequency + g1s / c.detuning1 + g2s / c.detuning2;
    m.resonator1 = levels.frequency - c.detuning1 - g1s / (c.detuning1 + delta);
    m.resonator2 = levels.frequency - c.detuning2 - g2s / (c.detuning2 + delta);
    return m;
}

DispersiveModel transmon_dispersive(const TransmonSpec& spec, const QubitCavityCoupling& coupling) {
    auto model = transmon_dispersive(transmon_levels(spec), coupling);
    if (!spec.charge_insensitive())
        model.warnings.push_back("E_J/E_C below 20: outside the charge-insensitive regime");
    return model;
}

DressedTcq tcq_mixing(const TcqSpec& spec, AnharmonicityConvention convention) {
    DressedTcq d;
    d.zeta = spec.omega_plus - spec.omega_minus - 2.0 * (spec.delta_plus - spec.delta_minus);
    if (d.zeta != 0.0)
        d.mixing_angle = 0.5 * std::atan(-2.0 * spec.coupling / d.zeta);
    else if (spec.coupling != 0.0)
        d.mixing_angle = -std::copysign(kQuarterPi, spec.coupling);

    auto [c2, s2] = double_angle(d.mixing_angle);
    const double mean = 0.5 * (spec.omega_plus + spec.omega_minus);
    const double split = 0.5 * (spec.omega_plus - spec.omega_minus) * c2;
    d.omega_plus = mean + split - spec.coupling * s2;
    d.omega_minus = mean - split + spec.coupling * s2;

    const double sum = spec.delta_plus + spec.delta_minus;
    const double diff = spec.delta_plus - spec.delta_minus;
    const double prefactor = convention == AnharmonicityConvention::Unitary ? 4.0 : 2.0;
    d.delta_plus = sum * (1.0 + c2 * c2) / prefactor + diff * c2 / 2.0;
    d.delta_minus = sum * (1.0 + c2 * c2) / prefactor - diff * c2 / 2.0;
    d.delta_cross = sum * s2 * s2 / 2.0;

    const double gap = d.omega_plus - d.omega_minus;
    for (double delta : {spec.delta_plus, spec.delta_minus}) {
        if (std::abs(delta) >= kValidityRatio * std::abs(gap)) {
            std::ostringstream msg;
            msg << "|delta/(omega~+ - omega~-)| = " << std::abs(delta / gap) << " >= " << kValidityRatio;
            d.warnings.push_back(msg.str());
        }
    }
    return d;
}

DressedTcq effective_couplings(const TcqSpec& spec, DressedTcq dressed, CouplingConvention convention) {
    rotate_couplings(dressed, spec.g_plus, spec.g_minus, convention);
    return dressed;
}

DressedTcq design_dressed_tcq(double omega_minus, double coupling, double anharmonicity) {
    DressedTcq d;
    d.mixing_angle = kQuarterPi;
    d.omega_minus = omega_minus;
    d.omega_plus = omega_minus - 2.0 * coupling;
    d.delta_plus = d.delta_minus = d.delta_cross = anharmonicity;
    return d;
}

StateResolvedShifts tcq_state_shifts(const DressedTcq& d, const ResonatorPair& res) {
    const double tol =
        1e-9 * std::max({std::abs(d.delta_plus), std::abs(d.delta_minus), std::abs(d.delta_cross)});
    StateResolvedShifts s;
    s.resonators = res;
    std::array<double, 2> dp{}, dm{};
    for (int i = 0; i < 2; ++i) {
        dp[i] = d.omega_plus - res[i];
        dm[i] = d.omega_minus - res[i];
        const double gp2 = d.g_plus[i] * d.g_plus[i];
        const double gm2 = d.g_minus[i] * d.g_minus[i];
        s.chi_excited[i] = shift(gm2, dm[i], tol, "Delta~_i-") -
                           shift(2.0 * gm2, dm[i] + d.delta_minus, tol, "Delta~_i- + delta~-") -
                           shift(gp2, dp[i] + d.delta_cross, tol, "Delta~_i+ + delta~c");
        s.chi_ground[i] = shift(gp2, dp[i], tol, "Delta~_i+") + shift(gm2, dm[i], tol, "Delta~_i-");
    }
    const double gpp = d.g_plus[0] * d.g_plus[1];
    const double gmm = d.g_minus[0] * d.g_minus[1];
    s.switch_excited = pair_shift(gmm, dm[0], dm[1], tol, "Delta~_i-") -
                       pair_shift(2.0 * gmm, dm[0] + d.delta_minus, dm[1] + d.delta_minus, tol,
                                  "Delta~_i- + delta~-") -
                       pair_shift(gpp, dp[0] + d.delta_cross, dp[1] + d.delta_cross, tol, "Delta~_i+ + delta~c");
    s.switch_ground = pair_shift(gpp, dp[0], dp[1], tol, "Delta~_i+") + pair_shift(gmm, dm[0], dm[1], tol, "Delta~_i-");

    s.qubit_frequency = d.omega_minus;
    for (int i = 0; i < 2; ++i) s.qubit_frequency += shift(d.g_minus[i] * d.g_minus[i], dm[i], tol, "Delta~_i-");
    return s;
}

DispersiveModel tcq_dispersive(const StateResolvedShifts& s) {
    DispersiveModel m;
    m.provenance = Provenance::Tcq;
    m.qubit_frequency = s.qubit_frequency;
    m.resonator1 = s.resonators.omega1 + (s.chi_excited[0] - s.chi_ground[0]) / 2.0;
    m.resonator2 = s.resonators.omega2 + (s.chi_excited[1] - s.chi_ground[1]) / 2.0;
    m.chi1 = (s.chi_excited[0] + s.chi_ground[0]) / 2.0;
    m.chi2 = (s.chi_excited[1] + s.chi_ground[1]) / 2.0;
    m.static_coupling = (s.switch_excited - s.switch_ground) / 2.0;
    m.switch_coupling = (s.switch_excited + s.switch_ground) / 2.0;
    return m;
}

std::array<double, 4> sign_flip_couplings(double g1, double g2, TransitionBranch branch) {
    if (branch == TransitionBranch::Resonator1Minus) return {g1, g1, g2, -g2};
    return {g1, -g1, g2, g2};
}

DressedTcq with_sign_flip_couplings(const DressedTcq& dressed, const BareCouplings& g, TransitionBranch branch) {
    auto bare = sign_flip_couplings(g.g1, g.g2, branch);
    DressedTcq out = dressed;
    rotate_couplings(out, {bare[0], bare[2]}, {bare[1], bare[3]}, CouplingConvention::Unitary);
    return out;
}

BareCouplings solve_couplings_for_chi(double chi1, double chi2, const DressedTcq& d, const ResonatorPair& res,
                                      TransitionBranch branch) {
    auto solve = [&](double chi, int i, bool minus) {
        if (chi == 0.0) return 0.0;
        const double anharm = minus ? d.delta_minus : d.delta_cross;
        const double det = (minus ? d.omega_minus : d.omega_plus) - res[i];
        const double tol = 1e-9 * std::abs(anharm);
        check_denominator(anharm, 0.0, "dressed anharmonicity");
        check_denominator(det, tol, "dressed detuning");
        check_denominator(det + anharm, tol, "dressed detuning + anharmonicity");
        // χ = g̃² δ/(Δ(Δ+δ)) on "−", half that on "+"
        const double dressed_sq = (minus ? 1.0 : 2.0) * chi * det * (det + anharm) / anharm;
        if (dressed_sq < 0.0) {
            std::ostringstream msg;
            msg << "target chi" << i + 1 << " = " << chi << " has the wrong sign for its transition branch";
            throw Error(ErrorKind::NegativeDiscriminant, msg.str());
        }
        return std::sqrt(dressed_sq / 2.0);
    };
    const bool first_minus = branch == TransitionBranch::Resonator1Minus;
    return {solve(chi1, 0, first_minus), solve(chi2, 1, !first_minus)};
}

ParityDetunings parity_detunings(const DispersiveModel& model, double kappa1, double kappa2) {
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0))
        throw Error(ErrorKind::Config, "resonator decay rates must be positive");
    const double disc = model.parity_discriminant();
    const double scale = std::max({model.chi1 * model.chi1, model.chi2 * model.chi2,
                                   model.switch_coupling * model.switch_coupling});
    const double tol = 1e-12 * scale;
    if (disc < -tol) {
        std::ostringstream msg;
        msg << "chi1*chi2 - chi12^2 = " << disc << " < 0 requires complex detunings";
        throw Error(ErrorKind::ParityConditionUnsatisfiable, msg.str());
    }
    ParityDetunings out;
    if (disc <= tol) {
        out.degenerate = true;
        return out;
    }
    const double root = std::sqrt(3.0 * disc);
    const double d1 = std::sqrt(kappa1 / kappa2) * root;
    const double d2 = -std::sqrt(kappa2 / kappa1) * root;
    out.upper = {d1, d2};
    out.lower = {-d1, -d2};
    return out;
}

PurcellTime purcell_time(double kappa, double g, double omega_minus, double omega_resonator) {
    const double det = omega_minus - omega_resonator;
    check_denominator(det, 1e-12 * std::max(std::abs(omega_minus), std::abs(omega_resonator)),
                      "omega~- - omega_r");
    PurcellTime t;
    if (g == 0.0) return t;
    const double ratio = std::numbers::sqrt2 * g / det;
    t.seconds = 1.0 / (kappa * ratio * ratio);
    t.times_kappa = t.seconds * kappa;
    return t;
}

} // namespace pscope
