#include "parityscope/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "parityscope/cavity.hpp"
#include "parityscope/errors.hpp"
#include "parityscope/readout.hpp"
#include "parityscope/report.hpp"
#include "parityscope/spectral_oracle.hpp"
#include "parityscope/sweep.hpp"
#include "parityscope/units.hpp"

namespace pscope {

namespace {

using json = nlohmann::ordered_json;
using units::angular_to_mhz;

std::string kind_name(DeviceKind k) {
    switch (k) {
    case DeviceKind::Transmon: return "transmon";
    case DeviceKind::Tcq: return "tcq";
    case DeviceKind::TcqDesign: return "tcq-design";
    case DeviceKind::Manual: return "manual";
    }
    return "?";
}

json number_or_text(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

void write_json(const CommandOptions& options, const std::string& name, const json& doc) {
    if (options.out_dir) write_text(*options.out_dir / name, doc.dump(2) + "\n");
}

void write_table(const CommandOptions& options, const std::string& name, const Table& table) {
    if (options.out_dir) write_text(*options.out_dir / name, to_csv(table));
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    return sxy / sxx;
}

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < x.size(); ++k) {
        lx.push_back(std::log(x[k]));
        ly.push_back(std::log(y[k]));
    }
    return slope(lx, ly);
}

CheckResult below(std::string name, double value, double threshold, std::string note = "") {
    return {std::move(name), value < threshold ? "pass" : "fail", value, threshold, std::move(note)};
}

CheckResult above(std::string name, double value, double threshold, std::string note = "") {
    return {std::move(name), value > threshold ? "pass" : "fail", value, threshold, std::move(note)};
}

CheckResult order_check(std::string name, double exponent, std::string note = "") {
    return {std::move(name), std::abs(exponent - 2.0) <= 0.3 ? "pass" : "fail", exponent, 2.0, std::move(note)};
}

// Transmon with ω_t = 5, δ = −0.3 between cavities at 4 and 6; `ratio` is the largest g/Δ of either transition.
double transmon_chi_error(double ratio) {
    const TransmonLevels lv{5.0, -0.3};
    const ResonatorPair res{4.0, 6.0};
    const double d1 = lv.frequency - res.omega1, d2 = lv.frequency - res.omega2;
    const double g1 = ratio * std::min(std::abs(d1), std::abs(d1 + lv.anharmonicity) / std::numbers::sqrt2);
    const double g2 = ratio * std::min(std::abs(d2), std::abs(d2 + lv.anharmonicity) / std::numbers::sqrt2);
    const ChiOracleResult exact = chi_oracle(transmon_ladder(lv, g1, g2, res));
    const DispersiveModel pert = transmon_dispersive(lv, QubitCavityCoupling{g1, g2, d1, d2});
    return std::max(std::abs(exact.chi[0] - pert.chi1) / std::abs(pert.chi1),
                    std::abs(exact.chi[1] - pert.chi2) / std::abs(pert.chi2));
}

// Dressed TCQ in the zero-switch layout: resonator 1 on "+", resonator 2 on "−".
double tcq_chi_error(double ratio) {
    DressedTcq d;
    d.mixing_angle = std::numbers::pi / 4.0;
    d.omega_minus = 5.0;
    d.omega_plus = 5.8;
    d.delta_plus = d.delta_minus = -0.15;
    d.delta_cross = -0.3;
    const ResonatorPair res{6.5, 6.6};
    const double dp = d.omega_plus - res.omega1, dm = d.omega_minus - res.omega2;
    d.g_plus = {ratio * std::min(std::abs(dp), std::abs(dp + d.delta_cross)), 0.0};
    d.g_minus = {0.0, ratio * std::min(std::abs(dm), std::abs(dm + d.delta_minus) / std::numbers::sqrt2)};
    const ChiOracleResult exact = chi_oracle(dressed_tcq_ladder(d, res));
    const DispersiveModel pert = tcq_dispersive(tcq_state_shifts(d, res));
    return std::max(std::abs(exact.chi[0] - pert.chi1) / std::abs(pert.chi1),
                    std::abs(exact.chi[1] - pert.chi2) / std::abs(pert.chi2));
}

std::vector<CheckResult> charge_checks(const ValidationConfig& v) {
    std::vector<CheckResult> out;
    ChargeBasisConfig cfg;
    cfg.charging_plus = cfg.charging_minus = 1.0;
    cfg.josephson_plus = cfg.josephson_minus = v.ej_over_ec;
    cfg.interaction = v.ei_over_ec;
    cfg.n_max = v.charge_n_max;
    const std::vector<double> flat = charge_dispersion(cfg, 6, v.charge_grid);
    out.push_back(below("charge-dispersion", *std::max_element(flat.begin(), flat.end()), 1e-3,
                        "max over the lowest 6 levels, units of E_C"));

    ChargeBasisConfig contrast = cfg;
    contrast.josephson_plus = contrast.josephson_minus = v.contrast_ej_over_ec;
    const std::vector<double> wide = charge_dispersion(contrast, 6, v.charge_grid);
    out.push_back(above("charge-regime-contrast", wide[0], 0.05, "lowest level at the contrast E_J/E_C"));

    ChargeBasisConfig free = cfg;
    free.interaction = 0.0;
    free.charging_minus = 1.3;
    free.offset_plus = 0.2;
    free.offset_minus = 0.35;
    const int n = v.charge_n_max;
    const int levels = 6;
    const Eigen::VectorXd joint = charge_spectrum_at(free, n, levels);
    const Eigen::VectorXd a =
        transmon_charge_spectrum(free.charging_plus, free.josephson_plus, free.offset_plus, n, levels);
    const Eigen::VectorXd b =
        transmon_charge_spectrum(free.charging_minus, free.josephson_minus, free.offset_minus, n, levels);
    std::vector<double> sums;
    for (int i = 0; i < levels; ++i)
        for (int j = 0; j < levels; ++j) sums.push_back(a(i) + b(j));
    std::sort(sums.begin(), sums.end());
    double err = 0.0;
    for (int k = 0; k < levels; ++k) err = std::max(err, std::abs(joint(k) - sums[k]) / std::abs(sums[k]));
    out.push_back(below("charge-factorization", err, 1e-10, "E_I = 0 spectrum vs sums of single-transmon levels"));
    return out;
}

std::vector<CheckResult> dressed_checks() {
    std::vector<CheckResult> out;
    const std::vector<double> ratios = {0.05, 0.1, 0.2};
    std::vector<double> errors;
    double worst = 0.0;
    for (double r : ratios) {
        TcqSpec spec;
        spec.omega_plus = spec.omega_minus = 10.0;
        spec.coupling = -1.0;
        spec.delta_plus = spec.delta_minus = -r;
        const DressedCheck c = dressed_tcq_check(spec);
        const double expected = (r / 2.0) * (r / 2.0);
        errors.push_back(c.max_scaled_error());
        worst = std::max(worst, c.max_scaled_error() / expected);
    }
    out.push_back(below("dressed-tcq", worst, 5.0, "max error / (delta/2J)^2 over delta/J in {0.05, 0.1, 0.2}"));
    out.push_back(order_check("dressed-tcq-order", log_slope(ratios, errors), "fitted exponent in delta/J"));
    return out;
}

std::vector<CheckResult> chi_checks(double r) {
    std::vector<CheckResult> out;
    const std::vector<double> ratios = {r, r / 2.0, r / 4.0};
    std::vector<double> te, qe;
    for (double x : ratios) {
        te.push_back(transmon_chi_error(x));
        qe.push_back(tcq_chi_error(x));
    }
    out.push_back(below("chi-transmon", te[0] / (r * r), 3.0, "relative error / (g/Delta)^2"));
    out.push_back(order_check("chi-transmon-order", log_slope(ratios, te), "fitted exponent in g/Delta"));
    out.push_back(below("chi-tcq", qe[0] / (r * r), 3.0, "relative error / (g/Delta)^2"));
    out.push_back(order_check("chi-tcq-order", log_slope(ratios, qe), "fitted exponent in g/Delta"));
    return out;
}

CheckResult switch_check(double r) {
    TcqSpec spec;
    spec.omega_plus = spec.omega_minus = 5.0;
    spec.delta_plus = spec.delta_minus = -0.3;
    spec.coupling = -0.4;
    const ResonatorPair res{6.5, 6.5};
    const DressedTcq dressed = tcq_mixing(spec);
    const double g = r * std::abs(dressed.omega_minus - res.omega1) / std::sqrt(2.0);
    const auto flip = sign_flip_couplings(g, g, TransitionBranch::Resonator1Minus);
    spec.g_plus = {flip[0], flip[2]};
    spec.g_minus = {flip[1], flip[3]};
    const DispersiveModel pert = tcq_dispersive(tcq_state_shifts(effective_couplings(spec, dressed), res));
    const SwitchSplitting s = switch_splitting(duffing_tcq_ladder(spec, res), 0.05);
    return below("zero-switch-splitting", s.state_dependent / std::abs(pert.chi1), 1e-2,
                 "state-dependent splitting / |chi1| at omega1 = omega2");
}

} // namespace

std::vector<CheckResult> run_validation(const ValidationConfig& v, std::vector<std::string>* warnings) {
    std::vector<CheckResult> out = charge_checks(v);
    for (auto& c : dressed_checks()) out.push_back(std::move(c));
    const double r = v.g_over_delta;
    if (r > 0.1) {
        std::ostringstream msg;
        msg << "g/Delta = " << r << " is outside the dispersive regime";
        if (warnings) warnings->push_back(msg.str());
        for (const char* name : {"chi-transmon", "chi-transmon-order", "chi-tcq", "chi-tcq-order", "zero-switch-splitting"})
            out.push_back({name, "skip", r, 0.1, "skipped: dispersive ratio g/Delta above 0.1"});
        return out;
    }
    for (auto& c : chi_checks(r)) out.push_back(std::move(c));
    out.push_back(switch_check(r));
    return out;
}

int cmd_dispersive(const ScenarioConfig& config, const CommandOptions& options, std::ostream& out) {
    if (config.devices.empty()) throw Error(ErrorKind::Config, "devices: at least one device is required");
    const DerivedScenario derived = derive(config);
    const double k1 = config.bus.kappa1;

    json doc;
    doc["scenario"] = config.name;
    doc["omega1_mhz"] = angular_to_mhz(derived.resonators.omega1);
    doc["omega2_mhz"] = angular_to_mhz(derived.resonators.omega2);
    doc["kappa1_mhz"] = angular_to_mhz(config.bus.kappa1);
    doc["kappa2_mhz"] = angular_to_mhz(config.bus.kappa2);
    if (!options.quiet) {
        out << "scenario " << config.name << "\n";
        out << "bus omega1/2pi = " << doc["omega1_mhz"].get<double>() << " MHz, omega2/2pi = "
            << doc["omega2_mhz"].get<double>() << " MHz\n";
    }

    int status = 0;
    json devices = json::array();
    for (std::size_t k = 0; k < derived.devices.size(); ++k) {
        const DerivedDevice& d = derived.devices[k];
        const DispersiveModel& m = d.model;
        const double disc = m.parity_discriminant();
        const double scale = std::max({m.chi1 * m.chi1, m.chi2 * m.chi2, m.switch_coupling * m.switch_coupling});
        const bool satisfiable = disc > 1e-12 * scale;
        if (!satisfiable) status = exit_code(ErrorKind::ParityConditionUnsatisfiable);

        json e;
        e["label"] = d.label;
        e["type"] = kind_name(config.devices[k].kind);
        e["qubit_frequency_mhz"] = angular_to_mhz(m.qubit_frequency);
        e["resonator1_mhz"] = angular_to_mhz(m.resonator1);
        e["resonator2_mhz"] = angular_to_mhz(m.resonator2);
        e["chi1_mhz"] = angular_to_mhz(m.chi1);
        e["chi2_mhz"] = angular_to_mhz(m.chi2);
        e["chi12_mhz"] = angular_to_mhz(m.switch_coupling);
        e["chi12_static_mhz"] = angular_to_mhz(m.static_coupling);
        e["chi1_over_kappa"] = m.chi1 / k1;
        e["chi2_over_kappa"] = m.chi2 / k1;
        e["chi12_over_kappa"] = m.switch_coupling / k1;
        e["chi12_sq_minus_chi1_chi2_over_kappa_sq"] = -disc / (k1 * k1);
        e["parity_condition"] = satisfiable ? "satisfiable" : "unsatisfiable";
        if (d.couplings) {
            e["g1_mhz"] = angular_to_mhz(d.couplings->g1);
            e["g2_mhz"] = angular_to_mhz(d.couplings->g2);
        }
        if (d.dressed) {
            e["mixing_angle"] = d.dressed->mixing_angle;
            e["omega_plus_dressed_mhz"] = angular_to_mhz(d.dressed->omega_plus);
            e["omega_minus_dressed_mhz"] = angular_to_mhz(d.dressed->omega_minus);
        }
        if (d.purcell) {
            e["purcell_time_kappa"] = number_or_text(d.purcell->times_kappa);
            e["purcell_time_us"] = number_or_text(d.purcell->seconds * 1e6);
        }
        e["warnings"] = m.warnings;
        devices.push_back(e);

        if (!options.quiet) {
            out << "device " << d.label << " (" << kind_name(config.devices[k].kind) << ")\n";
            if (d.couplings)
                out << "  g1/2pi = " << angular_to_mhz(d.couplings->g1) << " MHz, g2/2pi = "
                    << angular_to_mhz(d.couplings->g2) << " MHz\n";
            out << "  chi1/kappa = " << m.chi1 / k1 << ", chi2/kappa = " << m.chi2 / k1
                << ", chi12/kappa = " << m.switch_coupling / k1 << "\n";
            if (d.purcell) out << "  Purcell T_p kappa = " << format_number(d.purcell->times_kappa) << "\n";
            for (const auto& w : m.warnings) out << "  warning: " << w << "\n";
            out << "  parity condition: " << (satisfiable ? "satisfiable" : "unsatisfiable")
                << " (chi12^2 - chi1 chi2 = " << -disc / (k1 * k1) << " kappa^2)\n";
        }
    }
    doc["devices"] = devices;
    doc["matched"] = derived.matched;
    doc["mismatch"] = derived.mismatch;
    write_json(options, "dispersive.json", doc);
    if (!options.quiet && !derived.matched)
        out << "warning: devices do not share dispersive parameters (relative mismatch " << derived.mismatch << ")\n";
    if (status != 0) out << "error: parity condition unsatisfiable\n";
    return status;
}

int cmd_simulate(const ScenarioConfig& config, const CommandOptions& options, std::ostream& out) {
    const MeasurementSetup setup = dynamics_setup(config, derive(config));
    const AnalysisConfig& a = config.analysis;
    EvolveOptions evo;
    evo.stride = a.stride;

    std::vector<int> weights;
    if (options.hamming < 0) {
        weights = {0, 1, 2, 3};
    } else {
        hamming_sign(options.hamming);
        weights = {options.hamming};
    }
    std::array<Trajectory, 4> trajs;
    if (weights.size() == 4) {
        trajs = evolve_all(setup, a.tau, a.dt, evo);
    } else {
        trajs[weights[0]] = evolve(setup, weights[0], a.tau, a.dt, evo);
    }

    json doc;
    doc["scenario"] = config.name;
    doc["chi_over_kappa"] = {setup.model.chi1, setup.model.chi2, setup.model.switch_coupling};
    doc["detunings_over_kappa"] = {setup.detuning1, setup.detuning2};
    json refl = json::array();
    std::array<complex, 4> r{};
    for (int h = 0; h < 4; ++h) {
        r[h] = reflection(setup, h);
        refl.push_back({{"hw", h}, {"re", r[h].real()}, {"im", r[h].imag()}, {"abs", std::abs(r[h])}});
    }
    doc["reflection"] = refl;
    const double collapse = std::max(std::abs(r[0] - r[2]), std::abs(r[1] - r[3]));
    doc["parity_collapse"] = collapse;
    doc["parity_contrast"] = std::abs(r[0] - r[1]);

    for (int h : weights) {
        write_table(options, "trajectory_hw" + std::to_string(h) + ".csv", trajectory_table(trajs[h]));
        Table field{{"t", "re_bout", "im_bout"}, {}};
        for (std::size_t k = 0; k < trajs[h].size(); ++k)
            field.rows.push_back({trajs[h].time[k], trajs[h].out[k].real(), trajs[h].out[k].imag()});
        write_table(options, "output_hw" + std::to_string(h) + ".csv", field);
    }

    if (!options.quiet) {
        out << "scenario " << config.name << "\n";
        for (int h = 0; h < 4; ++h)
            out << "  r[hw=" << h << "] = " << r[h].real() << (r[h].imag() < 0 ? " - " : " + ") << std::abs(r[h].imag())
                << "i\n";
        out << "  parity collapse max(|r0-r2|, |r1-r3|) = " << collapse << "\n";
    }

    if (weights.size() == 4) {
        std::array<complex, 4> fields{};
        for (int h = 0; h < 4; ++h) fields[h] = integrated_field(trajs[h], a.tau);
        const PhaseOptimum best = optimal_phase(fields, a.tau, a.noise);
        doc["phi_star_rad"] = best.phase;
        doc["info_hamming_bits"] = best.gains.hamming_bits;
        doc["info_parity_bits"] = best.gains.parity_bits;
        doc["delta_info_bits"] = best.gains.delta_bits;
        doc["missing_parity_bits"] = best.gains.missing_parity_bits;
        const RateSeries rates = rate_series(trajs, best.phase, a.tau, a.rate_points, a.noise);
        write_table(options, "rates.csv", rate_table(rates));
        if (!options.quiet)
            out << "  phi* = " << best.phase << " rad, I_hw = " << best.gains.hamming_bits
                << " bits, I_P = " << best.gains.parity_bits << " bits\n";
    }
    write_json(options, "summary.json", doc);
    return 0;
}

int cmd_sweep(const ScenarioConfig& config, const CommandOptions& options, std::ostream& out) {
    if (!config.pulse) throw Error(ErrorKind::Config, "pulse: a pulse block is required for sweeps");
    const AnalysisConfig& a = config.analysis;
    SweepSettings s;
    s.pulse = *config.pulse;
    s.tau = a.tau;
    s.dt = a.dt;
    s.stride = a.stride;
    s.parity_branch = config.bus.parity_branch;
    s.noise = a.noise;

    std::vector<std::pair<std::string, std::vector<ChiPair>>> tables;
    if (a.grid) {
        const GridConfig& g = *a.grid;
        tables.emplace_back("sweep.csv", chi_grid(linspace(g.lo1, g.hi1, g.n1), linspace(g.lo2, g.hi2, g.n2)));
    }
    for (const CutConfig& c : a.cuts) {
        const auto chi = linspace(c.lo, c.hi, c.points);
        tables.emplace_back("sweep_" + c.name + ".csv", c.chi2 ? fixed_chi2_cut(*c.chi2, chi) : diagonal_cut(chi));
    }
    if (!a.points.empty()) tables.emplace_back("sweep_points.csv", a.points);
    if (tables.empty()) {
        const GridConfig g;
        tables.emplace_back("sweep.csv", chi_grid(linspace(g.lo1, g.hi1, g.n1), linspace(g.lo2, g.hi2, g.n2)));
    }

    json doc;
    doc["scenario"] = config.name;
    json summaries = json::array();
    for (const auto& [file, points] : tables) {
        const std::vector<SweepPoint> result = chi_sweep(points, s);
        write_table(options, file, sweep_table(result));
        const SweepPoint& low = argmin_missing(result);
        const SweepPoint& high = *std::max_element(result.begin(), result.end(), [](const auto& x, const auto& y) {
            return x.gains.parity_bits < y.gains.parity_bits;
        });
        summaries.push_back({{"file", file},
                             {"points", result.size()},
                             {"argmin_missing_parity",
                              {{"chi1_over_kappa", low.chi1},
                               {"chi2_over_kappa", low.chi2},
                               {"missing_parity_bits", low.gains.missing_parity_bits},
                               {"phi_star_rad", low.phase}}},
                             {"argmax_info_parity",
                              {{"chi1_over_kappa", high.chi1},
                               {"chi2_over_kappa", high.chi2},
                               {"info_parity_bits", high.gains.parity_bits}}}});
        if (!options.quiet)
            out << file << ": " << result.size() << " points, min missing parity " << low.gains.missing_parity_bits
                << " bits at chi1/kappa = " << low.chi1 << ", chi2/kappa = " << low.chi2 << "\n";
    }
    doc["tables"] = summaries;
    write_json(options, "sweep_summary.json", doc);
    return 0;
}

int cmd_validate(const ScenarioConfig& config, const CommandOptions& options, std::ostream& out) {
    std::vector<std::string> warnings;
    const std::vector<CheckResult> checks = run_validation(config.validation, &warnings);
    std::string csv = "check,status,value,threshold,note\n";
    bool failed = false;
    for (const auto& c : checks) {
        csv += c.name + "," + c.status + "," + format_number(c.value) + "," + format_number(c.threshold) + ",\"" +
               c.note + "\"\n";
        failed = failed || c.status == "fail";
    }
    if (options.out_dir) write_text(*options.out_dir / "validate.csv", csv);
    if (!options.quiet) {
        for (const auto& w : warnings) out << "warning: " << w << "\n";
        for (const auto& c : checks)
            out << c.status << "  " << c.name << "  value " << format_number(c.value) << "  threshold "
                << format_number(c.threshold) << (c.note.empty() ? "" : "  (" + c.note + ")") << "\n";
    }
    return failed ? exit_code(ErrorKind::ConvergenceFailure) : 0;
}

int cmd_scenario_list(std::ostream& out) {
    const auto presets = preset_list();
    std::size_t width = 0;
    for (const auto& p : presets) width = std::max(width, p.first.size());
    for (const auto& [name, description] : presets)
        out << name << std::string(width - name.size() + 2, ' ') << description << "\n";
    return 0;
}

} // namespace pscope
