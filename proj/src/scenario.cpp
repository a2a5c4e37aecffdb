#include "parityscope/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "parityscope/errors.hpp"
#include "parityscope/units.hpp"

namespace pscope {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::Config, path + ": " + message);
}

class Node {
public:
    Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {
        if (!value_.is_object()) fail(path_, "expected an object");
    }

    const std::string& path() const { return path_; }
    bool has(const std::string& key) const { return value_.contains(key) && !value_.at(key).is_null(); }
    std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& raw(const std::string& key) const {
        if (!has(key)) fail(child_path(key), "required field is missing");
        return value_.at(key);
    }

    Node object(const std::string& key) const { return Node(raw(key), child_path(key)); }

    double number(const std::string& key) const {
        const json& v = raw(key);
        if (!v.is_number()) fail(child_path(key), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(child_path(key), "expected a finite number");
        return x;
    }

    double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

    int integer(const std::string& key, int fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_number_integer()) fail(child_path(key), "expected an integer");
        return v.get<int>();
    }

    std::string string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_string()) fail(child_path(key), "expected a string");
        return v.get<std::string>();
    }

    double mhz(const std::string& key) const { return units::mhz_to_angular(number(key)); }
    double mhz(const std::string& key, double fallback) const { return has(key) ? mhz(key) : fallback; }

private:
    const json& value_;
    std::string path_;
};

double time_value(const Node& node, const std::string& key, double fallback, double kappa_ref) {
    if (!node.has(key)) return fallback;
    const json& v = node.raw(key);
    if (v.is_number()) return v.get<double>();
    Node t(v, node.child_path(key));
    const double x = t.number("value");
    const std::string unit = t.string("unit", "1/kappa");
    if (unit == "1/kappa") return x;
    if (unit == "us") {
        if (!(kappa_ref > 0.0)) fail(t.path(), "microsecond times need bus.kappa1_mhz");
        return x * 1e-6 * kappa_ref;
    }
    fail(t.child_path("unit"), "unknown unit '" + unit + "' (use 1/kappa or us)");
}

template <typename Enum>
Enum choice(const Node& node, const std::string& key, std::initializer_list<std::pair<const char*, Enum>> options,
            Enum fallback) {
    if (!node.has(key)) return fallback;
    const std::string v = node.string(key, "");
    for (const auto& [name, value] : options)
        if (v == name) return value;
    fail(node.child_path(key), "unknown value '" + v + "'");
}

DeviceConfig parse_device(const Node& n) {
    DeviceConfig d;
    d.label = n.string("label", n.path());
    const std::string type = n.string("type", "");
    d.coupling_convention = choice(n, "coupling_convention",
                                   {{"unitary", CouplingConvention::Unitary}, {"printed", CouplingConvention::Printed}},
                                   CouplingConvention::Unitary);
    d.anharmonicity_convention =
        choice(n, "anharmonicity_convention",
               {{"unitary", AnharmonicityConvention::Unitary}, {"printed", AnharmonicityConvention::Printed}},
               AnharmonicityConvention::Unitary);
    if (type == "transmon") {
        d.kind = DeviceKind::Transmon;
        d.transmon = {n.mhz("EJ_mhz"), n.mhz("EC_mhz")};
        if (!(d.transmon.josephson_energy > 0.0) || !(d.transmon.charging_energy > 0.0))
            fail(n.path(), "EJ_mhz and EC_mhz must be positive");
        d.g1 = n.mhz("g1_mhz");
        d.g2 = n.mhz("g2_mhz");
    } else if (type == "tcq") {
        d.kind = DeviceKind::Tcq;
        d.tcq.omega_plus = n.mhz("omega_plus_mhz");
        d.tcq.omega_minus = n.mhz("omega_minus_mhz");
        d.tcq.delta_plus = n.mhz("delta_plus_mhz");
        d.tcq.delta_minus = n.mhz("delta_minus_mhz");
        d.tcq.coupling = n.mhz("J_mhz");
        d.tcq.g_plus = {n.mhz("g1_plus_mhz"), n.mhz("g2_plus_mhz")};
        d.tcq.g_minus = {n.mhz("g1_minus_mhz"), n.mhz("g2_minus_mhz")};
    } else if (type == "tcq-design") {
        d.kind = DeviceKind::TcqDesign;
        d.design_omega_minus = n.mhz("omega_minus_mhz");
        d.design_coupling = n.mhz("J_mhz");
        d.design_anharmonicity = n.mhz("anharmonicity_mhz");
    } else if (type == "manual") {
        d.kind = DeviceKind::Manual;
        d.chi_over_kappa = {n.number("chi1_over_kappa"), n.number("chi2_over_kappa"), n.number("chi12_over_kappa", 0.0)};
    } else {
        fail(n.child_path("type"), "expected transmon, tcq, tcq-design or manual");
    }
    return d;
}

CutConfig parse_cut(const Node& n) {
    CutConfig c;
    c.name = n.string("name", "");
    if (c.name.empty()) fail(n.child_path("name"), "cuts need a name");
    if (n.has("chi2")) c.chi2 = n.number("chi2");
    c.lo = n.number("min", c.lo);
    c.hi = n.number("max", c.hi);
    c.points = n.integer("points", c.points);
    if (c.points < 1) fail(n.child_path("points"), "must be positive");
    return c;
}

void parse_analysis(const Node& n, AnalysisConfig& a) {
    a.tau = time_value(n, "tau", a.tau, 0.0);
    a.dt = time_value(n, "dt", a.dt, 0.0);
    a.stride = n.integer("stride", a.stride);
    a.rate_points = n.integer("rate_points", a.rate_points);
    a.noise = choice(n, "noise",
                     {{"tau", NoiseConvention::VarianceTau}, {"tau-squared", NoiseConvention::VarianceTauSquared}},
                     a.noise);
    if (!(a.tau > 0.0)) fail(n.child_path("tau"), "must be positive");
    if (!(a.dt > 0.0)) fail(n.child_path("dt"), "must be positive");
    if (a.stride < 1) fail(n.child_path("stride"), "must be positive");
    if (!n.has("sweep")) return;
    const Node s = n.object("sweep");
    if (s.has("grid")) {
        const Node g = s.object("grid");
        GridConfig grid;
        const Node c1 = g.object("chi1");
        const Node c2 = g.object("chi2");
        grid.lo1 = c1.number("min");
        grid.hi1 = c1.number("max");
        grid.n1 = c1.integer("points", 61);
        grid.lo2 = c2.number("min");
        grid.hi2 = c2.number("max");
        grid.n2 = c2.integer("points", 61);
        if (grid.n1 < 1 || grid.n2 < 1) fail(g.path(), "grid needs positive point counts");
        a.grid = grid;
    }
    if (s.has("cuts")) {
        const json& cuts = s.raw("cuts");
        if (!cuts.is_array()) fail(s.child_path("cuts"), "expected an array");
        for (std::size_t k = 0; k < cuts.size(); ++k)
            a.cuts.push_back(parse_cut(Node(cuts[k], s.child_path("cuts") + "[" + std::to_string(k) + "]")));
    }
    if (s.has("points")) {
        const json& pts = s.raw("points");
        if (!pts.is_array()) fail(s.child_path("points"), "expected an array of [chi1, chi2]");
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const auto& p = pts[k];
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                fail(s.child_path("points") + "[" + std::to_string(k) + "]", "expected [chi1, chi2]");
            a.points.push_back({p[0].get<double>(), p[1].get<double>()});
        }
    }
}

std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

ScenarioConfig parse_scenario(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Config, source + ": " + locate(text, e.byte > 0 ? e.byte - 1 : 0) + ": malformed document");
    }
    const Node root(doc, "");
    ScenarioConfig cfg;
    cfg.name = root.string("name", source);
    cfg.description = root.string("description", "");

    if (root.has("bus")) {
        const Node b = root.object("bus");
        cfg.bus.omega1 = b.mhz("omega1_mhz", 0.0);
        if (b.has("omega2_mhz")) {
            const json& w2 = b.raw("omega2_mhz");
            if (w2.is_string()) {
                if (w2.get<std::string>() != "auto-parity")
                    fail(b.child_path("omega2_mhz"), "expected a number or \"auto-parity\"");
            } else {
                cfg.bus.omega2 = b.mhz("omega2_mhz");
            }
        } else {
            cfg.bus.omega2 = 0.0;
        }
        const double kappa = b.mhz("kappa_mhz", 0.0);
        cfg.bus.kappa1 = b.mhz("kappa1_mhz", kappa);
        cfg.bus.kappa2 = b.mhz("kappa2_mhz", kappa);
        if (!(cfg.bus.kappa1 > 0.0) || !(cfg.bus.kappa2 > 0.0))
            fail(b.path(), "kappa1_mhz and kappa2_mhz (or kappa_mhz) must be positive");
        cfg.bus.parity_branch = b.integer("parity_branch", -1);
        if (cfg.bus.parity_branch != 1 && cfg.bus.parity_branch != -1)
            fail(b.child_path("parity_branch"), "must be +1 or -1");
    } else {
        cfg.bus.omega2 = 0.0;
        cfg.bus.kappa1 = cfg.bus.kappa2 = units::mhz_to_angular(1.0);
    }

    if (root.has("devices")) {
        const json& devs = root.raw("devices");
        if (!devs.is_array()) fail("devices", "expected an array");
        for (std::size_t k = 0; k < devs.size(); ++k)
            cfg.devices.push_back(parse_device(Node(devs[k], "devices[" + std::to_string(k) + "]")));
    }

    if (root.has("targets")) {
        const Node t = root.object("targets");
        cfg.targets.present = true;
        cfg.targets.chi1_over_kappa = t.number("chi1_over_kappa");
        cfg.targets.chi2_over_kappa = t.number("chi2_over_kappa");
        cfg.targets.branch = choice(t, "branch",
                                    {{"resonator1-minus", TransitionBranch::Resonator1Minus},
                                     {"resonator2-minus", TransitionBranch::Resonator2Minus}},
                                    TransitionBranch::Resonator1Minus);
    }

    if (root.has("pulse")) {
        const Node p = root.object("pulse");
        DrivePulse pulse;
        pulse.amplitude = p.number("amplitude_sqrt_kappa");
        pulse.ramp = time_value(p, "ramp", pulse.ramp, cfg.bus.kappa1);
        pulse.t_on = time_value(p, "t_on", pulse.t_on, cfg.bus.kappa1);
        pulse.t_off = time_value(p, "t_off", pulse.t_off, cfg.bus.kappa1);
        try {
            pulse.validate();
        } catch (const Error& e) {
            fail(p.path(), e.what());
        }
        cfg.pulse = pulse;
    }

    if (root.has("analysis")) parse_analysis(root.object("analysis"), cfg.analysis);

    if (root.has("validation")) {
        const Node v = root.object("validation");
        auto& val = cfg.validation;
        val.ej_over_ec = v.number("ej_over_ec", val.ej_over_ec);
        val.ei_over_ec = v.number("ei_over_ec", val.ei_over_ec);
        val.charge_grid = v.integer("charge_grid", val.charge_grid);
        val.charge_n_max = v.integer("charge_n_max", val.charge_n_max);
        val.contrast_ej_over_ec = v.number("contrast_ej_over_ec", val.contrast_ej_over_ec);
        val.g_over_delta = v.number("g_over_delta", val.g_over_delta);
        if (val.charge_grid < 2) fail(v.child_path("charge_grid"), "must be at least 2");
        if (val.charge_n_max < 8) fail(v.child_path("charge_n_max"), "must be at least 8");
        if (!(val.g_over_delta > 0.0)) fail(v.child_path("g_over_delta"), "must be positive");
    }
    return cfg;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Config, "cannot open config " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str(), path.string());
}

ScenarioConfig load_preset(const std::string& name) { return parse_scenario(preset_text(name), "preset " + name); }

DerivedScenario derive(const ScenarioConfig& cfg) {
    DerivedScenario out;
    const BusConfig& bus = cfg.bus;
    out.resonators.omega1 = bus.omega1;

    if (bus.omega2) {
        out.resonators.omega2 = *bus.omega2;
    } else {
        DispersiveModel reference;
        if (cfg.targets.present) {
            reference = manual_model(cfg.targets.chi1_over_kappa * bus.kappa1, cfg.targets.chi2_over_kappa * bus.kappa1);
        } else if (!cfg.devices.empty() && cfg.devices.front().kind == DeviceKind::Manual) {
            const auto& c = cfg.devices.front().chi_over_kappa;
            reference = manual_model(c[0] * bus.kappa1, c[1] * bus.kappa1, c[2] * bus.kappa1);
        } else {
            fail("bus.omega2_mhz", "auto-parity needs target shifts or a manual device");
        }
        const ParityDetunings d = parity_detunings(reference, bus.kappa1, bus.kappa2);
        if (d.degenerate)
            throw Error(ErrorKind::ParityConditionUnsatisfiable, "auto-parity: chi1 chi2 - chi12^2 = 0 gives r_even = r_odd");
        const auto& branch = d.branch(bus.parity_branch);
        out.resonators.omega2 = bus.omega1 + branch[0] - branch[1];
    }
    const ResonatorPair& res = out.resonators;

    for (const DeviceConfig& dev : cfg.devices) {
        DerivedDevice dd;
        dd.label = dev.label;
        switch (dev.kind) {
        case DeviceKind::Transmon: {
            const TransmonLevels lv = transmon_levels(dev.transmon);
            dd.model = transmon_dispersive(
                dev.transmon, QubitCavityCoupling{dev.g1, dev.g2, lv.frequency - res.omega1, lv.frequency - res.omega2});
            break;
        }
        case DeviceKind::Tcq: {
            DressedTcq d = effective_couplings(dev.tcq, tcq_mixing(dev.tcq, dev.anharmonicity_convention),
                                               dev.coupling_convention);
            dd.model = tcq_dispersive(tcq_state_shifts(d, res));
            dd.model.warnings.insert(dd.model.warnings.begin(), d.warnings.begin(), d.warnings.end());
            const int i = std::abs(d.g_minus[0]) >= std::abs(d.g_minus[1]) ? 0 : 1;
            if (d.g_minus[i] != 0.0)
                dd.purcell = purcell_time(i == 0 ? bus.kappa1 : bus.kappa2, d.g_minus[i] / std::sqrt(2.0), d.omega_minus,
                                          res[i]);
            dd.dressed = d;
            break;
        }
        case DeviceKind::TcqDesign: {
            if (!cfg.targets.present) fail("targets", "tcq-design devices need target shifts");
            const DressedTcq base = design_dressed_tcq(dev.design_omega_minus, dev.design_coupling, dev.design_anharmonicity);
            const BareCouplings g =
                solve_couplings_for_chi(cfg.targets.chi1_over_kappa * bus.kappa1, cfg.targets.chi2_over_kappa * bus.kappa1,
                                        base, res, cfg.targets.branch);
            const DressedTcq d = with_sign_flip_couplings(base, g, cfg.targets.branch);
            dd.model = tcq_dispersive(tcq_state_shifts(d, res));
            const bool first = cfg.targets.branch == TransitionBranch::Resonator1Minus;
            dd.purcell = purcell_time(first ? bus.kappa1 : bus.kappa2, first ? g.g1 : g.g2, d.omega_minus,
                                      first ? res.omega1 : res.omega2);
            dd.couplings = g;
            dd.dressed = d;
            break;
        }
        case DeviceKind::Manual: {
            const auto& c = dev.chi_over_kappa;
            dd.model = manual_model(c[0] * bus.kappa1, c[1] * bus.kappa1, c[2] * bus.kappa1);
            break;
        }
        }
        out.devices.push_back(std::move(dd));
    }

    if (!out.devices.empty()) {
        const DispersiveModel& ref = out.devices.front().model;
        const double scale =
            std::max({std::abs(ref.chi1), std::abs(ref.chi2), std::abs(ref.switch_coupling), 1e-300});
        for (const auto& dd : out.devices) {
            const DispersiveModel& m = dd.model;
            out.mismatch = std::max({out.mismatch, std::abs(m.chi1 - ref.chi1) / scale, std::abs(m.chi2 - ref.chi2) / scale,
                                     std::abs(m.switch_coupling - ref.switch_coupling) / scale});
        }
        out.matched = out.mismatch <= 1e-6;
    }
    return out;
}

MeasurementSetup dynamics_setup(const ScenarioConfig& cfg, const DerivedScenario& derived) {
    if (!cfg.pulse) fail("pulse", "a pulse block is required for dynamics");
    const double kappa = cfg.bus.kappa1;
    DispersiveModel model;
    if (!derived.devices.empty()) {
        for (const auto& dd : derived.devices) parity_detunings(dd.model, cfg.bus.kappa1, cfg.bus.kappa2);
        if (!derived.matched) {
            std::ostringstream msg;
            msg << "qubits do not share dispersive parameters (relative mismatch " << derived.mismatch << ")";
            fail("devices", msg.str());
        }
        const DispersiveModel& m = derived.devices.front().model;
        model = manual_model(m.chi1 / kappa, m.chi2 / kappa, m.switch_coupling / kappa);
        model.provenance = m.provenance;
    } else if (cfg.targets.present) {
        model = manual_model(cfg.targets.chi1_over_kappa, cfg.targets.chi2_over_kappa);
    } else {
        fail("devices", "dynamics need a device or target shifts");
    }
    MeasurementSetup setup;
    setup.kappa1 = 1.0;
    setup.kappa2 = cfg.bus.kappa2 / kappa;
    setup.model = model;
    setup.pulse = *cfg.pulse;
    const ParityDetunings d = parity_detunings(setup.model, setup.kappa1, setup.kappa2);
    if (d.degenerate)
        throw Error(ErrorKind::ParityConditionUnsatisfiable, "chi1 chi2 - chi12^2 = 0: r_even = r_odd for every detuning");
    setup.detuning1 = d.branch(cfg.bus.parity_branch)[0];
    setup.detuning2 = d.branch(cfg.bus.parity_branch)[1];
    return setup;
}

} // namespace pscope
