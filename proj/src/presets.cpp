#include <map>

#include "parityscope/errors.hpp"
#include "parityscope/scenario.hpp"

namespace pscope {

namespace {

struct Preset {
    std::string name;
    std::string text;
};

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = {
        {"paper-sec5-symmetric", R"json({
  "name": "paper-sec5-symmetric",
  "description": "Three TCQs tuned to chi1 = chi2 = -kappa/2 with the switch cancelled; auto-parity bus",
  "devices": [
    {"label": "a", "type": "tcq-design", "omega_minus_mhz": 6000, "J_mhz": -400, "anharmonicity_mhz": -300},
    {"label": "b", "type": "tcq-design", "omega_minus_mhz": 5600, "J_mhz": -400, "anharmonicity_mhz": -300},
    {"label": "c", "type": "tcq-design", "omega_minus_mhz": 5200, "J_mhz": -400, "anharmonicity_mhz": -300}
  ],
  "targets": {"chi1_over_kappa": -0.5, "chi2_over_kappa": -0.5, "branch": "resonator1-minus"},
  "bus": {"omega1_mhz": 7500, "omega2_mhz": "auto-parity", "kappa1_mhz": 5, "kappa2_mhz": 5, "parity_branch": -1},
  "pulse": {"amplitude_sqrt_kappa": 0.5, "ramp": 4, "t_on": 1, "t_off": 16},
  "analysis": {"tau": 28, "dt": 0.001, "stride": 10, "rate_points": 57, "noise": "tau"}
})json"},
        {"paper-sec5-asymmetric", R"json({
  "name": "paper-sec5-asymmetric",
  "description": "Three TCQs tuned to chi1 = -kappa/2, chi2 = -0.3 kappa with the '-' transition on resonator 2",
  "devices": [
    {"label": "a", "type": "tcq-design", "omega_minus_mhz": 6000, "J_mhz": -400, "anharmonicity_mhz": -300},
    {"label": "b", "type": "tcq-design", "omega_minus_mhz": 5600, "J_mhz": -400, "anharmonicity_mhz": -300},
    {"label": "c", "type": "tcq-design", "omega_minus_mhz": 5200, "J_mhz": -400, "anharmonicity_mhz": -300}
  ],
  "targets": {"chi1_over_kappa": -0.5, "chi2_over_kappa": -0.3, "branch": "resonator2-minus"},
  "bus": {"omega1_mhz": 7500, "omega2_mhz": "auto-parity", "kappa1_mhz": 5, "kappa2_mhz": 5, "parity_branch": -1},
  "pulse": {"amplitude_sqrt_kappa": 0.5, "ramp": 4, "t_on": 1, "t_off": 16},
  "analysis": {"tau": 28, "dt": 0.001, "stride": 10, "rate_points": 57, "noise": "tau"}
})json"},
        {"transmon-obstruction", R"json({
  "name": "transmon-obstruction",
  "description": "Three transmons on a two-resonator bus; chi1 chi2 < chi12^2 so no detuning satisfies the parity condition",
  "devices": [
    {"label": "a", "type": "transmon", "EJ_mhz": 20000, "EC_mhz": 300, "g1_mhz": 100, "g2_mhz": 80},
    {"label": "b", "type": "transmon", "EJ_mhz": 18000, "EC_mhz": 300, "g1_mhz": 100, "g2_mhz": 80},
    {"label": "c", "type": "transmon", "EJ_mhz": 16000, "EC_mhz": 300, "g1_mhz": 100, "g2_mhz": 80}
  ],
  "bus": {"omega1_mhz": 7500, "omega2_mhz": 7600, "kappa1_mhz": 5, "kappa2_mhz": 5},
  "pulse": {"amplitude_sqrt_kappa": 0.5, "ramp": 4, "t_on": 1, "t_off": 16}
})json"},
        {"fig4-cuts", R"json({
  "name": "fig4-cuts",
  "description": "Missing parity information along chi1 = chi2 and along chi2 = 0.3 kappa",
  "targets": {"chi1_over_kappa": -0.5, "chi2_over_kappa": -0.5},
  "bus": {"kappa_mhz": 5, "parity_branch": 1},
  "pulse": {"amplitude_sqrt_kappa": 0.5, "ramp": 4, "t_on": 1, "t_off": 16},
  "analysis": {
    "tau": 28, "dt": 0.001, "stride": 10,
    "sweep": {"cuts": [
      {"name": "diagonal", "min": 0.1, "max": 1.2, "points": 61},
      {"name": "chi2-0.3", "chi2": 0.3, "min": 0.1, "max": 1.2, "points": 61}
    ]}
  }
})json"},
        {"fig3-grid", R"json({
  "name": "fig3-grid",
  "description": "Information gains over the (chi1, chi2) plane",
  "targets": {"chi1_over_kappa": -0.5, "chi2_over_kappa": -0.5},
  "bus": {"kappa_mhz": 5, "parity_branch": 1},
  "pulse": {"amplitude_sqrt_kappa": 0.5, "ramp": 4, "t_on": 1, "t_off": 16},
  "analysis": {
    "tau": 28, "dt": 0.001, "stride": 10,
    "sweep": {"grid": {"chi1": {"min": 0.05, "max": 1.5, "points": 61}, "chi2": {"min": 0.05, "max": 1.5, "points": 61}}}
  }
})json"},
        {"oracle-nondispersive", R"json({
  "name": "oracle-nondispersive",
  "description": "Validation outside the dispersive regime (g/Delta = 0.5); perturbative checks are skipped with a warning",
  "validation": {"g_over_delta": 0.5}
})json"},
        {"oracle-decoupled", R"json({
  "name": "oracle-decoupled",
  "description": "Validation with the junction interaction switched off (E_I = 0)",
  "validation": {"ei_over_ec": 0.0}
})json"},
    };
    return all;
}

} // namespace

std::vector<std::pair<std::string, std::string>> preset_list() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : presets()) out.emplace_back(p.name, parse_scenario(p.text, p.name).description);
    return out;
}

const std::string& preset_text(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p.text;
    throw Error(ErrorKind::Config, "unknown preset '" + name + "'");
}

} // namespace pscope
