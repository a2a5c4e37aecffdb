#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "parityscope/cavity.hpp"
#include "parityscope/circuit.hpp"
#include "parityscope/commands.hpp"
#include "parityscope/dispersive.hpp"
#include "parityscope/errors.hpp"
#include "parityscope/parallel.hpp"
#include "parityscope/readout.hpp"
#include "parityscope/scenario.hpp"
#include "parityscope/sweep.hpp"
#include "parityscope/units.hpp"

using namespace pscope;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome coupling_table() {
    const double published[3][2] = {{106.6, 76.4}, {132.5, 113.3}, {158.4, 150.0}};
    Outcome o;
    const DerivedScenario d = derive(load_preset("paper-sec5-symmetric"));
    o.require(d.devices.size() == 3, "expected three devices");
    double worst = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(3, d.devices.size()); ++k) {
        const auto& g = d.devices[k].couplings;
        o.require(g.has_value(), "missing couplings");
        if (!g) continue;
        worst = std::max({worst, rel(units::angular_to_mhz(g->g1), published[k][0]),
                          rel(units::angular_to_mhz(g->g2), published[k][1])});
    }
    o.require(worst < 0.02, fmt("worst relative error %.3g", worst));
    if (o.pass) o.detail = fmt("worst relative error %.3g", worst);
    return o;
}

Outcome purcell_table() {
    const double symmetric[3] = {100.1, 103.7, 106.2};
    const double asymmetric[3] = {166.8, 172.8, 177.0};
    Outcome o;
    double worst = 0.0;
    auto compare = [&](const char* preset, const double* expected) {
        const DerivedScenario d = derive(load_preset(preset));
        o.require(d.devices.size() == 3, std::string(preset) + ": expected three devices");
        for (std::size_t k = 0; k < std::min<std::size_t>(3, d.devices.size()); ++k) {
            const auto& p = d.devices[k].purcell;
            o.require(p.has_value(), "missing Purcell time");
            if (p) worst = std::max(worst, rel(p->times_kappa, expected[k]));
        }
    };
    compare("paper-sec5-symmetric", symmetric);
    compare("paper-sec5-asymmetric", asymmetric);
    o.require(worst < 0.02, fmt("worst relative error %.3g", worst));
    if (o.pass) o.detail = fmt("worst relative error %.3g", worst);
    return o;
}

Outcome transmon_obstruction() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int draws = 10000;
    int holds = 0, unsatisfiable = 0;
    for (int k = 0; k < draws; ++k) {
        const double ec = 0.2 + 0.2 * u(rng);
        const TransmonLevels lv = transmon_levels({ec * (30.0 + 70.0 * u(rng)), ec});
        // detunings outside the straddling window, so each Δ_i and Δ_i + δ share a sign
        auto detuning = [&] { return u(rng) < 0.5 ? ec + 0.5 + 2.0 * u(rng) : -(0.5 + 2.0 * u(rng)); };
        const double d1 = detuning(), d2 = detuning();
        const double g1 = 0.1 * (0.01 + 0.99 * u(rng)) * std::min(std::abs(d1), std::abs(d1 - ec));
        const double g2 = 0.1 * (0.01 + 0.99 * u(rng)) * std::min(std::abs(d2), std::abs(d2 - ec));
        const DispersiveModel m = transmon_dispersive(lv, {g1, g2, d1, d2});
        if (m.switch_coupling * m.switch_coupling >= m.chi1 * m.chi2) ++holds;
        try {
            parity_detunings(m, 1.0, 1.0);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParityConditionUnsatisfiable) ++unsatisfiable;
        }
    }
    Outcome o;
    o.require(holds == draws, fmt("inequality held in %d of %d", holds, draws));
    o.require(unsatisfiable == draws, fmt("unsatisfiable in %d of %d", unsatisfiable, draws));
    if (o.pass) o.detail = fmt("%d of %d draws obstructed", unsatisfiable, draws);
    return o;
}

Outcome reflection_collapse() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double unit_err = 0.0, collapse = 0.0, min_contrast = INFINITY;
    int contrast_cases = 0;
    for (int k = 0; k < 10000; ++k) {
        MeasurementSetup s;
        s.kappa1 = 1.0;
        s.kappa2 = 0.2 + 1.8 * std::abs(u(rng));
        s.detuning1 = 2.0 * u(rng);
        s.detuning2 = 2.0 * u(rng);
        s.model = manual_model(u(rng), u(rng), 0.5 * u(rng));
        for (int h = 0; h < 4; ++h) unit_err = std::max(unit_err, std::abs(std::abs(reflection(s, h)) - 1.0));
        const double d = s.model.parity_discriminant();
        if (d < 0.0) continue;
        for (int branch : {1, -1}) {
            MeasurementSetup p;
            try {
                p = with_parity_detunings(s, branch);
            } catch (const Error&) {
                continue;
            }
            std::array<complex, 4> r{};
            for (int h = 0; h < 4; ++h) {
                r[h] = reflection(p, h);
                unit_err = std::max(unit_err, std::abs(std::abs(r[h]) - 1.0));
            }
            collapse = std::max({collapse, std::abs(r[0] - r[2]), std::abs(r[1] - r[3])});
            if (d > 1e-6) {
                ++contrast_cases;
                min_contrast = std::min(min_contrast, std::abs(r[0] - r[1]));
            }
        }
    }
    Outcome o;
    o.require(unit_err < 1e-12, fmt("max ||r|-1| = %.3g", unit_err));
    o.require(collapse < 1e-12, fmt("max parity collapse error %.3g", collapse));
    o.require(min_contrast > 1e-6, fmt("min even/odd contrast %.3g", min_contrast));
    if (o.pass)
        o.detail = fmt("||r|-1| <= %.2g, collapse <= %.2g, min contrast %.3g over %d cases", unit_err, collapse,
                       min_contrast, contrast_cases);
    return o;
}

double slowest_decay(const MeasurementSetup& s, int h) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(drift_matrix(s, h));
    return std::min(es.eigenvalues()(0).real(), es.eigenvalues()(1).real());
}

Outcome dynamics_oracle() {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    int setups = 0;
    while (setups < 100) {
        MeasurementSetup s;
        s.kappa1 = 0.5 + 1.5 * std::abs(u(rng));
        s.kappa2 = 0.5 + 1.5 * std::abs(u(rng));
        s.detuning1 = 2.0 * u(rng);
        s.detuning2 = 2.0 * u(rng);
        s.model = manual_model(u(rng), u(rng), 0.5 * u(rng));
        s.pulse = {0.3 + 0.5 * std::abs(u(rng)), 2.0, 0.5, 1e9};
        double gamma = INFINITY;
        for (int h = 0; h < 4; ++h) gamma = std::min(gamma, slowest_decay(s, h));
        // nearly dark modes would need arbitrarily long runs
        if (gamma < 0.05) continue;
        ++setups;
        const double kappa = std::min(s.kappa1, s.kappa2);
        const double dt = default_step(s);
        const int steps = static_cast<int>(std::ceil((20.0 / kappa + 25.0 / gamma + s.pulse.t_on + s.pulse.ramp) / dt));
        for (int h = 0; h < 4; ++h) {
            const Trajectory t = evolve(s, h, steps * dt, dt, {steps, true, false});
            const Eigen::Vector2cd ss = steady_state(s, h);
            const Eigen::Vector2cd end(t.a1.back(), t.a2.back());
            worst = std::max(worst, (end - ss).norm() / ss.norm());
        }
    }

    MeasurementSetup s;
    s.model = manual_model(0.4, 0.4);
    s.pulse = {0.5, 4.0, 1.0, 16.0};
    s = with_parity_detunings(s, 1);
    const EvolveOptions o4{1, false, false};
    const double t_final = 24.0;
    const complex ref = evolve(s, 1, t_final, 0.1 / 32, o4).a1.back();
    std::vector<double> x, y;
    for (double dt : {0.2, 0.1, 0.05}) {
        x.push_back(std::log(dt));
        y.push_back(std::log(std::abs(evolve(s, 1, t_final, dt, o4).a1.back() - ref)));
    }
    // least-squares slope
    const double mx = (x[0] + x[1] + x[2]) / 3, my = (y[0] + y[1] + y[2]) / 3;
    double sxy = 0.0, sxx = 0.0;
    for (int k = 0; k < 3; ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    const double order = sxy / sxx;

    Outcome o;
    o.require(worst < 1e-6, fmt("worst steady-state deviation %.3g", worst));
    o.require(std::abs(order - 4.0) <= 0.3, fmt("fitted order %.3f", order));
    if (o.pass) o.detail = fmt("worst steady-state deviation %.3g, fitted RK4 order %.3f", worst, order);
    return o;
}

Outcome fig4_cuts() {
    const SweepSettings settings;
    const auto chi = linspace(0.1, 1.2, 61);
    const auto diagonal = chi_sweep(diagonal_cut(chi), settings);
    const auto fixed = chi_sweep(fixed_chi2_cut(0.3, chi), settings);
    const SweepPoint& a = argmin_missing(diagonal);
    const SweepPoint& b = argmin_missing(fixed);
    Outcome o;
    o.require(std::abs(a.chi1 - 0.5) <= 0.1, fmt("diagonal argmin at chi/kappa = %.3f", a.chi1));
    o.require(b.gains.missing_parity_bits > a.gains.missing_parity_bits,
              fmt("chi2 = 0.3 minimum %.3g not above diagonal minimum %.3g", b.gains.missing_parity_bits,
                  a.gains.missing_parity_bits));
    if (o.pass)
        o.detail = fmt("diagonal argmin chi/kappa = %.3f (missing %.3g bits); chi2 = 0.3 minimum %.3g bits at chi1 = %.3f",
                       a.chi1, a.gains.missing_parity_bits, b.gains.missing_parity_bits, b.chi1);
    return o;
}

Outcome information_properties() {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double bound = -INFINITY, range = 0.0, norm = 0.0, martingale = 0.0, period = 0.0, pointwise = -INFINITY;
    const int models = 400;
    for (int k = 0; k < models; ++k) {
        std::array<complex, 4> fields{};
        for (auto& f : fields) f = complex(4.0 * u(rng), 4.0 * u(rng));
        const double tau = 0.5 + 20.0 * std::abs(u(rng));
        const double phi = std::numbers::pi * std::abs(u(rng));
        const NoiseConvention noise = k % 2 ? NoiseConvention::VarianceTau : NoiseConvention::VarianceTauSquared;
        const SignalModel m = signal_model(fields, tau, phi, noise);
        const InfoGains g = info_gains(m);
        bound = std::max(bound, g.parity_bits - g.hamming_bits);
        range = std::max({range, -g.parity_bits, g.parity_bits - 1.0, -g.hamming_bits, g.hamming_bits - 2.0});
        norm = std::max(norm, std::abs(g.normalization - 1.0));
        for (double p : g.mean_posterior) martingale = std::max(martingale, std::abs(p - 0.25));
        const InfoGains shifted = info_gains(signal_model(fields, tau, phi + std::numbers::pi, noise));
        period = std::max({period, std::abs(shifted.parity_bits - g.parity_bits),
                           std::abs(shifted.hamming_bits - g.hamming_bits)});
        const double sigma = std::sqrt(m.variance());
        for (double x : {-4.0, -1.0, 0.0, 0.5, 2.0, 5.0}) {
            const PointInformation p = pointwise_information(m.means[k % 4] + x * sigma, m);
            pointwise = std::max(pointwise, p.parity - p.hamming);
        }
    }
    Outcome o;
    o.require(bound <= 1e-12, fmt("I_P exceeds I_hw by %.3g", bound));
    o.require(pointwise <= 1e-12, fmt("pointwise parity information exceeds h_w information by %.3g", pointwise));
    o.require(range <= 1e-12, fmt("range violation %.3g", range));
    o.require(norm < 1e-8, fmt("normalization error %.3g", norm));
    o.require(martingale < 1e-6, fmt("posterior martingale error %.3g", martingale));
    o.require(period < 1e-9, fmt("phase periodicity error %.3g", period));
    if (o.pass)
        o.detail = fmt("%d models: normalization %.2g, martingale %.2g, periodicity %.2g", models, norm, martingale,
                       period);
    return o;
}

Outcome oracle_validation() {
    const auto checks = run_validation(ValidationConfig{});
    Outcome o;
    const std::vector<std::string> wanted = {"chi-transmon", "chi-transmon-order", "chi-tcq",
                                             "chi-tcq-order", "zero-switch-splitting", "charge-dispersion"};
    std::string summary;
    for (const std::string& name : wanted) {
        const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
        if (it == checks.end()) {
            o.require(false, name + " missing");
            continue;
        }
        o.require(it->status == "pass", fmt("%s %s (%.3g vs %.3g)", name.c_str(), it->status.c_str(), it->value,
                                            it->threshold));
        summary += (summary.empty() ? "" : ", ") + fmt("%s %.3g", name.c_str(), it->value);
    }
    if (o.pass) o.detail = summary;
    return o;
}

Outcome capacitance_appendix() {
    Outcome o;
    LinePlacement p;
    p.length = 10e-3;
    p.capacitance_per_length = 1.6e-10;
    p.inductance_per_length = 4.1e-7;
    p.total_capacitance = 80e-15;
    p.mode = 2;
    p.cutoff = 4;
    const double lc = p.capacitance_per_length * p.length;

    double identity = 0.0;
    std::vector<double> devs;
    for (double ratio : {1e-2, 1e-3, 1e-4}) {
        p.coupling_capacitance = ratio * lc;
        p.position = 0.1 * p.length;
        const std::vector<double> caps = mode_capacitances(p);
        const Eigen::MatrixXd c = capacitance_matrix(caps, lc, p.total_capacitance);
        const CapacitanceInverse inv = capacitance_inverse(caps, lc, p.total_capacitance);
        const auto n = c.rows();
        Eigen::VectorXd s = Eigen::VectorXd::Constant(n, std::sqrt(lc));
        s(n - 1) = std::sqrt(p.total_capacitance);
        const Eigen::MatrixXd prod = s.cwiseInverse().asDiagonal() * c * inv.exact * s.asDiagonal();
        identity = std::max(identity, (prod - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
        devs.push_back(inv.scaled_deviation);
    }
    const double slope1 = std::log10(devs[0] / devs[1]), slope2 = std::log10(devs[1] / devs[2]);
    o.require(identity < 1e-10, fmt("identity error %.3g", identity));
    o.require(std::abs(slope1 - 2.0) < 0.1 && std::abs(slope2 - 2.0) < 0.1,
              fmt("deviation decades %.3f, %.3f", slope1, slope2));

    p.coupling_capacitance = 1e-3 * lc;
    auto g_at = [&](double x) {
        p.position = x * p.length;
        return coupling_at_position(p);
    };
    const double before = g_at(0.2), node = g_at(0.25), after = g_at(0.3);
    o.require(before * after < 0.0 && node == 0.0, fmt("g(0.2L) = %.3g, g(L/4) = %.3g, g(0.3L) = %.3g", before, node, after));
    if (o.pass)
        o.detail = fmt("identity %.2g; deviation decades %.3f, %.3f; g flips sign across x = L/4", identity, slope1,
                       slope2);
    return o;
}

struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    WorkerScope scope(worker_count());
    const std::vector<Criterion> criteria = {
        {"coupling table", 1.0, coupling_table},
        {"Purcell table", 1.0, purcell_table},
        {"transmon obstruction", 5.0, transmon_obstruction},
        {"reflection unitarity and parity collapse", 5.0, reflection_collapse},
        {"dynamics oracle equivalence", 30.0, dynamics_oracle},
        {"missing parity information argmin", 600.0, fig4_cuts},
        {"information-theory invariants", 120.0, information_properties},
        {"perturbation theory oracles", 300.0, oracle_validation},
        {"capacitance matrix and coupling profile", 5.0, capacitance_appendix},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= criteria[k].budget_s) {
            o.require(false, fmt("runtime %.2f s over the %.0f s budget", secs, criteria[k].budget_s));
        }
        if (!o.pass) ++failed;
        std::printf("[%s] %zu. %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
