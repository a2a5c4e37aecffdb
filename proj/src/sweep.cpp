#include "parityscope/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "parityscope/errors.hpp"

namespace pscope {

SweepPoint sweep_point(double chi1, double chi2, const SweepSettings& s) {
    MeasurementSetup setup;
    setup.model = manual_model(chi1, chi2, 0.0);
    setup.pulse = s.pulse;
    const ParityDetunings d = parity_detunings(setup.model, 1.0, 1.0);
    setup.detuning1 = d.branch(s.parity_branch)[0];
    setup.detuning2 = d.branch(s.parity_branch)[1];

    EvolveOptions options;
    options.stride = s.stride;
    std::array<complex, 4> fields{};
    for (int h = 0; h < 4; ++h) fields[h] = integrated_field(evolve(setup, h, s.tau, s.dt, options), s.tau);

    const PhaseOptimum best = optimal_phase(fields, s.tau, s.noise, s.quadrature);
    return {chi1, chi2, best.gains, best.phase};
}

std::vector<SweepPoint> chi_sweep(const std::vector<ChiPair>& points, const SweepSettings& settings) {
    const int n = static_cast<int>(points.size());
    std::vector<SweepPoint> out(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) {
        try {
            out[k] = sweep_point(points[k][0], points[k][1], settings);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<SweepPoint> chi_sweep_serial(const std::vector<ChiPair>& points, const SweepSettings& settings) {
    std::vector<SweepPoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(sweep_point(p[0], p[1], settings));
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw Error(ErrorKind::Config, "a range needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * k / (n - 1);
    return v;
}

std::vector<ChiPair> chi_grid(const std::vector<double>& chi1, const std::vector<double>& chi2) {
    std::vector<ChiPair> out;
    out.reserve(chi1.size() * chi2.size());
    for (double a : chi1)
        for (double b : chi2) out.push_back({a, b});
    return out;
}

std::vector<ChiPair> diagonal_cut(const std::vector<double>& chi) {
    std::vector<ChiPair> out;
    for (double c : chi) out.push_back({c, c});
    return out;
}

std::vector<ChiPair> fixed_chi2_cut(double chi2, const std::vector<double>& chi1) {
    std::vector<ChiPair> out;
    for (double c : chi1) out.push_back({c, chi2});
    return out;
}

const SweepPoint& argmin_missing(const std::vector<SweepPoint>& table) {
    if (table.empty()) throw Error(ErrorKind::Config, "empty sweep table");
    return *std::min_element(table.begin(), table.end(), [](const SweepPoint& a, const SweepPoint& b) {
        return a.gains.missing_parity_bits < b.gains.missing_parity_bits;
    });
}

} // namespace pscope
