#include "parityscope/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parityscope/errors.hpp"

namespace pscope {

namespace {

// Composite Simpson over samples f[0..m] with spacing h; a 3/8 panel absorbs an odd interval count.
template <typename T, typename F>
T simpson(F&& f, long m, double h) {
    T sum{};
    if (m <= 0) return sum;
    if (m == 1) return h / 2.0 * (f(0) + f(1));
    long even = m % 2 == 0 ? m : m - 3;
    if (even > 0) {
        T inner{};
        for (long k = 1; k < even; ++k) inner += (k % 2 == 1 ? 4.0 : 2.0) * f(k);
        sum += h / 3.0 * (f(0) + inner + f(even));
    }
    if (even != m) sum += 3.0 * h / 8.0 * (f(m - 3) + 3.0 * f(m - 2) + 3.0 * f(m - 1) + f(m));
    return sum;
}

long grid_index(const Trajectory& traj, double tau) {
    if (tau == 0.0) return 0;
    const double h = traj.spacing();
    if (!(h > 0.0)) throw Error(ErrorKind::Config, "trajectory grid is empty");
    const long m = std::lround(tau / h);
    if (std::abs(m * h - tau) > 1e-9 * std::max(tau, h) || m < 0 || m >= static_cast<long>(traj.size()))
        throw Error(ErrorKind::Config, "integration time must be a grid point inside the trajectory");
    return m;
}

struct Accumulated {
    double normalization = 0.0;
    double missing_hamming = 0.0;
    double missing_parity = 0.0;
    std::array<double, 4> posterior{};
};

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

struct PointValues {
    double density = 0.0;
    Posterior post;
};

PointValues evaluate(double signal, const SignalModel& model) {
    const double var = model.variance();
    std::array<double, 4> log_like{};
    for (int h = 0; h < 4; ++h) {
        const double d = signal - model.means[h];
        log_like[h] = -d * d / (2.0 * var);
    }
    const double top = *std::max_element(log_like.begin(), log_like.end());
    std::array<double, 4> w{};
    double total = 0.0;
    for (int h = 0; h < 4; ++h) {
        w[h] = std::exp(log_like[h] - top);
        total += w[h];
    }
    PointValues v;
    for (int h = 0; h < 4; ++h) v.post.hamming[h] = w[h] / total;
    v.post.even = v.post.hamming[0] + v.post.hamming[2];
    v.post.odd = v.post.hamming[1] + v.post.hamming[3];
    v.density = 0.25 * std::exp(top) * total / std::sqrt(2.0 * std::numbers::pi * var);
    return v;
}

Accumulated accumulate(const SignalModel& model, int points, double padding) {
    const double sigma = std::sqrt(model.variance());
    const auto [lo_it, hi_it] = std::minmax_element(model.means.begin(), model.means.end());
    const double lo = *lo_it - padding * sigma;
    const double hi = *hi_it + padding * sigma;
    long n = std::max<long>(points, static_cast<long>(std::ceil((hi - lo) / (sigma / 20.0))) + 1);
    if (n % 2 == 0) ++n;
    const long m = n - 1;
    const double h = (hi - lo) / m;
    Accumulated acc;
    for (long k = 0; k <= m; ++k) {
        const double w = (k == 0 || k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        const PointValues v = evaluate(lo + k * h, model);
        double hw = 0.0;
        for (double p : v.post.hamming) hw += entropy_term(p);
        const double par = entropy_term(v.post.even) + entropy_term(v.post.odd);
        acc.normalization += w * v.density;
        acc.missing_hamming += w * v.density * hw;
        acc.missing_parity += w * v.density * par;
        for (int j = 0; j < 4; ++j) acc.posterior[j] += w * v.density * v.post.hamming[j];
    }
    const double scale = h / 3.0;
    acc.normalization *= scale;
    acc.missing_hamming *= scale;
    acc.missing_parity *= scale;
    for (double& p : acc.posterior) p *= scale;
    return acc;
}

InfoGains gains_from(const Accumulated& acc) {
    InfoGains g;
    g.missing_hamming_bits = acc.missing_hamming;
    g.missing_parity_bits = acc.missing_parity;
    g.hamming_bits = 2.0 - acc.missing_hamming;
    g.parity_bits = 1.0 - acc.missing_parity;
    g.delta_bits = g.hamming_bits - g.parity_bits;
    g.normalization = acc.normalization;
    g.mean_posterior = acc.posterior;
    return g;
}

double wrap_phase(double phi) {
    double w = std::fmod(phi, std::numbers::pi);
    if (w < 0.0) w += std::numbers::pi;
    if (w >= std::numbers::pi) w = 0.0;
    return w;
}

} // namespace

complex integrated_field(const Trajectory& traj, double tau) {
    const long m = grid_index(traj, tau);
    const double h = traj.spacing();
    const auto& b = traj.out;
    const complex fine = simpson<complex>([&](long k) { return b[k]; }, m, h);
    if (m % 2 == 0 && m >= 4) {
        const complex coarse = simpson<complex>([&](long k) { return b[2 * k]; }, m / 2, 2.0 * h);
        const double scale = simpson<double>([&](long k) { return std::abs(b[k]); }, m, h);
        if (std::abs(fine - coarse) > 1e-6 * scale) {
            std::ostringstream msg;
            msg << "Simpson estimate moves by " << std::abs(fine - coarse) / scale << " relative on the halved grid";
            throw Error(ErrorKind::GridTooCoarse, msg.str());
        }
    }
    return fine;
}

double integrated_signal(const Trajectory& traj, double phase, double tau) {
    return 2.0 * (std::exp(complex(0.0, -phase)) * integrated_field(traj, tau)).real();
}

SignalModel signal_model(const std::array<complex, 4>& fields, double tau, double phase, NoiseConvention noise) {
    SignalModel m;
    m.tau = tau;
    m.phase = phase;
    m.noise = noise;
    const complex rot = std::exp(complex(0.0, -phase));
    for (int h = 0; h < 4; ++h) m.means[h] = 2.0 * (rot * fields[h]).real();
    return m;
}

double conditional_density(double signal, const SignalModel& model, int hamming) {
    hamming_sign(hamming);
    const double var = model.variance();
    if (!(var > 0.0)) throw Error(ErrorKind::Config, "measurement time must be positive");
    const double d = signal - model.means[hamming];
    return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

Posterior posteriors(double signal, const SignalModel& model) {
    if (!(model.variance() > 0.0)) throw Error(ErrorKind::Config, "measurement time must be positive");
    return evaluate(signal, model).post;
}

PointInformation pointwise_information(double signal, const SignalModel& model) {
    const Posterior p = posteriors(signal, model);
    PointInformation info{2.0, 1.0};
    for (double q : p.hamming) info.hamming -= entropy_term(q);
    info.parity -= entropy_term(p.even) + entropy_term(p.odd);
    return info;
}

InfoGains info_gains(const SignalModel& model, const QuadratureOptions& options) {
    if (model.tau < 0.0) throw Error(ErrorKind::Config, "measurement time must be non-negative");
    for (double m : model.means)
        if (!std::isfinite(m)) throw Error(ErrorKind::Config, "signal means must be finite");
    if (model.variance() == 0.0) return {};
    const InfoGains g = gains_from(accumulate(model, options.points, options.padding));
    if (options.check) {
        const InfoGains refined = gains_from(accumulate(model, 2 * options.points - 1, options.padding));
        const double change = std::max(std::abs(refined.hamming_bits - g.hamming_bits),
                                       std::abs(refined.parity_bits - g.parity_bits));
        if (change > 1e-6) {
            std::ostringstream msg;
            msg << "information changes by " << change << " bits under point doubling";
            throw Error(ErrorKind::QuadratureNonconvergent, msg.str());
        }
    }
    return g;
}

PhaseOptimum optimal_phase(const std::array<complex, 4>& fields, double tau, NoiseConvention noise,
                           const QuadratureOptions& options) {
    QuadratureOptions coarse = options;
    coarse.points = std::min(options.points, 801);
    coarse.check = false;
    auto objective = [&](double phi) { return info_gains(signal_model(fields, tau, phi, noise), coarse).parity_bits; };

    constexpr int grid = 256;
    const double step = std::numbers::pi / grid;
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
        const double v = objective(k * step);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    double a = (best - 1) * step, b = (best + 1) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-4) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        }
    }
    double phi = 0.5 * (a + b);
    if (best_value > std::max({f1, f2, objective(phi)})) phi = best * step;
    PhaseOptimum out;
    out.phase = wrap_phase(phi);
    out.gains = info_gains(signal_model(fields, tau, out.phase, noise), options);
    return out;
}

RateSeries measurement_rates(std::vector<double> tau, std::vector<double> info_hamming, std::vector<double> info_parity) {
    const std::size_t n = tau.size();
    if (info_hamming.size() != n || info_parity.size() != n)
        throw Error(ErrorKind::Config, "information series lengths differ");
    if (n < 57) throw Error(ErrorKind::GridTooCoarse, "rate series need at least 57 time points");
    const double h = (tau.back() - tau.front()) / static_cast<double>(n - 1);
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(tau[k] - tau[k - 1] - h) > 1e-9 * h) throw Error(ErrorKind::GridTooCoarse, "time grid is not uniform");
    auto rate = [&](const std::vector<double>& y) {
        std::vector<double> g(n);
        g[0] = (y[1] - y[0]) / h;
        g[n - 1] = (y[n - 1] - y[n - 2]) / h;
        for (std::size_t k = 1; k + 1 < n; ++k) g[k] = (y[k + 1] - y[k - 1]) / (2.0 * h);
        return g;
    };
    RateSeries r;
    r.gamma_hamming = rate(info_hamming);
    r.gamma_parity = rate(info_parity);
    r.tau = std::move(tau);
    r.info_hamming = std::move(info_hamming);
    r.info_parity = std::move(info_parity);
    return r;
}

RateSeries rate_series(const std::array<Trajectory, 4>& trajectories, double phase, double tau_max, int points,
                       NoiseConvention noise) {
    if (points < 2) throw Error(ErrorKind::GridTooCoarse, "rate series need at least two points");
    std::vector<double> tau(points), hw(points), par(points);
    for (int k = 0; k < points; ++k) {
        tau[k] = tau_max * k / (points - 1);
        std::array<complex, 4> fields{};
        for (int h = 0; h < 4; ++h) fields[h] = integrated_field(trajectories[h], tau[k]);
        const InfoGains g = info_gains(signal_model(fields, tau[k], phase, noise));
        hw[k] = g.hamming_bits;
        par[k] = g.parity_bits;
    }
    return measurement_rates(std::move(tau), std::move(hw), std::move(par));
}

} // namespace pscope
