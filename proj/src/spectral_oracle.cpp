#include "parityscope/spectral_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parityscope/errors.hpp"

namespace pscope {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
    MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

VectorXd kron(const VectorXd& a, const VectorXd& b) {
    VectorXd out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

MatrixXd creation(int levels) {
    MatrixXd c = MatrixXd::Zero(levels, levels);
    for (int n = 0; n + 1 < levels; ++n) c(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
    return c;
}

VectorXd basis(Index size, Index k) {
    VectorXd v = VectorXd::Zero(size);
    v(k) = 1.0;
    return v;
}

MatrixXd symmetrized(const MatrixXd& h) { return 0.5 * (h + h.transpose()); }

// Eigenvector index with the largest overlap; the ascending order breaks ties toward lower energy.
std::pair<Index, double> best_match(const MatrixXd& vectors, const VectorXd& state) {
    VectorXd overlaps = (vectors.transpose() * state).cwiseAbs2();
    Index best = 0;
    overlaps.maxCoeff(&best);
    return {best, overlaps(best)};
}

void require_overlap(double overlap, const char* label) {
    if (overlap < 0.5) {
        std::ostringstream msg;
        msg << "state " << label << " has maximal eigenvector overlap " << overlap << " < 0.5";
        throw Error(ErrorKind::LevelIdentificationFailure, msg.str());
    }
}

double charging_scale(const ChargeBasisConfig& cfg) { return std::max(cfg.charging_plus, cfg.charging_minus); }

VectorXd charge_spectrum_offsets(ChargeBasisConfig cfg, int n_max, int levels, double ng_plus, double ng_minus) {
    cfg.offset_plus = ng_plus;
    cfg.offset_minus = ng_minus;
    return charge_spectrum_at(cfg, n_max, levels);
}

std::vector<double> dispersion_from(const std::vector<VectorXd>& spectra, int levels) {
    std::vector<double> lo(levels, std::numeric_limits<double>::infinity());
    std::vector<double> hi(levels, -std::numeric_limits<double>::infinity());
    for (const auto& s : spectra)
        for (int k = 0; k < levels; ++k) {
            lo[k] = std::min(lo[k], s(k));
            hi[k] = std::max(hi[k], s(k));
        }
    std::vector<double> out(levels);
    for (int k = 0; k < levels; ++k) out[k] = hi[k] - lo[k];
    return out;
}

int dispersion_cutoff(const ChargeBasisConfig& cfg, int levels) {
    ChargeBasisConfig half = cfg;
    half.offset_plus = half.offset_minus = 0.5;
    ChargeBasisConfig zero = cfg;
    zero.offset_plus = zero.offset_minus = 0.0;
    return std::max(converged_charge_cutoff(zero, levels), converged_charge_cutoff(half, levels));
}

double grid_offset(int i, int grid) { return grid > 1 ? static_cast<double>(i) / (grid - 1) : 0.0; }

} // namespace

MatrixXd charge_hamiltonian(const ChargeBasisConfig& cfg, int n_max) {
    const int width = 2 * n_max + 1;
    MatrixXd h = MatrixXd::Zero(width * width, width * width);
    for (int a = 0; a < width; ++a) {
        const double np = (a - n_max) - cfg.offset_plus;
        for (int b = 0; b < width; ++b) {
            const double nm = (b - n_max) - cfg.offset_minus;
            const Index k = a * width + b;
            h(k, k) = 4.0 * cfg.charging_plus * np * np + 4.0 * cfg.charging_minus * nm * nm +
                      4.0 * cfg.interaction * np * nm;
            if (a + 1 < width) h(k, k + width) = h(k + width, k) = -cfg.josephson_plus / 2.0;
            if (b + 1 < width) h(k, k + 1) = h(k + 1, k) = -cfg.josephson_minus / 2.0;
        }
    }
    return h;
}

VectorXd charge_spectrum_at(const ChargeBasisConfig& cfg, int n_max, int levels) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(charge_hamiltonian(cfg, n_max), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().head(levels);
}

int converged_charge_cutoff(const ChargeBasisConfig& cfg, int levels) {
    if (cfg.n_max < 8) throw Error(ErrorKind::Config, "charge cutoff n_max must be at least 8");
    const double tol = 1e-8 * charging_scale(cfg);
    VectorXd current = charge_spectrum_at(cfg, cfg.n_max, levels);
    for (int n = cfg.n_max; n + 4 <= cfg.n_max_ceiling; n += 4) {
        VectorXd next = charge_spectrum_at(cfg, n + 4, levels);
        if ((next - current).cwiseAbs().maxCoeff() < tol) return n;
        current = std::move(next);
    }
    std::ostringstream msg;
    msg << "charge spectrum not converged at n_max = " << cfg.n_max_ceiling;
    throw Error(ErrorKind::ConvergenceFailure, msg.str());
}

VectorXd tcq_charge_spectrum(const ChargeBasisConfig& cfg, int levels) {
    return charge_spectrum_at(cfg, converged_charge_cutoff(cfg, levels), levels);
}

VectorXd transmon_charge_spectrum(double charging, double josephson, double offset, int n_max, int levels) {
    const int width = 2 * n_max + 1;
    MatrixXd h = MatrixXd::Zero(width, width);
    for (int a = 0; a < width; ++a) {
        const double n = (a - n_max) - offset;
        h(a, a) = 4.0 * charging * n * n;
        if (a + 1 < width) h(a, a + 1) = h(a + 1, a) = -josephson / 2.0;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().head(levels);
}

std::vector<double> charge_dispersion(const ChargeBasisConfig& cfg, int levels, int grid) {
    const int n_max = dispersion_cutoff(cfg, levels);
    const int points = grid * grid;
    std::vector<VectorXd> spectra(points);
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < points; ++p)
        spectra[p] = charge_spectrum_offsets(cfg, n_max, levels, grid_offset(p / grid, grid), grid_offset(p % grid, grid));
    return dispersion_from(spectra, levels);
}

std::vector<double> charge_dispersion_serial(const ChargeBasisConfig& cfg, int levels, int grid) {
    const int n_max = dispersion_cutoff(cfg, levels);
    const int points = grid * grid;
    std::vector<VectorXd> spectra(points);
    for (int p = 0; p < points; ++p)
        spectra[p] = charge_spectrum_offsets(cfg, n_max, levels, grid_offset(p / grid, grid), grid_offset(p % grid, grid));
    return dispersion_from(spectra, levels);
}

MatrixXd duffing_tcq_hamiltonian(const TcqSpec& spec, int levels) {
    const int dim = levels * levels;
    MatrixXd h = MatrixXd::Zero(dim, dim);
    for (int np = 0; np < levels; ++np)
        for (int nm = 0; nm < levels; ++nm) {
            const int k = np * levels + nm;
            h(k, k) = spec.omega_plus * np + 0.5 * spec.delta_plus * np * (np - 1) + spec.omega_minus * nm +
                      0.5 * spec.delta_minus * nm * (nm - 1);
            // J b+† b- moves one quantum from "−" to "+"
            if (nm > 0 && np + 1 < levels) {
                const int target = (np + 1) * levels + (nm - 1);
                h(target, k) = h(k, target) = spec.coupling * std::sqrt(static_cast<double>((np + 1) * nm));
            }
        }
    return h;
}

double DressedCheck::max_scaled_error() const { return *std::max_element(scaled_error.begin(), scaled_error.end()); }

DressedCheck dressed_tcq_check(const TcqSpec& spec, int levels) {
    if (levels < 7) throw Error(ErrorKind::Config, "dressed check needs at least 6 excitations per mode");
    DressedCheck out;
    const DressedTcq dressed = tcq_mixing(spec);
    out.perturbative = {dressed.omega_plus, dressed.omega_minus, dressed.delta_plus, dressed.delta_minus,
                        dressed.delta_cross};

    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(duffing_tcq_hamiltonian(spec, levels));
    const MatrixXd id = MatrixXd::Identity(levels, levels);
    const MatrixXd up_plus = kron(creation(levels), id);
    const MatrixXd up_minus = kron(id, creation(levels));
    const double c = std::cos(dressed.mixing_angle);
    const double s = std::sin(dressed.mixing_angle);
    const MatrixXd dressed_plus = c * up_plus - s * up_minus;
    const MatrixXd dressed_minus = s * up_plus + c * up_minus;
    const VectorXd vacuum = basis(levels * levels, 0);

    auto energy = [&](int mp, int mm, const char* label) {
        VectorXd state = vacuum;
        for (int k = 0; k < mm; ++k) state = dressed_minus * state;
        for (int k = 0; k < mp; ++k) state = dressed_plus * state;
        state.normalize();
        auto [index, overlap] = best_match(solver.eigenvectors(), state);
        require_overlap(overlap, label);
        out.min_overlap = std::min(out.min_overlap, overlap);
        return solver.eigenvalues()(index);
    };
    const double e00 = energy(0, 0, "|0+0->");
    const double e10 = energy(1, 0, "|1+0->");
    const double e01 = energy(0, 1, "|0+1->");
    const double e20 = energy(2, 0, "|2+0->");
    const double e02 = energy(0, 2, "|0+2->");
    const double e11 = energy(1, 1, "|1+1->");
    out.exact = {e10 - e00, e01 - e00, e20 - 2.0 * e10 + e00, e02 - 2.0 * e01 + e00, e11 - e10 - e01 + e00};

    out.gap = std::abs(out.exact.omega_plus - out.exact.omega_minus);
    const double scale =
        out.gap > 0.0 ? out.gap : std::max(std::abs(out.exact.omega_plus), std::abs(out.exact.omega_minus));
    const auto ex = out.exact.as_array();
    const auto pt = out.perturbative.as_array();
    for (int k = 0; k < 5; ++k) {
        out.abs_error[k] = std::abs(ex[k] - pt[k]);
        out.scaled_error[k] = scale > 0.0 ? out.abs_error[k] / scale : out.abs_error[k];
    }
    return out;
}

LadderConfig transmon_ladder(const TransmonLevels& levels, double g1, double g2, const ResonatorPair& res) {
    LadderConfig cfg;
    cfg.omega1 = res.omega1;
    cfg.omega2 = res.omega2;
    cfg.qubit_levels = 3;
    cfg.qubit = [levels, g1, g2](int n) {
        QubitBlock q;
        q.hamiltonian = MatrixXd::Zero(n, n);
        for (int k = 0; k < n; ++k) q.hamiltonian(k, k) = k * levels.frequency + 0.5 * levels.anharmonicity * k * (k - 1);
        q.raising = {g1 * creation(n), g2 * creation(n)};
        q.ground = basis(n, 0);
        q.excited = basis(n, 1);
        return q;
    };
    return cfg;
}

LadderConfig dressed_tcq_ladder(const DressedTcq& d, const ResonatorPair& res) {
    LadderConfig cfg;
    cfg.omega1 = res.omega1;
    cfg.omega2 = res.omega2;
    cfg.qubit_levels = 6;
    cfg.qubit = [d](int) {
        // |00>, |10>, |01>, |20>, |02>, |11> in (n+, n-) labels
        enum { s00, s10, s01, s20, s02, s11 };
        QubitBlock q;
        q.hamiltonian = MatrixXd::Zero(6, 6);
        q.hamiltonian(s10, s10) = d.omega_plus;
        q.hamiltonian(s01, s01) = d.omega_minus;
        q.hamiltonian(s20, s20) = 2.0 * d.omega_plus + d.delta_plus;
        q.hamiltonian(s02, s02) = 2.0 * d.omega_minus + d.delta_minus;
        q.hamiltonian(s11, s11) = d.omega_plus + d.omega_minus + d.delta_cross;
        for (int i = 0; i < 2; ++i) {
            MatrixXd r = MatrixXd::Zero(6, 6);
            r(s10, s00) += d.g_plus[i];
            r(s11, s01) += d.g_plus[i];
            r(s20, s10) += std::sqrt(2.0) * d.g_plus[i];
            r(s01, s00) += d.g_minus[i];
            r(s11, s10) += d.g_minus[i];
            r(s02, s01) += std::sqrt(2.0) * d.g_minus[i];
            q.raising[i] = r;
        }
        q.ground = basis(6, s00);
        q.excited = basis(6, s01);
        return q;
    };
    return cfg;
}

LadderConfig duffing_tcq_ladder(const TcqSpec& spec, const ResonatorPair& res, int levels) {
    LadderConfig cfg;
    cfg.omega1 = res.omega1;
    cfg.omega2 = res.omega2;
    cfg.qubit_levels = levels;
    cfg.qubit = [spec](int n) {
        const double angle = tcq_mixing(spec).mixing_angle;
        QubitBlock q;
        q.hamiltonian = duffing_tcq_hamiltonian(spec, n);
        const MatrixXd id = MatrixXd::Identity(n, n);
        const MatrixXd up_plus = kron(creation(n), id);
        const MatrixXd up_minus = kron(id, creation(n));
        for (int i = 0; i < 2; ++i) q.raising[i] = spec.g_plus[i] * up_plus + spec.g_minus[i] * up_minus;
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver(q.hamiltonian);
        q.ground = solver.eigenvectors().col(0);
        const VectorXd vacuum = basis(n * n, 0);
        const VectorXd dressed_minus = (std::sin(angle) * up_plus + std::cos(angle) * up_minus) * vacuum;
        auto [index, overlap] = best_match(solver.eigenvectors(), dressed_minus);
        require_overlap(overlap, "|0+1->");
        q.excited = solver.eigenvectors().col(index);
        return q;
    };
    return cfg;
}

MatrixXd ladder_hamiltonian(const LadderConfig& cfg, int qubit_levels, int photon_cutoff) {
    const QubitBlock q = cfg.qubit(qubit_levels);
    const int p = photon_cutoff + 1;
    const MatrixXd id_p = MatrixXd::Identity(p, p);
    const MatrixXd a_dag1 = kron(creation(p), id_p);
    const MatrixXd a_dag2 = kron(id_p, creation(p));
    const MatrixXd cavity = cfg.omega1 * a_dag1 * a_dag1.transpose() + cfg.omega2 * a_dag2 * a_dag2.transpose();
    const Index nq = q.hamiltonian.rows();
    MatrixXd h = kron(q.hamiltonian, MatrixXd::Identity(p * p, p * p)) + kron(MatrixXd::Identity(nq, nq), cavity);
    const std::array<MatrixXd, 2> lowering = {a_dag1.transpose(), a_dag2.transpose()};
    for (int i = 0; i < 2; ++i) {
        const MatrixXd term = kron(q.raising[i], lowering[i]);
        h += term + term.transpose();
    }
    return symmetrized(h);
}

namespace {

struct LadderSpectrum {
    std::array<double, 2> chi{};
    std::array<double, 2> resonator{};
    double qubit_frequency = 0.0;
    double min_overlap = 1.0;
};

LadderSpectrum ladder_shifts(const LadderConfig& cfg, int qubit_levels, int photon_cutoff) {
    const QubitBlock q = cfg.qubit(qubit_levels);
    const int p = photon_cutoff + 1;
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(ladder_hamiltonian(cfg, qubit_levels, photon_cutoff));
    LadderSpectrum out;
    auto energy = [&](const VectorXd& qubit, int n1, int n2) {
        auto [index, overlap] = best_match(solver.eigenvectors(), kron(qubit, basis(p * p, n1 * p + n2)));
        require_overlap(overlap, "ladder product state");
        out.min_overlap = std::min(out.min_overlap, overlap);
        return solver.eigenvalues()(index);
    };
    const double g0 = energy(q.ground, 0, 0);
    const double e0 = energy(q.excited, 0, 0);
    out.qubit_frequency = e0 - g0;
    for (int i = 0; i < 2; ++i) {
        const double g1 = energy(q.ground, i == 0, i == 1);
        const double e1 = energy(q.excited, i == 0, i == 1);
        out.chi[i] = ((e1 - e0) - (g1 - g0)) / 2.0;
        out.resonator[i] = ((e1 - e0) + (g1 - g0)) / 2.0;
    }
    return out;
}

} // namespace

ChiOracleResult chi_oracle(const LadderConfig& cfg) {
    if (cfg.qubit_levels < 3 || cfg.photon_cutoff < 2)
        throw Error(ErrorKind::Config, "ladder cutoffs must be >= 3 qubit levels and >= 2 photons");
    const LadderSpectrum base = ladder_shifts(cfg, cfg.qubit_levels, cfg.photon_cutoff);
    if (cfg.convergence_probe) {
        const LadderSpectrum fine = ladder_shifts(cfg, 2 * cfg.qubit_levels, 2 * cfg.photon_cutoff);
        const double scale = std::max({std::abs(base.chi[0]), std::abs(base.chi[1]),
                                       1e-12 * std::max(std::abs(cfg.omega1), std::abs(cfg.omega2))});
        for (int i = 0; i < 2; ++i)
            if (std::abs(fine.chi[i] - base.chi[i]) > 1e-8 * scale)
                throw Error(ErrorKind::ConvergenceFailure, "ladder shifts change under cutoff doubling");
    }
    return {base.chi, base.resonator, base.qubit_frequency, base.min_overlap};
}

SwitchSplitting switch_splitting(const LadderConfig& cfg, double half_width) {
    const int p = cfg.photon_cutoff + 1;
    auto gap = [&](const VectorXd& qubit, double omega2) {
        LadderConfig shifted = cfg;
        shifted.omega2 = omega2;
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver(ladder_hamiltonian(shifted, cfg.qubit_levels, cfg.photon_cutoff));
        const VectorXd w = (solver.eigenvectors().transpose() * kron(qubit, basis(p * p, p))).cwiseAbs2() +
                           (solver.eigenvectors().transpose() * kron(qubit, basis(p * p, 1))).cwiseAbs2();
        Index first = 0;
        w.maxCoeff(&first);
        VectorXd rest = w;
        rest(first) = -1.0;
        Index second = 0;
        rest.maxCoeff(&second);
        return std::abs(solver.eigenvalues()(first) - solver.eigenvalues()(second));
    };
    auto minimize = [&](const VectorXd& qubit, double& where) {
        constexpr int scan = 201;
        const double lo = cfg.omega1 - half_width;
        const double step = 2.0 * half_width / (scan - 1);
        int best = 0;
        double best_gap = std::numeric_limits<double>::infinity();
        for (int k = 0; k < scan; ++k) {
            const double g = gap(qubit, lo + k * step);
            if (g < best_gap) {
                best_gap = g;
                best = k;
            }
        }
        double a = lo + std::max(best - 1, 0) * step;
        double b = lo + std::min(best + 1, scan - 1) * step;
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = gap(qubit, x1), f2 = gap(qubit, x2);
        const double tol = 1e-14 * std::max(1.0, std::abs(cfg.omega1));
        for (int it = 0; it < 200 && b - a > tol; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = gap(qubit, x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = gap(qubit, x2);
            }
        }
        const double mid = 0.5 * (a + b);
        const double fm = gap(qubit, mid);
        where = mid;
        return std::min({best_gap, f1, f2, fm}) / 2.0;
    };
    const QubitBlock q = cfg.qubit(cfg.qubit_levels);
    SwitchSplitting out;
    out.ground = minimize(q.ground, out.omega2_ground);
    out.excited = minimize(q.excited, out.omega2_excited);
    out.state_dependent = std::abs(out.excited - out.ground);
    return out;
}

} // namespace pscope
