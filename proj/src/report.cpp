#include "parityscope/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "parityscope/errors.hpp"

namespace pscope {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Config, "cannot write " + path.string());
    f << text;
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Config, "cannot read " + path.string());
    Table t;
    std::string line;
    if (std::getline(f, line)) {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
    }
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc()) throw Error(ErrorKind::Config, "bad number '" + cell + "' in " + path.string());
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table trajectory_table(const Trajectory& traj) {
    Table t{{"t", "re_a1", "im_a1", "re_a2", "im_a2", "re_bout", "im_bout"}, {}};
    t.rows.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k)
        t.rows.push_back({traj.time[k], traj.a1[k].real(), traj.a1[k].imag(), traj.a2[k].real(), traj.a2[k].imag(),
                          traj.out[k].real(), traj.out[k].imag()});
    return t;
}

Trajectory trajectory_from_table(const Table& table, int hamming) {
    Trajectory traj;
    traj.hamming = hamming;
    for (const auto& r : table.rows) {
        if (r.size() != 7) throw Error(ErrorKind::Config, "trajectory rows need 7 columns");
        traj.time.push_back(r[0]);
        traj.a1.emplace_back(r[1], r[2]);
        traj.a2.emplace_back(r[3], r[4]);
        traj.out.emplace_back(r[5], r[6]);
    }
    return traj;
}

Table sweep_table(const std::vector<SweepPoint>& points) {
    Table t{{"chi1_over_kappa", "chi2_over_kappa", "info_parity_bits", "info_hamming_bits", "delta_info_bits",
             "missing_parity_log10", "phi_star_rad"},
            {}};
    for (const auto& p : points)
        t.rows.push_back({p.chi1, p.chi2, p.gains.parity_bits, p.gains.hamming_bits, p.gains.delta_bits,
                          std::log10(p.gains.missing_parity_bits), p.phase});
    return t;
}

Table rate_table(const RateSeries& rates) {
    Table t{{"tau_kappa", "gamma_hw", "gamma_p"}, {}};
    for (std::size_t k = 0; k < rates.tau.size(); ++k)
        t.rows.push_back({rates.tau[k], rates.gamma_hamming[k], rates.gamma_parity[k]});
    return t;
}

} // namespace pscope
