#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "parityscope/cavity.hpp"
#include "parityscope/readout.hpp"
#include "parityscope/sweep.hpp"

namespace pscope {

/// Shortest decimal that parses back to the same double.
std::string format_number(double value);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string to_csv(const Table& table);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Reads a numeric CSV written by to_csv.
Table read_csv(const std::filesystem::path& path);

Table trajectory_table(const Trajectory& traj);

/// Inverse of trajectory_table.
Trajectory trajectory_from_table(const Table& table, int hamming);

Table sweep_table(const std::vector<SweepPoint>& points);
Table rate_table(const RateSeries& rates);

} // namespace pscope
