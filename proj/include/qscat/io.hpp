#pragma once

#include <string>

#include "qscat/experiments.hpp"

namespace qscat {

/// Fixed-precision decimal formatting shared by every writer, so identical
/// runs produce byte-identical files.
std::string format_double(double value);

std::string trajectory_to_csv(const TrajectoryDataset& data, int n_sites);
std::string trajectory_to_json(const TrajectoryDataset& data, int n_sites);

std::string error_report_to_csv(const ErrorTableReport& report);
std::string error_report_to_text(const ErrorTableReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Raw interleaved little-endian complex doubles plus a JSON sidecar header.
void write_state_dump(const std::string& directory, const StateVector& state,
                      const std::string& config_echo_json);

}  // namespace qscat
