#include "qscat/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace qscat {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string trajectory_to_csv(const TrajectoryDataset& data, int n_sites) {
  const bool has_occ = !data.occupations.empty();
  const bool has_ent = !data.entropies.empty();
  std::string out = "t";
  if (has_occ) {
    for (int j = 1; j <= n_sites; ++j) out += ",occ" + std::to_string(j);
  }
  if (has_ent) {
    for (int c = 1; c < n_sites; ++c) out += ",ent" + std::to_string(c);
  }
  out += "\n";
  for (std::size_t t = 0; t < data.times.size(); ++t) {
    out += format_double(data.times[t]);
    if (has_occ) {
      for (double v : data.occupations[t]) out += "," + format_double(v);
    }
    if (has_ent) {
      for (double v : data.entropies[t]) out += "," + format_double(v);
    }
    out += "\n";
  }
  return out;
}

std::string trajectory_to_json(const TrajectoryDataset& data, int n_sites) {
  nlohmann::ordered_json j;
  j["n_sites"] = n_sites;
  j["times"] = data.times;
  if (!data.occupations.empty()) j["occupations"] = data.occupations;
  if (!data.entropies.empty()) j["entropies"] = data.entropies;
  if (!data.config_echo.empty()) {
    j["config_echo"] = nlohmann::ordered_json::parse(data.config_echo, nullptr, false);
    if (j["config_echo"].is_discarded()) j["config_echo"] = data.config_echo;
  }
  return j.dump(2) + "\n";
}

std::string error_report_to_csv(const ErrorTableReport& report) {
  std::string out =
      "j,g,occ_err_twp_pct,entropy_err_twp_pct,occ_err_tuwp_pct,post_selection_probability,"
      "status,message\n";
  for (const ErrorTableRow& row : report.rows) {
    out += format_double(row.j_coupling) + "," + format_double(row.g_coupling) + ",";
    if (row.failed) {
      std::string msg = row.message;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out += ",,,,failed," + msg + "\n";
    } else {
      out += format_double(row.occ_error_truncated_pct) + "," +
             format_double(row.entropy_error_truncated_pct) + "," +
             format_double(row.occ_error_truncated_unitary_pct) + "," +
             format_double(row.post_selection_probability) + ",ok,\n";
    }
  }
  return out;
}

std::string error_report_to_text(const ErrorTableReport& report) {
  auto cell = [](const std::string& s, std::size_t w) {
    std::string out = s;
    while (out.size() < w) out = " " + out;
    return out;
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  std::string out = "aggregation: " + error_convention_name(report.convention) + "\n";
  out += cell("J", 6) + cell("g", 8) + cell("occ TWP%", 12) + cell("ent TWP%", 12) +
         cell("occ TUWP%", 12) + cell("P(post)", 12) + "\n";
  for (const ErrorTableRow& row : report.rows) {
    out += cell(num(row.j_coupling), 6) + cell(num(row.g_coupling), 8);
    if (row.failed) {
      out += "  FAILED: " + row.message + "\n";
    } else {
      char pbuf[32];
      std::snprintf(pbuf, sizeof(pbuf), "%.6f", row.post_selection_probability);
      out += cell(num(row.occ_error_truncated_pct), 12) +
             cell(num(row.entropy_error_truncated_pct), 12) +
             cell(num(row.occ_error_truncated_unitary_pct), 12) + cell(pbuf, 12) + "\n";
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return content;
}

void write_state_dump(const std::string& directory, const StateVector& state,
                      const std::string& config_echo_json) {
  std::filesystem::create_directories(directory);
  const std::string bin_path = directory + "/state.bin";
  {
    std::ofstream f(bin_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + bin_path);
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
      const double re = state.amplitudes(i).real();
      const double im = state.amplitudes(i).imag();
      f.write(reinterpret_cast<const char*>(&re), sizeof(double));
      f.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
  }
  nlohmann::ordered_json header;
  header["n_qubits"] = state.n_qubits;
  header["num_amplitudes"] = static_cast<std::uint64_t>(state.amplitudes.size());
  header["dtype"] = "complex128-interleaved";
  header["byte_order"] = "little";
  header["file"] = "state.bin";
  if (!config_echo_json.empty()) {
    header["config_echo"] = nlohmann::ordered_json::parse(config_echo_json, nullptr, false);
    if (header["config_echo"].is_discarded()) header["config_echo"] = config_echo_json;
  }
  write_text_file(directory + "/state.json", header.dump(2) + "\n");
}

}  // namespace qscat
