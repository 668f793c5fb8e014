#include "qscat/config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

#include "qscat/io.hpp"

namespace qscat {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& reason) {
  throw ConfigError("config field '" + field + "': " + reason);
}

void expect_keys(const ordered_json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
    }
  }
}

double require_number(const ordered_json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where + "." + key, "missing");
  if (!obj[key].is_number()) fail(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

double number_or(const ordered_json& obj, const std::string& where, const std::string& key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

int int_or(const ordered_json& obj, const std::string& where, const std::string& key,
           int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) fail(where + "." + key, "must be an integer");
  return obj[key].get<int>();
}

bool bool_or(const ordered_json& obj, const std::string& where, const std::string& key,
             bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) fail(where + "." + key, "must be a boolean");
  return obj[key].get<bool>();
}

std::string string_or(const ordered_json& obj, const std::string& where, const std::string& key,
                      const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) fail(where + "." + key, "must be a string");
  return obj[key].get<std::string>();
}

}  // namespace

double parse_angle(const std::string& text) {
  // <sign><coeff>pi[/<den>] or a plain decimal.
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += std::tolower(c);
  }
  if (s.empty()) throw ConfigError("empty angle expression");
  const std::size_t pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse angle '" + text + "'");
    }
    if (used != s.size()) throw ConfigError("cannot parse angle '" + text + "'");
    return v;
  }
  double coeff = 1.0;
  const std::string head = s.substr(0, pi_pos);
  if (head == "-") {
    coeff = -1.0;
  } else if (head == "+" || head.empty()) {
    coeff = 1.0;
  } else {
    std::size_t used = 0;
    try {
      coeff = std::stod(head, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse angle '" + text + "'");
    }
    if (used != head.size()) throw ConfigError("cannot parse angle '" + text + "'");
  }
  double denom = 1.0;
  const std::string tail = s.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail[0] != '/') throw ConfigError("cannot parse angle '" + text + "'");
    std::size_t used = 0;
    try {
      denom = std::stod(tail.substr(1), &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse angle '" + text + "'");
    }
    if (used != tail.size() - 1 || denom == 0.0) {
      throw ConfigError("cannot parse angle '" + text + "'");
    }
  }
  return coeff * kPi / denom;
}

namespace {

double angle_field(const ordered_json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where + "." + key, "missing");
  if (obj[key].is_number()) return obj[key].get<double>();
  if (obj[key].is_string()) {
    try {
      return parse_angle(obj[key].get<std::string>());
    } catch (const ConfigError& e) {
      fail(where + "." + key, e.what());
    }
  }
  fail(where + "." + key, "must be a number or an angle string like \"7pi/16\"");
}

Boundary parse_boundary(const std::string& s, const std::string& where) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "open") return Boundary::Open;
  fail(where, "must be \"periodic\" or \"open\"");
}

PrepVariant parse_variant(const std::string& s, const std::string& where) {
  if (s == "exact") return PrepVariant::Exact;
  if (s == "truncated") return PrepVariant::Truncated;
  if (s == "truncated_unitary") return PrepVariant::TruncatedUnitary;
  fail(where, "must be \"exact\", \"truncated\" or \"truncated_unitary\"");
}

VacuumSource parse_vacuum(const std::string& s, const std::string& where) {
  if (s == "trivial") return VacuumSource::Trivial;
  if (s == "exact_ground") return VacuumSource::ExactGround;
  if (s == "adiabatic") return VacuumSource::Adiabatic;
  if (s == "vqe") return VacuumSource::Vqe;
  fail(where, "must be \"trivial\", \"exact_ground\", \"adiabatic\" or \"vqe\"");
}

ErrorConvention parse_convention(const std::string& s, const std::string& where) {
  if (s == "l2_ratio") return ErrorConvention::L2Ratio;
  if (s == "l1_ratio") return ErrorConvention::L1Ratio;
  fail(where, "must be \"l2_ratio\" or \"l1_ratio\"");
}

std::string variant_name(PrepVariant v) {
  switch (v) {
    case PrepVariant::Exact: return "exact";
    case PrepVariant::Truncated: return "truncated";
    case PrepVariant::TruncatedUnitary: return "truncated_unitary";
  }
  return "?";
}

std::string vacuum_name(VacuumSource v) {
  switch (v) {
    case VacuumSource::Trivial: return "trivial";
    case VacuumSource::ExactGround: return "exact_ground";
    case VacuumSource::Adiabatic: return "adiabatic";
    case VacuumSource::Vqe: return "vqe";
  }
  return "?";
}

WavePacketSpec parse_packet(const ordered_json& obj, const std::string& where, int n_sites) {
  if (!obj.is_object()) fail(where, "must be an object");
  expect_keys(obj, where, {"center", "momentum", "width", "window"});
  WavePacketSpec spec;
  spec.center = require_number(obj, where, "center");
  spec.momentum = angle_field(obj, where, "momentum");
  spec.width = require_number(obj, where, "width");
  if (obj.contains("window")) {
    const auto& w = obj["window"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer()) {
      fail(where + ".window", "must be [lo, hi] with integer 1-based sites");
    }
    spec.window_lo = w[0].get<int>();
    spec.window_hi = w[1].get<int>();
  } else {
    if (n_sites % 2 != 0) {
      fail(where + ".window", "required when n_sites is odd (no default halves)");
    }
    // Default halves: the packet centered in the left half owns [1, N/2].
    if (spec.center <= n_sites / 2.0) {
      spec.window_lo = 1;
      spec.window_hi = n_sites / 2;
    } else {
      spec.window_lo = n_sites / 2 + 1;
      spec.window_hi = n_sites;
    }
  }
  try {
    spec.validate(n_sites);
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  return spec;
}

}  // namespace

void RunConfig::validate(CommandKind command) const {
  try {
    run.model.validate();
    run.trotter.validate();
    switch (command) {
      case CommandKind::Vqe:
        run.vqe.validate();
        break;
      case CommandKind::Table:
        if (table_cells.empty()) {
          throw ConfigError("config field 'table': needs j_values/g_values or cells");
        }
        [[fallthrough]];
      case CommandKind::Prepare:
      case CommandKind::Evolve:
      case CommandKind::Export:
        run.validate();
        break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (output.format != "csv" && output.format != "json") {
    throw ConfigError("config field 'output.format': must be \"csv\" or \"json\"");
  }
  if (jobs < 1) {
    throw ConfigError("config field 'jobs': must be >= 1");
  }
}

RunConfig parse_run_config(const std::string& json_text, const std::string& origin) {
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    // Map the byte offset to a line number for the diagnostic.
    std::size_t line = 1;
    for (std::size_t i = 0; i < json_text.size() && i + 1 < e.byte; ++i) {
      if (json_text[i] == '\n') ++line;
    }
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");
  expect_keys(root, "",
              {"model", "packets", "variant", "trotter", "vacuum", "adiabatic", "vqe", "observers",
               "error_convention", "table", "export", "output", "jobs", "seed"});

  RunConfig config;

  if (!root.contains("model") || !root["model"].is_object()) fail("model", "missing object");
  const auto& model = root["model"];
  expect_keys(model, "model", {"n_sites", "j", "h", "g", "boundary"});
  config.run.model.n_sites = int_or(model, "model", "n_sites", 0);
  if (config.run.model.n_sites < 2) fail("model.n_sites", "must be an integer >= 2");
  config.run.model.j_coupling = number_or(model, "model", "j", 0.0);
  config.run.model.h_field = number_or(model, "model", "h", 0.0);
  config.run.model.g_coupling = number_or(model, "model", "g", 0.0);
  config.run.model.boundary =
      parse_boundary(string_or(model, "model", "boundary", "periodic"), "model.boundary");

  if (root.contains("packets")) {
    if (!root["packets"].is_array() || root["packets"].empty() || root["packets"].size() > 2) {
      fail("packets", "must be an array of one or two packet objects");
    }
    for (std::size_t i = 0; i < root["packets"].size(); ++i) {
      config.run.packets.push_back(parse_packet(
          root["packets"][i], "packets[" + std::to_string(i) + "]", config.run.model.n_sites));
    }
  }

  config.run.variant =
      parse_variant(string_or(root, "", "variant", "truncated"), "variant");

  if (root.contains("trotter")) {
    const auto& trotter = root["trotter"];
    expect_keys(trotter, "trotter", {"dt", "n_steps"});
    config.run.trotter.dt = number_or(trotter, "trotter", "dt", 0.1);
    config.run.trotter.n_steps = int_or(trotter, "trotter", "n_steps", 0);
    if (config.run.trotter.n_steps < 0) fail("trotter.n_steps", "must be >= 0");
    if (!(config.run.trotter.dt > 0.0)) fail("trotter.dt", "must be > 0");
  }

  config.run.vacuum = parse_vacuum(string_or(root, "", "vacuum", "trivial"), "vacuum");

  if (root.contains("adiabatic")) {
    const auto& ad = root["adiabatic"];
    expect_keys(ad, "adiabatic", {"ramp_time", "dt"});
    config.run.adiabatic.ramp_time = number_or(ad, "adiabatic", "ramp_time", 30.0);
    config.run.adiabatic.dt = number_or(ad, "adiabatic", "dt", 0.05);
    if (!(config.run.adiabatic.ramp_time > 0.0)) fail("adiabatic.ramp_time", "must be > 0");
    if (!(config.run.adiabatic.dt > 0.0)) fail("adiabatic.dt", "must be > 0");
  }

  if (root.contains("vqe")) {
    const auto& vqe = root["vqe"];
    expect_keys(vqe, "vqe",
                {"n_layers", "max_iterations", "a_gain", "c_gain", "stability_offset",
                 "target_step", "resamplings", "init_spread", "seed"});
    config.run.vqe.n_layers = int_or(vqe, "vqe", "n_layers", 1);
    config.run.vqe.max_iterations =
        int_or(vqe, "vqe", "max_iterations", config.run.vqe.max_iterations);
    config.run.vqe.a_gain = number_or(vqe, "vqe", "a_gain", config.run.vqe.a_gain);
    config.run.vqe.c_gain = number_or(vqe, "vqe", "c_gain", config.run.vqe.c_gain);
    config.run.vqe.stability_offset =
        number_or(vqe, "vqe", "stability_offset", config.run.vqe.stability_offset);
    config.run.vqe.target_step = number_or(vqe, "vqe", "target_step", config.run.vqe.target_step);
    config.run.vqe.resamplings = int_or(vqe, "vqe", "resamplings", config.run.vqe.resamplings);
    config.run.vqe.init_spread = number_or(vqe, "vqe", "init_spread", config.run.vqe.init_spread);
    if (vqe.contains("seed")) {
      if (!vqe["seed"].is_number_unsigned() && !vqe["seed"].is_number_integer()) {
        fail("vqe.seed", "must be an integer");
      }
      config.run.vqe.seed = vqe["seed"].get<unsigned long long>();
    }
    try {
      config.run.vqe.validate();
    } catch (const std::exception& e) {
      fail("vqe", e.what());
    }
  }

  if (root.contains("observers")) {
    const auto& obs = root["observers"];
    expect_keys(obs, "observers", {"occupations", "entropies"});
    config.run.observers.occupations = bool_or(obs, "observers", "occupations", true);
    config.run.observers.entropies = bool_or(obs, "observers", "entropies", true);
  }

  config.convention = parse_convention(string_or(root, "", "error_convention", "l2_ratio"),
                                       "error_convention");

  if (root.contains("table")) {
    const auto& table = root["table"];
    expect_keys(table, "table", {"j_values", "g_values", "cells"});
    std::vector<double> js;
    std::vector<double> gs;
    if (table.contains("j_values")) {
      if (!table["j_values"].is_array()) fail("table.j_values", "must be an array of numbers");
      for (const auto& v : table["j_values"]) js.push_back(v.get<double>());
    }
    if (table.contains("g_values")) {
      if (!table["g_values"].is_array()) fail("table.g_values", "must be an array of numbers");
      for (const auto& v : table["g_values"]) gs.push_back(v.get<double>());
    }
    for (double j : js) {
      for (double g : gs) {
        config.table_cells.push_back({j, g, std::nullopt});
      }
    }
    if (table.contains("cells")) {
      if (!table["cells"].is_array()) fail("table.cells", "must be an array of cell objects");
      for (std::size_t i = 0; i < table["cells"].size(); ++i) {
        const auto& c = table["cells"][i];
        const std::string where = "table.cells[" + std::to_string(i) + "]";
        expect_keys(c, where, {"j", "g", "vacuum"});
        ErrorTableCell cell;
        cell.j_coupling = require_number(c, where, "j");
        cell.g_coupling = require_number(c, where, "g");
        if (c.contains("vacuum")) {
          cell.vacuum_override = parse_vacuum(string_or(c, where, "vacuum", ""), where + ".vacuum");
        }
        config.table_cells.push_back(std::move(cell));
      }
    }
  }

  if (root.contains("export")) {
    const auto& ex = root["export"];
    expect_keys(ex, "export", {"expand_toffoli"});
    config.export_options.expand_toffoli = bool_or(ex, "export", "expand_toffoli", false);
  }

  if (root.contains("output")) {
    const auto& out = root["output"];
    expect_keys(out, "output", {"directory", "format"});
    config.output.directory = string_or(out, "output", "directory", config.output.directory);
    config.output.format = string_or(out, "output", "format", config.output.format);
  }

  config.jobs = int_or(root, "", "jobs", 1);
  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer() && !root["seed"].is_number_unsigned()) {
      fail("seed", "must be an integer");
    }
    config.run.vqe.seed = root["seed"].get<unsigned long long>();
  }

  config.echo = run_config_to_json(config);
  return config;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(read_text_file(path), path);
}

std::string run_config_to_json(const RunConfig& config) {
  ordered_json j;
  j["model"] = {{"n_sites", config.run.model.n_sites},
                {"j", config.run.model.j_coupling},
                {"h", config.run.model.h_field},
                {"g", config.run.model.g_coupling},
                {"boundary", config.run.model.boundary == Boundary::Periodic ? "periodic" : "open"}};
  if (!config.run.packets.empty()) {
    j["packets"] = ordered_json::array();
    for (const WavePacketSpec& p : config.run.packets) {
      j["packets"].push_back({{"center", p.center},
                              {"momentum", p.momentum},
                              {"width", p.width},
                              {"window", {p.window_lo, p.window_hi}}});
    }
  }
  j["variant"] = variant_name(config.run.variant);
  j["trotter"] = {{"dt", config.run.trotter.dt}, {"n_steps", config.run.trotter.n_steps}};
  j["vacuum"] = vacuum_name(config.run.vacuum);
  j["adiabatic"] = {{"ramp_time", config.run.adiabatic.ramp_time},
                    {"dt", config.run.adiabatic.dt}};
  j["vqe"] = {{"n_layers", config.run.vqe.n_layers},
              {"max_iterations", config.run.vqe.max_iterations},
              {"a_gain", config.run.vqe.a_gain},
              {"c_gain", config.run.vqe.c_gain},
              {"stability_offset", config.run.vqe.stability_offset},
              {"target_step", config.run.vqe.target_step},
              {"resamplings", config.run.vqe.resamplings},
              {"init_spread", config.run.vqe.init_spread},
              {"seed", config.run.vqe.seed}};
  j["observers"] = {{"occupations", config.run.observers.occupations},
                    {"entropies", config.run.observers.entropies}};
  j["error_convention"] = error_convention_name(config.convention);
  if (!config.table_cells.empty()) {
    ordered_json cells = ordered_json::array();
    for (const ErrorTableCell& c : config.table_cells) {
      ordered_json cell = {{"j", c.j_coupling}, {"g", c.g_coupling}};
      if (c.vacuum_override) cell["vacuum"] = vacuum_name(*c.vacuum_override);
      cells.push_back(std::move(cell));
    }
    j["table"] = {{"cells", std::move(cells)}};
  }
  j["export"] = {{"expand_toffoli", config.export_options.expand_toffoli}};
  j["output"] = {{"directory", config.output.directory}, {"format", config.output.format}};
  j["jobs"] = config.jobs;
  return j.dump(2) + "\n";
}

}  // namespace qscat
