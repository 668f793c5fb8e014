#pragma once

#include <string>
#include <vector>

#include "qscat/experiments.hpp"

namespace qscat {

/// Configuration problem: parse failure or an invalid field. The message
/// names the offending field (and the line for parse errors).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class CommandKind { Prepare, Evolve, Table, Export, Vqe };

struct OutputOptions {
  std::string directory = "runs/out";
  std::string format = "csv";  // csv | json
};

struct ExportOptions {
  bool expand_toffoli = false;
};

/// Everything a run needs, deserialized from one JSON config file.
/// `echo` holds the canonical serialized form embedded in every output.
struct RunConfig {
  ScatteringRunSpec run;
  std::vector<ErrorTableCell> table_cells;
  ErrorConvention convention = ErrorConvention::L2Ratio;
  ExportOptions export_options;
  OutputOptions output;
  int jobs = 1;
  std::string echo;

  void validate(CommandKind command) const;
};

/// Parses "0.5", "pi", "-pi/2", "7pi/16" style angle expressions.
double parse_angle(const std::string& text);

RunConfig parse_run_config(const std::string& json_text, const std::string& origin);
RunConfig load_run_config(const std::string& path);

/// Canonical JSON form of the resolved config (the config_echo payload).
std::string run_config_to_json(const RunConfig& config);

}  // namespace qscat
