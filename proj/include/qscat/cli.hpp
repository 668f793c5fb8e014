#pragma once

#include "qscat/config.hpp"

namespace qscat {

// Exit codes: 0 success, 1 config error, 2 runtime error, 3 partial sweep failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitPartial = 3;

int cmd_prepare(const RunConfig& config);
int cmd_evolve(const RunConfig& config);
int cmd_table(const RunConfig& config);
int cmd_export(const RunConfig& config);
int cmd_vqe(const RunConfig& config);

int run_cli(int argc, const char* const* argv);

}  // namespace qscat
