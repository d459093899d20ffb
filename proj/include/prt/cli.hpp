#pragma once

#include <string>
#include <vector>

namespace prt::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;        // malformed config, missing files
inline constexpr int kExitNumeric = 2;       // divergence / non-finite values
inline constexpr int kExitVerification = 3;  // bound or property violation

/// Runs one subcommand of {gen-data, pretrain, finetune, train-prt, eval,
/// verify, benchmark, report} against a JSON config. `overrides` holds
/// "dotted.key=value" pairs that win over config values. Every run writes a
/// run_manifest.json (tool version, config hash, input and output hashes)
/// into its output directory. Relative output directories are resolved under
/// $PRT_OUTPUT_ROOT when that is set.
int run(const std::string& subcommand, const std::string& config_path,
        const std::vector<std::string>& overrides = {});

}  // namespace prt::cli
