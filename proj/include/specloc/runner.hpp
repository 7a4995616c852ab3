#ifndef SPECLOC_RUNNER_HPP
#define SPECLOC_RUNNER_HPP

#include <optional>
#include <string>

namespace specloc {

inline constexpr const char* kVersion = "0.1.0";

// process exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitResource = 4;

struct RunOptions {
    std::string config_path;
    std::string out_dir;  // empty = output.dir from the config, default "."
    std::optional<unsigned long long> seed;  // overrides function.seed
};

/// Dispatch one subcommand: transform-check | partition-check |
/// multiplier-audit | maximal-audit | localization-run.
/// Writes `<subcommand>.csv` (and side artifacts) plus `manifest.txt` into
/// the output directory; on error exits no partial CSV is left behind.
int run_subcommand(const std::string& name, const RunOptions& opts);

}  // namespace specloc

#endif
