#pragma once

#include "chiral_berry/cli/config.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace chiral_berry::cli {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitVerificationFailed = 1,
    kExitConfigError = 2,
    kExitNumericError = 3,
};

struct RunOptions {
    std::filesystem::path out_dir;
    int threads = 1;
};

/// One entry of verify.json. Most suites pass when residual < threshold;
/// negative controls pass when residual > threshold.
struct VerifySuite {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool lower_bound = false;
    bool passed = false;
};

std::vector<VerifySuite> run_verification(const RunConfig& config, int threads);

int cmd_connection(const RunConfig& config, const RunOptions& options);
int cmd_curvature(const RunConfig& config, const RunOptions& options);
int cmd_phase(const RunConfig& config, const RunOptions& options);
int cmd_pumpprobe(const RunConfig& config, const RunOptions& options);
int cmd_verify(const RunConfig& config, const RunOptions& options);

/// --threads value, else CHIRAL_BERRY_THREADS, else hardware concurrency.
int resolve_threads(std::optional<int> flag);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled exactly once, so per-index outputs are thread-count independent.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Entry point: chiral-berry <command> --config <path> [--out <dir>]
/// [--threads N] [--seed S]. Returns the process exit code.
int run(int argc, char** argv);

} // namespace chiral_berry::cli
