#pragma once

#include <string>

namespace qmi::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;       ///< all points succeeded, checks passed
inline constexpr int kExitRuntime = 1;  ///< solver failure or a failed check
inline constexpr int kExitConfig = 2;   ///< unusable configuration

/// Command-line options common to all subcommands.  Negative / empty
/// members mean "keep the config file's (or built-in) value".
struct Options {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
    long long seed = -1;
    int refinement = -1;
};

/// Two-body sweep over edge-to-edge gaps: one CSV row per gap plus fit
/// summaries in the JSON sidecar.  Continues past failing points and
/// reports them; exits non-zero if any point failed.
int run_qmi_sweep(const Options& opt);

/// Single-body capacitance table over a lambda grid; discs get an analytic
/// reference column.
int run_capacitance(const Options& opt);

/// Three-body subadditivity report: pointwise table, integrated
/// comparison, and the worldline counting check.
int run_ssa(const Options& opt);

/// Integrated three-body information for one configuration.
int run_tripartite(const Options& opt);

/// Dirichlet worldline estimates over a gap sweep, one CSV row per
/// (gap, loop scale) pair.
int run_worldline(const Options& opt);

/// Built-in invariant suite (kernel symmetry, exchange symmetry, scale
/// covariance, mesh convergence); prints one PASS/FAIL line per check.
/// Needs no config file.
int run_selftest(const Options& opt);

} // namespace qmi::cli
